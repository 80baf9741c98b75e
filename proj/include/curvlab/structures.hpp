#pragma once

/// \file
/// Almost contact metric and almost Hermitian structures on chart and frame
/// carriers: algebraic validation, classification and the (kappa, mu) test.

#include "curvlab/check_report.hpp"
#include "curvlab/frame.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/structure_point.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvlab {

struct AlmostContactStructure {
  std::string name;
  Chart chart;
  TensorField phi;  // Endomorphism
  TensorField xi;   // Vector
  TensorField eta;  // OneForm

  /// Throws std::invalid_argument on a component-count or dimension mismatch.
  void check_shapes() const;
};

struct AlmostHermitianStructure {
  std::string name;
  Chart chart;
  TensorField J;  // Endomorphism

  void check_shapes() const;
};

/// Builds an expression structure from component texts over coords:
/// metric and phi are dim*dim row-major, xi and eta have dim entries.
AlmostContactStructure make_contact(std::string name, std::vector<std::string> coords, std::vector<Interval> domain,
                                    const std::vector<std::string>& metric, const std::vector<std::string>& phi,
                                    const std::vector<std::string>& xi, const std::vector<std::string>& eta);
AlmostHermitianStructure make_hermitian(std::string name, std::vector<std::string> coords,
                                        std::vector<Interval> domain, const std::vector<std::string>& metric,
                                        const std::vector<std::string>& J);

/// Pointwise data for the identity engine. Frame carriers use FrameStructure::point().
StructurePoint<double> structure_point(const AlmostContactStructure& s, const PointGeometry& pg);
StructurePoint<double> structure_point(const AlmostHermitianStructure& s, const PointGeometry& pg);

/// Tags: eta_xi, phi_xi, eta_phi, phi_squared, metric_compatible, and
/// compatibility as the max of all five.
std::vector<IdentityReport> validate(const AlmostContactStructure& s, const SampleSet& samples, double tol);
std::vector<IdentityReport> validate(const FrameStructure& s);

/// Tags: j_squared, j_orthogonal, and compatibility.
std::vector<IdentityReport> validate(const AlmostHermitianStructure& s, const SampleSet& samples, double tol);

struct ClassificationReport {
  std::vector<IdentityReport> checks;
  int n = 0;                   // dim = 2n + 1
  double ric_xi_xi = 0;        // at the witness of ric_xi_xi
  double contact_volume_min = 0;  // smallest |eta ^ (d eta)^n| over the samples

  const IdentityReport& get(std::string_view tag) const;
  bool pass(std::string_view tag) const { return get(tag).verdict(); }
  bool contact_metric() const { return pass("contact_metric"); }
  bool k_contact() const { return contact_metric() && pass("killing_xi"); }
  bool sasakian() const { return pass("sasakian_nabla_xi") && pass("sasakian_nabla_phi"); }
  bool cosymplectic() const { return pass("parallel_phi"); }
};

/// Tags in the report: compatibility, contact_metric (d eta with the 1/2),
/// contact_metric_engine (without it), killing_xi, sasakian_nabla_xi
/// (nabla_X xi = -phi X), sasakian_nabla_phi ((nabla_X phi)Y = g(X,Y) xi - eta(Y) X),
/// parallel_phi, ric_xi_xi (|Ric(xi,xi) - 2n|).
ClassificationReport classify(const AlmostContactStructure& s, const SampleSet& samples, double tol);
ClassificationReport classify(const FrameStructure& s);

/// h = (1/2) L_xi phi in components at p.
std::vector<double> h_tensor(const AlmostContactStructure& s, std::span<const double> p);

/// max | R_XY xi - kappa (eta(Y) X - eta(X) Y) - mu (eta(Y) hX - eta(X) hY) |.
IdentityReport kappa_mu(const AlmostContactStructure& s, const SampleSet& samples, double kappa, double mu,
                        double tol);
IdentityReport kappa_mu(const FrameStructure& s, const Rational& kappa, const Rational& mu);

}  // namespace curvlab
