#pragma once

/// \file
/// Almost contact structures induced on real hypersurfaces of a Kaehler
/// manifold: xi = -J N, J X = phi X + eta(X) N, g the pulled-back metric.
///
/// The ambient structure must be given by expressions so it can be composed
/// with the immersion. Curvature of the induced metric needs third
/// derivatives of the immersion, which come from nested jets.

#include "curvlab/check_report.hpp"
#include "curvlab/structures.hpp"

#include <memory>
#include <vector>

namespace curvlab {

struct HypersurfaceSpec {
  std::string name;
  AlmostHermitianStructure ambient;
  std::vector<std::string> coords;
  std::vector<Interval> domain;
  std::vector<Expr> immersion;  // ambient coordinates over the hypersurface coordinates
  std::vector<Expr> normal;     // unit normal components over the hypersurface coordinates
};

/// Pointwise data of the immersion at one hypersurface point.
struct HypersurfacePoint {
  int m = 0;  // hypersurface dimension
  int n = 0;  // ambient dimension
  std::vector<Jet> g, phi, xi, eta;  // induced structure, jets in the hypersurface coordinates
  std::vector<double> weingarten;    // A^a_b = -(nabla~_{P_b} N)^a tangential
  std::vector<double> tangents;      // P_a^k at [a][k]
  std::vector<double> nabla_N;       // (nabla~_{P_b} N)^k at [b][k]
  std::vector<double> normal;        // N^k
  std::vector<double> ambient_g;     // at F(p)
  std::vector<double> ambient_J;
  double normal_norm2 = 0;  // g~(N, N)
};

/// Throws std::invalid_argument for a non-unit normal and SingularMatrix when
/// the immersion Jacobian is rank-deficient at p.
HypersurfacePoint hypersurface_point(const HypersurfaceSpec& spec, std::span<const double> p);

/// The induced structure as computed fields on the hypersurface chart.
AlmostContactStructure induced_structure(const HypersurfaceSpec& spec);

struct HypersurfaceReport {
  AlmostContactStructure induced;
  std::vector<std::vector<double>> weingarten;  // per sample point
  std::vector<double> beta;                     // trace(A) / dim per sample point
  IdentityReport umbilicity;                    // max |A - beta I|
  IdentityReport second_fundamental;            // |h(X, xi) - eta(A X)|
  IdentityReport ambient_kaehler;               // max |nabla~ J| at the image points
  bool umbilical = false;
};

HypersurfaceReport induce_hypersurface(const HypersurfaceSpec& spec, const SampleSet& samples, double tol);

/// S^5 in C^3 through z1 = cos(chi) e^{i th1}, z2 = sin(chi) cos(psi) e^{i th2},
/// z3 = sin(chi) sin(psi) e^{i th3}, with the outward normal.
HypersurfaceSpec s5_in_c3();
/// 2 x1^2 + y1^2 + |z2|^2 + |z3|^2 = 1 in C^3; not totally umbilical.
HypersurfaceSpec ellipsoid_in_c3();
/// S^3 in C^2 through z1 = cos(chi) e^{i th1}, z2 = sin(chi) e^{i th2}.
HypersurfaceSpec s3_in_c2();

/// Flat C^n with coordinates (x1, y1, ..., xn, yn) and J d_x = d_y.
AlmostHermitianStructure flat_complex_space(int n);

}  // namespace curvlab
