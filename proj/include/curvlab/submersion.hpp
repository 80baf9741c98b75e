#pragma once

/// \file
/// Circle-bundle submersions pi: M -> N from an almost contact metric total
/// space to an almost Hermitian base, checked through horizontal lifts.
///
/// Base fields are taken with constant coefficients in the base chart; their
/// lifts solve [d pi; eta] X^ = [X; 0] pointwise, as jets, so that covariant
/// derivatives and brackets of lifts are available on M.

#include "curvlab/check_report.hpp"
#include "curvlab/structures.hpp"

#include <vector>

namespace curvlab {

struct SubmersionPair {
  std::string name;
  AlmostContactStructure total;
  AlmostHermitianStructure base;
  std::vector<Expr> projection;  // base coordinates over the total coordinates
};

/// Horizontal lift of the constant base field x at p, with jets in the total coordinates.
std::vector<Jet> horizontal_lift(const SubmersionPair& sp, std::span<const double> p, std::span<const double> x);

/// Tags: lift.dpi_xi (d pi(xi) = 0), lift.dpi_phi (d pi phi = J d pi on lifts),
/// lift.connection, lift.nabla_xi, lift.bracket, lift.curvature, and the
/// consequences lift.k1, lift.k2, lift.k3 of K1-K3 on the base.
std::vector<IdentityReport> check_submersion_lift(const SubmersionPair& sp, const SampleSet& samples, double tol);

/// Unit S^3 in C^2 over the round S^2 of radius 1/2 in a stereographic chart.
SubmersionPair hopf_pair();

}  // namespace curvlab
