#pragma once

/// \file
/// Warped products B x_b F with metric g_B + b^2 g_F, and the almost contact
/// structures on R x_f N over an almost Hermitian N.

#include "curvlab/check_report.hpp"
#include "curvlab/structures.hpp"

#include <vector>

namespace curvlab {

struct WarpedSpec {
  Chart base;
  Chart fiber;
  Expr b;  // over the base coordinates
};

/// Chart with coordinates base ++ fiber. Throws std::invalid_argument if b <= 0
/// at a sampled base point.
Chart build_warped(const WarpedSpec& w);

/// Christoffel symbols [k][i][j] of the warped chart assembled from the base
/// and fiber connections and b alone:
///   nabla_X Y = nabla^B_X Y,  nabla_X Z = nabla_Z X = X(ln b) Z,
///   nabla_Z W = nabla^F_Z W - b^2 g_F(Z,W) grad_B(ln b).
std::vector<double> warped_christoffel_oracle(const WarpedSpec& w, std::span<const double> p);

struct RWarpedContact {
  AlmostHermitianStructure fiber;
  Expr f;  // in the single variable theta (index 0)
  AlmostContactStructure structure;  // coordinates fiber ++ theta
};

/// g = f(theta)^2 g_N + d theta^2, phi = J on the fiber, phi d_theta = 0,
/// xi = d_theta, eta = d theta. Requires expression fields on N.
RWarpedContact build_r_warped_contact(std::string name, const AlmostHermitianStructure& fiber, const Expr& f,
                                      Interval theta_domain, std::string theta = "z");

/// Full R(d_a, d_b, d_c, d_d) at p from f, f', f'' and the fiber curvature:
///   R(W,xi,X,xi) = -(f''/f) g(X,W),  R(W,xi,X,Y) = 0,
///   R(W,Z,X,Y) = f^2 [ R_N(W,Z,X,Y) + f'^2 (g_N(X,Z) g_N(Y,W) - g_N(Y,Z) g_N(X,W)) ].
std::vector<double> r_warped_curvature_oracle(const RWarpedContact& r, std::span<const double> p);

/// Christoffel symbols from nabla_xi X = nabla_X xi = (f'/f) X and
/// nabla_X Y = nabla^N_X Y - f f' g_N(X,Y) xi.
std::vector<double> r_warped_christoffel_oracle(const RWarpedContact& r, std::span<const double> p);

/// g_N(JY,Z) JX - g_N(JX,Z) JY + g_N(X,Z) Y - g_N(Y,Z) X for fiber vectors.
std::vector<double> eq_for_g1(const AlmostHermitianStructure& n, std::span<const double> p, std::span<const double> x,
                              std::span<const double> y, std::span<const double> z);

/// Max |eq_for_g1| over consecutive triples of sample vectors on the fiber.
IdentityReport eq_for_g1_check(const AlmostHermitianStructure& n, const SampleSet& samples, double tol);

}  // namespace curvlab
