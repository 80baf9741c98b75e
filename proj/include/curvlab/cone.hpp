#pragma once

/// \file
/// The metric cone C(M) = (0, inf) x M with g~ = dt^2 + t^2 g and the almost
/// Hermitian structure induced by an almost contact metric structure on M:
///   J d_t = -(1/t) xi,   J X = phi X + t eta(X) d_t.
/// The cone chart puts t first, followed by the base coordinates.

#include "curvlab/check_report.hpp"
#include "curvlab/structures.hpp"

#include <vector>

namespace curvlab {

struct ConeBundle {
  AlmostContactStructure base;
  AlmostHermitianStructure cone;
};

ConeBundle build_cone(const AlmostContactStructure& base);

/// Gamma~^k_ij ([k][i][j]) from the base connection:
/// Gamma~^i_tj = delta^i_j / t, Gamma~^t_ij = -t g_ij, Gamma~^k_ij = Gamma^k_ij.
std::vector<double> cone_christoffel_closed_form(const ConeBundle& c, std::span<const double> p);

/// R~(d_a, d_b, d_c, d_d): t^2 (R_ijkl + g_jk g_il - g_ik g_jl) on base slots, 0 when any slot is d_t.
std::vector<double> cone_curvature_closed_form(const ConeBundle& c, std::span<const double> p);

/// (nabla~_A J) as a row-major matrix for a cone vector A:
///   (nabla~_X J) Y   = t[(nabla_X eta) Y - g(X, phi Y)] d_t + (nabla_X phi) Y - g(X,Y) xi + eta(Y) X
///   (nabla~_X J) d_t = -(1/t)(nabla_X xi + phi X)
///   nabla~_{d_t} J   = 0
std::vector<double> cone_nabla_J_closed_form(const ConeBundle& c, std::span<const double> p,
                                             std::span<const double> a);

/// Compares the generic engine on the cone chart with the closed forms above
/// and with the curvature of J expressed through base quantities. Tags:
/// cone.christoffel, cone.nabla_j, cone.curvature, cone.r_dt_x_jdt,
/// cone.r_dt_x_jy, cone.r_xy_jdt, cone.r_xy_jz, cone.item1, cone.item2, cone.item3.
std::vector<IdentityReport> cone_oracle_checks(const ConeBundle& c, const SampleSet& cone_samples, double tol);

}  // namespace curvlab
