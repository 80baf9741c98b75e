#pragma once

/// \file
/// Levi-Civita connection and curvature of a chart metric at a point.
///
/// Convention: R_XY Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
/// and R(X,Y,Z,W) = -g(R_XY Z, W). With it the unit sphere has R(X,Y,X,Y) = +1
/// for orthonormal X, Y.

#include "curvlab/chart.hpp"

#include <vector>

namespace curvlab {

/// Everything the engine needs at one point, computed once.
struct PointGeometry {
  int n = 0;
  Point p;
  std::vector<double> g;       // g_ij
  std::vector<double> ginv;    // g^ij
  std::vector<double> dg;      // [m][i][j] = d_m g_ij
  std::vector<double> gamma;   // [k][i][j] = Gamma^k_ij
  std::vector<double> dgamma;  // [m][k][i][j] = d_m Gamma^k_ij
  std::vector<double> rup;     // [m][i][j][k] = R^m_ijk, R(d_i,d_j)d_k = R^m_ijk d_m
  std::vector<double> riem;    // [i][j][k][l] = R(d_i,d_j,d_k,d_l)

  double Gamma(int k, int i, int j) const { return gamma[idx3(k, i, j)]; }
  double Riem(int i, int j, int k, int l) const {
    return riem[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  }

  double inner(std::span<const double> x, std::span<const double> y) const;
  /// R(X,Y,Z,W) for arbitrary vectors.
  double R(std::span<const double> x, std::span<const double> y, std::span<const double> z,
           std::span<const double> w) const;
  /// The vector R_XY Z.
  std::vector<double> R_op(std::span<const double> x, std::span<const double> y, std::span<const double> z) const;
  /// nabla_X Y for a field Y given by its jets at p.
  std::vector<double> nabla_vector(std::span<const double> x, std::span<const Jet> y) const;
  std::vector<double> nabla_oneform(std::span<const double> x, std::span<const Jet> eta) const;
  /// (nabla_X phi) as a row-major matrix.
  std::vector<double> nabla_endomorphism(std::span<const double> x, std::span<const Jet> phi) const;
  /// Lowered index: g(v, .)
  std::vector<double> lower(std::span<const double> v) const;

  std::size_t idx3(int a, int b, int c) const { return static_cast<std::size_t>((a * n + b) * n + c); }
};

/// Throws SingularMatrix when the metric is not invertible at p.
PointGeometry geometry_at(const Chart& chart, std::span<const double> p);

struct ConnectionAtPoint {
  int n = 0;
  std::vector<double> gamma;  // [k][i][j]
  double operator()(int k, int i, int j) const { return gamma[static_cast<std::size_t>((k * n + i) * n + j)]; }
};

struct CurvatureAtPoint {
  int n = 0;
  std::vector<double> riem;  // [i][j][k][l]
  double operator()(int i, int j, int k, int l) const {
    return riem[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  }
};

ConnectionAtPoint christoffel(const Chart& chart, std::span<const double> p);
CurvatureAtPoint curvature(const Chart& chart, std::span<const double> p);

/// nabla_X f, same valence and layout as f.
std::vector<double> covariant_derivative(const Chart& chart, const TensorField& f, std::span<const double> p,
                                         std::span<const double> x);

/// (L_xi g)(X,Y) = g(nabla_X xi, Y) + g(X, nabla_Y xi).
double lie_derivative_metric(const Chart& chart, const TensorField& xi, std::span<const double> p,
                             std::span<const double> x, std::span<const double> y);

/// d eta(X,Y) = X^i Y^j (d_i eta_j - d_j eta_i), without the 1/2 factor.
double exterior_d_oneform(const Chart& chart, const TensorField& eta, std::span<const double> p,
                          std::span<const double> x, std::span<const double> y);

/// Coefficient of eta ^ (d eta)^n on d x^0 ^ ... ^ d x^{2n} (engine d convention).
double contact_volume(const Chart& chart, const TensorField& eta, std::span<const double> p);

/// Ric(X,Y) = sum_a R(E_a, X, E_a, Y) over a Gram-Schmidt orthonormal frame.
double ricci(const PointGeometry& pg, std::span<const double> x, std::span<const double> y);
double ricci(const Chart& chart, std::span<const double> p, std::span<const double> x, std::span<const double> y);

/// g-orthonormal basis from the coordinate basis, pivot order = coordinate order.
std::vector<std::vector<double>> orthonormal_frame(const PointGeometry& pg);

struct SymmetryResiduals {
  double antisym_ij = 0;
  double antisym_kl = 0;
  double pair = 0;
  double bianchi = 0;
  double max() const;
};

/// Symmetry defects of the coordinate curvature components, scaled to a
/// g-orthonormal frame so the numbers are per unit-norm input.
SymmetryResiduals curvature_symmetries(const PointGeometry& pg);

/// Max |nabla_X g| over the coordinate directions.
double metric_compatibility_residual(const PointGeometry& pg);

}  // namespace curvlab
