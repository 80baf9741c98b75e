#pragma once

/// \file
/// Exact geometry of a left-invariant metric on a Lie group, from structure
/// constants c^k_ij ([E_i, E_j] = c^k_ij E_k) and a constant frame metric.

#include "curvlab/rational.hpp"
#include "curvlab/structure_point.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace curvlab {

class FrameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FrameGeometry {
 public:
  /// c is indexed [k][i][j]; g is dim*dim. Throws FrameError when c is not
  /// antisymmetric, violates Jacobi, or g is not symmetric positive definite.
  FrameGeometry(int dim, Vec<Rational> c, Vec<Rational> g);

  int dim() const { return n_; }
  const Rational& c(int k, int i, int j) const { return c_[idx3(k, i, j)]; }
  const Vec<Rational>& metric() const { return g_; }

  /// Coefficients of nabla_{E_i} E_j.
  const Vec<Rational>& connection(int i, int j) const { return nabla_[static_cast<std::size_t>(i * n_ + j)]; }
  /// R(E_i, E_j, E_k, E_l) = -g(R_{E_i E_j} E_k, E_l).
  const Rational& curvature(int i, int j, int k, int l) const {
    return riem_[static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l)];
  }
  const Vec<Rational>& riemann() const { return riem_; }

  /// Brackets and covariant derivatives of constant-coefficient fields.
  Vec<Rational> bracket(const Vec<Rational>& x, const Vec<Rational>& y) const;
  Vec<Rational> nabla(const Vec<Rational>& x, const Vec<Rational>& y) const;
  /// R_XY Z as a vector.
  Vec<Rational> R_op(const Vec<Rational>& x, const Vec<Rational>& y, const Vec<Rational>& z) const;

  Vec<Rational> basis(int i) const;

 private:
  std::size_t idx3(int a, int b, int c) const { return static_cast<std::size_t>((a * n_ + b) * n_ + c); }

  int n_;
  Vec<Rational> c_;
  Vec<Rational> g_;
  Vec<Rational> ginv_;
  std::vector<Vec<Rational>> nabla_;
  Vec<Rational> riem_;
};

/// A frame carrier with almost contact tensors in frame components.
struct FrameStructure {
  std::string name;
  FrameGeometry frame;
  Vec<Rational> phi;  // row-major phi^i_j
  Vec<Rational> xi;
  Vec<Rational> eta;
  std::vector<std::string> labels;  // basis names for witnesses; E1.. when empty

  StructurePoint<Rational> point() const;
  std::string label(int i) const;
};

/// H(2,1) in the frame (X1, X2, Y1, Y2, xi) with [X_i, Y_i] = 2 xi, orthonormal
/// metric and phi rotated by the pair (c, s). Throws unless c^2 + s^2 = 1.
FrameStructure heisenberg_h21(const Rational& c, const Rational& s);

/// Index names used in witnesses for the H(2,1) frame.
const std::vector<std::string>& h21_frame_names();

}  // namespace curvlab
