#include "curvlab/frame.hpp"

#include <doctest.h>

using namespace curvlab;

namespace {

Rational R(long p, long q = 1) { return Rational(p) / q; }

Vec<Rational> zeros(int n) { return Vec<Rational>(static_cast<std::size_t>(n), Rational(0)); }

}  // namespace

TEST_CASE("abelian frame is flat") {
  FrameGeometry f(3, zeros(27), identity_matrix<Rational>(3));
  for (const auto& r : f.riemann()) CHECK(r == 0);
}

TEST_CASE("invalid structure constants are rejected") {
  auto c = zeros(27);
  c[(2 * 3 + 0) * 3 + 1] = 1;  // [E1,E2] = E3 without the antisymmetric partner
  CHECK_THROWS_AS(FrameGeometry(3, c, identity_matrix<Rational>(3)), FrameError);

  // [E1,E2]=E2, [E1,E3]=E1 (with partners): Jacobi fails
  auto d = zeros(27);
  auto set = [&](int k, int i, int j, Rational v) {
    d[static_cast<std::size_t>((k * 3 + i) * 3 + j)] = v;
    d[static_cast<std::size_t>((k * 3 + j) * 3 + i)] = -v;
  };
  set(1, 0, 1, 1);
  set(0, 0, 2, 1);
  set(2, 1, 2, 1);
  CHECK_THROWS_AS(FrameGeometry(3, d, identity_matrix<Rational>(3)), FrameError);

  auto g = identity_matrix<Rational>(3);
  g[4] = -1;
  CHECK_THROWS_AS(FrameGeometry(3, zeros(27), g), FrameError);
}

TEST_CASE("SU(2) with the bi-invariant metric has constant curvature") {
  // [E1,E2] = 2E3 and cyclic: the unit 3-sphere
  auto c = zeros(27);
  auto set = [&](int k, int i, int j) {
    c[static_cast<std::size_t>((k * 3 + i) * 3 + j)] = 2;
    c[static_cast<std::size_t>((k * 3 + j) * 3 + i)] = -2;
  };
  set(2, 0, 1);
  set(0, 1, 2);
  set(1, 2, 0);
  FrameGeometry f(3, c, identity_matrix<Rational>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          Rational expect = (i == k && j == l ? 1 : 0) - (j == k && i == l ? 1 : 0);
          CHECK(f.curvature(i, j, k, l) == expect);
        }
}

TEST_CASE("H(2,1) connection table") {
  auto h = heisenberg_h21(R(3, 5), R(4, 5));
  const auto& f = h.frame;
  enum { X1, X2, Y1, Y2, XI };
  // nabla_{X_i} Y_i = xi, nabla_{Y_i} X_i = -xi, nabla_{X_i} xi = -Y_i, nabla_xi X_i = -Y_i
  CHECK(f.connection(X1, Y1) == f.basis(XI));
  auto m = f.basis(XI);
  m[XI] = -1;
  CHECK(f.connection(Y1, X1) == m);
  auto neg = [](Vec<Rational> v) {
    for (auto& x : v) x = -x;
    return v;
  };
  CHECK(f.connection(X1, XI) == neg(f.basis(Y1)));
  CHECK(f.connection(XI, X1) == neg(f.basis(Y1)));
  CHECK(f.connection(Y2, XI) == f.basis(X2));
  CHECK(f.connection(XI, Y2) == f.basis(X2));
  CHECK(f.connection(X1, X2) == zeros(5));
  // [X1,Y1] = 2 xi
  CHECK(f.bracket(f.basis(X1), f.basis(Y1)) == neg(neg(Vec<Rational>{0, 0, 0, 0, 2})));
}

TEST_CASE("H(2,1) curvature entries") {
  auto h = heisenberg_h21(R(3, 5), R(4, 5));
  const auto& f = h.frame;
  enum { X1, X2, Y1, Y2, XI };
  CHECK(f.curvature(X1, XI, X1, XI) == 1);
  CHECK(f.curvature(X1, Y1, X1, Y1) == -3);
  CHECK(f.curvature(X1, X2, X1, X2) == 0);
  CHECK(f.curvature(X1, Y2, X1, Y2) == 0);
  CHECK(f.curvature(X1, Y1, X2, Y2) == -2);
  CHECK(f.curvature(X1, X2, Y1, Y2) == -1);
  CHECK(f.curvature(X1, Y2, X2, Y1) == -1);
}

TEST_CASE("frame curvature symmetries hold exactly") {
  auto h = heisenberg_h21(R(-4, 5), R(3, 5));
  const int n = h.frame.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const auto& f = h.frame;
          CHECK(f.curvature(i, j, k, l) == -f.curvature(j, i, k, l));
          CHECK(f.curvature(i, j, k, l) == f.curvature(k, l, i, j));
          CHECK(f.curvature(i, j, k, l) + f.curvature(j, k, i, l) + f.curvature(k, i, j, l) == 0);
        }
}

TEST_CASE("h21 validates the rotation pair") {
  CHECK_THROWS_AS(heisenberg_h21(R(1, 2), R(1, 2)), std::invalid_argument);
  CHECK(heisenberg_h21(R(1), R(0)).name == "h21:1,0");
  CHECK(heisenberg_h21(R(3, 5), R(4, 5)).name == "h21:3/5,4/5");
}
