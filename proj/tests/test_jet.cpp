#include "curvlab/jet.hpp"

#include <doctest.h>

#include <array>
#include <functional>
#include <random>

using namespace curvlab;

namespace {

// Plain-real evaluation in long double so the second difference quotient at
// h = 1e-5 is limited by truncation (~h^2) rather than rounding (~eps/h^2).
using Real = long double;

Real apply_real(Elementary f, Real x) {
  switch (f) {
    case Elementary::Sin: return std::sin(x);
    case Elementary::Cos: return std::cos(x);
    case Elementary::Tan: return std::tan(x);
    case Elementary::Exp: return std::exp(x);
    case Elementary::Log: return std::log(x);
    case Elementary::Sqrt: return std::sqrt(x);
    case Elementary::Sinh: return std::sinh(x);
    case Elementary::Cosh: return std::cosh(x);
  }
  return 0;
}

template <class F>
struct FiniteDiff {
  F f;
  Real h = 1e-5L;

  Real at(const std::vector<double>& p, int i, Real di, int j, Real dj) const {
    std::vector<Real> q(p.begin(), p.end());
    q[static_cast<std::size_t>(i)] += di;
    q[static_cast<std::size_t>(j)] += dj;
    return f(std::span<const Real>(q));
  }

  double grad(const std::vector<double>& p, int i) const {
    return static_cast<double>((at(p, i, h, i, 0) - at(p, i, -h, i, 0)) / (2 * h));
  }

  double hess(const std::vector<double>& p, int i, int j) const {
    if (i == j) {
      return static_cast<double>((at(p, i, h, i, 0) - 2 * at(p, i, 0, i, 0) + at(p, i, -h, i, 0)) / (h * h));
    }
    return static_cast<double>(
        (at(p, i, h, j, h) - at(p, i, h, j, -h) - at(p, i, -h, j, h) + at(p, i, -h, j, -h)) / (4 * h * h));
  }
};

bool close(double jet, double fd) {
  return std::abs(jet - fd) <= 1e-6 * std::max(std::abs(fd), 1.0);
}

// f is a generic callable usable with spans of Jet and of long double.
template <class F>
void check_against_fd(F f, const std::vector<double>& p) {
  const int n = static_cast<int>(p.size());
  auto seeds = seed_all(p);
  Jet j = f(std::span<const Jet>(seeds));
  FiniteDiff<F> fd{f};
  for (int i = 0; i < n; ++i) {
    CHECK_MESSAGE(close(j.grad(i), fd.grad(p, i)), "grad ", i, " jet ", j.grad(i), " fd ", fd.grad(p, i));
    for (int k = 0; k < n; ++k) {
      CHECK(j.hess(i, k) == j.hess(k, i));
      CHECK_MESSAGE(close(j.hess(i, k), fd.hess(p, i, k)), "hess ", i, k, " jet ", j.hess(i, k),
                    " fd ", fd.hess(p, i, k));
    }
  }
}

template <class S>
S ap(Elementary f, const S& x) {
  if constexpr (std::is_same_v<S, Real>) {
    return apply_real(f, x);
  } else {
    return apply(f, x);
  }
}

template <class S>
S ipow(const S& x, long n) {
  if constexpr (std::is_same_v<S, Real>) {
    return std::pow(x, static_cast<Real>(n));
  } else {
    return integer_power(x, n);
  }
}

}  // namespace

TEST_CASE("seed layout") {
  std::array<double, 2> p{2, 5};
  Jet s = Jet::seed(2, 0, p[0]);
  CHECK(s.value() == 2);
  CHECK(s.grad(0) == 1);
  CHECK(s.grad(1) == 0);
  CHECK(s.hess(0, 0) == 0);
  CHECK(s.hess(1, 0) == 0);

  Jet z = Jet::seed(1, 0, 0.0);
  CHECK(z.value() == 0);
  CHECK(z.grad(0) == 1);

  Jet t = Jet::seed(3, 2, 1.0);
  CHECK(t.grad(0) == 0);
  CHECK(t.grad(2) == 1);
  CHECK_THROWS_AS(Jet::seed(3, 3, 1.0), std::out_of_range);
  CHECK_THROWS_AS(Jet::seed(3, -1, 1.0), std::out_of_range);
}

TEST_CASE("product and elementary rules at simple points") {
  Jet x = Jet::seed(1, 0, 3.0);
  Jet sq = x * x;
  CHECK(sq.value() == 9);
  CHECK(sq.grad(0) == 6);
  CHECK(sq.hess(0, 0) == 2);

  Jet s = apply(Elementary::Sin, Jet::seed(1, 0, 0.0));
  CHECK(s.value() == 0);
  CHECK(s.grad(0) == 1);
  CHECK(s.hess(0, 0) == 0);

  Jet c = apply(Elementary::Cos, Jet::seed(1, 0, 0.0));
  CHECK(c.value() == 1);
  CHECK(c.grad(0) == 0);
  CHECK(c.hess(0, 0) == -1);
  auto cosf = [](std::span<const Real> q) { return std::cos(q[0]); };
  FiniteDiff<decltype(cosf)> fd{cosf};
  CHECK(close(c.hess(0, 0), fd.hess({0.0}, 0, 0)));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(Jet::seed(1, 0, 1.0) / Jet(0.0), DomainError);
  CHECK_THROWS_AS(apply(Elementary::Log, Jet::seed(1, 0, 0.0)), DomainError);
  CHECK_THROWS_AS(apply(Elementary::Log, Jet::seed(1, 0, -1.0)), DomainError);
  CHECK_THROWS_AS(apply(Elementary::Sqrt, Jet::seed(1, 0, -0.5)), DomainError);
  CHECK_THROWS_AS(apply(Elementary::Sqrt, -0.5), DomainError);
  CHECK_THROWS_AS(integer_power(Jet::seed(1, 0, 0.0), -2), DomainError);
}

TEST_CASE("every elementary rule matches finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> any(-1.5, 1.5);
  std::uniform_real_distribution<double> pos(0.3, 2.5);
  const Elementary all[] = {Elementary::Sin,  Elementary::Cos,  Elementary::Tan,  Elementary::Exp,
                            Elementary::Log,  Elementary::Sqrt, Elementary::Sinh, Elementary::Cosh};
  for (Elementary f : all) {
    CAPTURE(to_string(f));
    for (int trial = 0; trial < 20; ++trial) {
      const bool positive = f == Elementary::Log || f == Elementary::Sqrt;
      // tan stays away from its pole so truncation error does not dominate
      const double scale = f == Elementary::Tan ? 0.7 : 1.0;
      std::vector<double> p{positive ? pos(rng) : scale * any(rng), any(rng)};
      // compose with a bilinear inner map so mixed partials are exercised
      check_against_fd(
          [f]<class S>(std::span<const S> v) { return ap<S>(f, v[0] + S(0.1) * v[0] * v[1]); }, p);
    }
  }
}

TEST_CASE("arithmetic rules match finite differences") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.4, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> p{u(rng), u(rng), u(rng)};
    check_against_fd([]<class S>(std::span<const S> v) { return v[0] + v[1] * v[2] - v[2]; }, p);
    check_against_fd([]<class S>(std::span<const S> v) { return v[0] / (v[1] + v[2]); }, p);
    check_against_fd([]<class S>(std::span<const S> v) { return -(v[0] * v[2]); }, p);
    for (long n : {-3L, -1L, 2L, 3L, 5L}) {
      check_against_fd([n]<class S>(std::span<const S> v) { return ipow<S>(v[0] * v[1], n); }, p);
    }
  }
}

TEST_CASE("composition sin(xy) + exp(x) at 100 random points") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> p{u(rng), u(rng)};
    check_against_fd(
        []<class S>(std::span<const S> v) {
          return ap<S>(Elementary::Sin, v[0] * v[1]) + ap<S>(Elementary::Exp, v[0]);
        },
        p);
  }
}

TEST_CASE("nested jets carry third derivatives") {
  // f = x^2 y^3; d/dx of the inner gradient component f_y = 3x^2y^2 gives f_xy = 6xy^2
  std::vector<double> p{1.5, 0.7};
  auto v = seed_all_nested(p);
  auto f = integer_power(v[0], 2) * integer_power(v[1], 3);
  const double x = p[0], y = p[1];
  CHECK(f.value().value() == doctest::Approx(x * x * y * y * y));
  // outer gradient along y, inner gradient along x
  CHECK(f.grad(1).grad(0) == doctest::Approx(6 * x * y * y));
  // third derivative f_xyy = 12 x y via the inner Hessian of the outer gradient
  CHECK(f.grad(1).hess(0, 1) == doctest::Approx(12 * x * y));
  CHECK(f.hess(0, 1).grad(1) == doctest::Approx(12 * x * y));
}

TEST_CASE("embed places variables at an offset") {
  Jet a = Jet::seed(2, 1, 3.0) * Jet::seed(2, 0, 2.0);
  Jet e = embed(a, 4, 1);
  CHECK(e.value() == 6);
  CHECK(e.grad(1) == 3);
  CHECK(e.grad(2) == 2);
  CHECK(e.hess(1, 2) == 1);
  CHECK(e.grad(0) == 0);
  CHECK_THROWS_AS(embed(a, 2, 1), std::out_of_range);
}
