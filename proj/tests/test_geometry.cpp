#include "curvlab/geometry.hpp"
#include "curvlab/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace curvlab;

namespace {

Chart chart_of(std::string name, std::vector<std::string> coords, std::vector<std::string> rows,
               std::vector<Interval> domain = {}) {
  Chart c;
  c.name = std::move(name);
  c.coords = std::move(coords);
  c.domain = domain.empty() ? std::vector<Interval>(c.coords.size()) : std::move(domain);
  c.metric = metric_from_rows(rows, c.coords);
  return c;
}

Chart flat3() { return chart_of("flat3", {"x", "y", "z"}, {"1", "0", "0", "0", "1", "0", "0", "0", "1"}); }

Chart sphere2() {
  return chart_of("s2", {"th", "ph"}, {"1", "0", "0", "sin(th)^2"}, {{0, M_PI}, {}});
}

// Polynomial perturbation of the identity; positive definite near the origin.
Chart wobbly3() {
  return chart_of("wobbly", {"x", "y", "z"},
                  {"1 + x^2/5", "x*y/7", "z/9", "x*y/7", "2 + sin(z)/4", "x*z/11", "z/9", "x*z/11",
                   "3/2 + exp(y/3)/5"},
                  {{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}});
}

using Metric = std::function<std::vector<double>(std::span<const double>)>;

// Finite-difference Christoffel symbols straight from the metric values.
std::vector<double> fd_christoffel(const Metric& g, std::span<const double> p, double h) {
  const int n = static_cast<int>(p.size());
  auto nn = static_cast<std::size_t>(n);
  std::vector<double> dg(nn * nn * nn);
  for (int m = 0; m < n; ++m) {
    std::vector<double> a(p.begin(), p.end()), b(p.begin(), p.end());
    a[static_cast<std::size_t>(m)] += h;
    b[static_cast<std::size_t>(m)] -= h;
    auto ga = g(a), gb = g(b);
    for (std::size_t k = 0; k < nn * nn; ++k) dg[static_cast<std::size_t>(m) * nn * nn + k] = (ga[k] - gb[k]) / (2 * h);
  }
  auto ginv = inverse(g(p), n);
  auto D = [&](int m, int i, int j) { return dg[static_cast<std::size_t>((m * n + i) * n + j)]; };
  std::vector<double> gam(nn * nn * nn, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += ginv[static_cast<std::size_t>(k * n + l)] * (D(i, j, l) + D(j, i, l) - D(l, i, j));
        gam[static_cast<std::size_t>((k * n + i) * n + j)] = 0.5 * s;
      }
  return gam;
}

// R_ijkl from finite differences of finite-difference Christoffels.
std::vector<double> fd_riemann(const Metric& g, std::span<const double> p) {
  const int n = static_cast<int>(p.size());
  auto nn = static_cast<std::size_t>(n);
  const double h1 = 1e-3, h2 = 1e-4;
  auto G = [&](int k, int i, int j, const std::vector<double>& gam) {
    return gam[static_cast<std::size_t>((k * n + i) * n + j)];
  };
  auto gam0 = fd_christoffel(g, p, h2);
  std::vector<std::vector<double>> dgam;
  for (int m = 0; m < n; ++m) {
    std::vector<double> a(p.begin(), p.end()), b(p.begin(), p.end());
    a[static_cast<std::size_t>(m)] += h1;
    b[static_cast<std::size_t>(m)] -= h1;
    auto ga = fd_christoffel(g, a, h2), gb = fd_christoffel(g, b, h2);
    std::vector<double> d(ga.size());
    for (std::size_t q = 0; q < d.size(); ++q) d[q] = (ga[q] - gb[q]) / (2 * h1);
    dgam.push_back(std::move(d));
  }
  auto g0 = g(p);
  std::vector<double> out(nn * nn * nn * nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m) {
            double r = G(m, j, k, dgam[static_cast<std::size_t>(i)]) - G(m, i, k, dgam[static_cast<std::size_t>(j)]);
            for (int q = 0; q < n; ++q) r += G(m, i, q, gam0) * G(q, j, k, gam0) - G(m, j, q, gam0) * G(q, i, k, gam0);
            s += g0[static_cast<std::size_t>(m * n + l)] * r;
          }
          out[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = -s;
        }
  return out;
}

}  // namespace

TEST_CASE("flat space has no connection or curvature") {
  Chart c = flat3();
  std::vector<double> p{0.3, -1.2, 2.0};
  auto pg = geometry_at(c, p);
  for (double v : pg.gamma) CHECK(v == 0.0);
  for (double v : pg.riem) CHECK(v == 0.0);
}

TEST_CASE("polar plane: Christoffel closed form and zero curvature") {
  Chart c = chart_of("polar", {"r", "t"}, {"1", "0", "0", "r^2"});
  std::vector<double> p{2.0, 0.7};
  auto pg = geometry_at(c, p);
  CHECK(pg.Gamma(0, 1, 1) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(pg.Gamma(1, 0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pg.Gamma(1, 1, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pg.Gamma(0, 0, 0) == 0.0);
  for (double v : pg.riem) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("round sphere: connection, curvature sign and Ricci") {
  Chart c = sphere2();
  std::vector<double> p{1.1, 0.4};
  const double th = p[0];
  auto pg = geometry_at(c, p);
  CHECK(pg.Gamma(0, 1, 1) == doctest::Approx(-std::sin(th) * std::cos(th)).epsilon(1e-13));
  CHECK(pg.Gamma(1, 0, 1) == doctest::Approx(std::cos(th) / std::sin(th)).epsilon(1e-13));
  // sectional curvature +1: R(d_th, d_ph, d_th, d_ph) = |d_th|^2 |d_ph|^2
  CHECK(pg.Riem(0, 1, 0, 1) == doctest::Approx(std::sin(th) * std::sin(th)).epsilon(1e-12));
  CHECK(pg.Riem(1, 0, 0, 1) == doctest::Approx(-std::sin(th) * std::sin(th)).epsilon(1e-12));
  std::vector<double> x{0.3, -0.8}, y{1.0, 0.5};
  CHECK(ricci(pg, x, y) == doctest::Approx(pg.inner(x, y)).epsilon(1e-12));
}

TEST_CASE("hyperbolic half plane has curvature -1") {
  Chart c = chart_of("h2", {"x", "y"}, {"1/y^2", "0", "0", "1/y^2"}, {{}, {0, INFINITY}});
  std::vector<double> p{0.2, 1.7};
  auto pg = geometry_at(c, p);
  CHECK(pg.Riem(0, 1, 0, 1) == doctest::Approx(-std::pow(p[1], -4)).epsilon(1e-12));
}

TEST_CASE("engine agrees with finite-difference oracles on a generic metric") {
  Chart c = wobbly3();
  Metric g = [&](std::span<const double> q) { return c.metric.values(q); };
  auto s = sample(c, 6, 1, 7);
  for (const auto& p : s.points) {
    auto pg = geometry_at(c, p);
    auto gam = fd_christoffel(g, p, 1e-5);
    for (std::size_t q = 0; q < gam.size(); ++q) CHECK(pg.gamma[q] == doctest::Approx(gam[q]).epsilon(1e-8));
    auto R = fd_riemann(g, p);
    for (std::size_t q = 0; q < R.size(); ++q) CHECK(std::abs(pg.riem[q] - R[q]) < 1e-5);
  }
}

TEST_CASE("property: curvature symmetries and metric compatibility") {
  Chart c = wobbly3();
  auto s = sample(c, 20, 1, 11);
  for (const auto& p : s.points) {
    auto pg = geometry_at(c, p);
    CHECK(curvature_symmetries(pg).max() < 1e-11);
    CHECK(metric_compatibility_residual(pg) < 1e-12);
  }
}

TEST_CASE("covariant derivatives, Lie derivative and exterior derivative") {
  Chart s2 = sphere2();
  // d_ph is Killing on the round sphere
  TensorField rot{Valence::Vector, ComponentField(parse_all(std::vector<std::string>{"0", "1"}, s2.coords))};
  std::vector<double> p{0.9, 2.0};
  std::vector<double> x{0.4, -1.3}, y{1.1, 0.2};
  CHECK(std::abs(lie_derivative_metric(s2, rot, p, x, y)) < 1e-13);
  TensorField grad{Valence::Vector, ComponentField(parse_all(std::vector<std::string>{"1", "0"}, s2.coords))};
  // nabla_{d_ph} d_th = cot(th) d_ph
  auto v = covariant_derivative(s2, grad, p, std::vector<double>{0, 1});
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(std::cos(p[0]) / std::sin(p[0])).epsilon(1e-13));

  Chart r3 = flat3();
  TensorField eta{Valence::OneForm, ComponentField(parse_all(std::vector<std::string>{"-y", "0", "1"}, r3.coords))};
  std::vector<double> q{0.5, 0.25, -1};
  std::vector<double> ex{1, 0, 0}, ey{0, 1, 0};
  CHECK(exterior_d_oneform(r3, eta, q, ex, ey) == doctest::Approx(1.0));
  CHECK(contact_volume(r3, eta, q) == doctest::Approx(1.0));
  TensorField closed{Valence::OneForm, ComponentField(parse_all(std::vector<std::string>{"0", "0", "1"}, r3.coords))};
  CHECK(contact_volume(r3, closed, q) == 0.0);

  // (nabla_X phi) for the rotation J of the flat plane vanishes
  Chart r2 = chart_of("r2", {"x", "y"}, {"1", "0", "0", "1"});
  TensorField J{Valence::Endomorphism, ComponentField(parse_all(std::vector<std::string>{"0", "-1", "1", "0"}, r2.coords))};
  auto dJ = covariant_derivative(r2, J, std::vector<double>{0.1, 0.2}, std::vector<double>{1, 1});
  for (double d : dJ) CHECK(d == 0.0);
}

TEST_CASE("sampling is deterministic and respects the margins") {
  Chart c = chart_of("half", {"t", "a", "b"}, {"1", "0", "0", "0", "t^2", "0", "0", "0", "t^2"},
                     {{0, INFINITY}, {-1, 1}, {}});
  auto s1 = sample(c, 20, 20, 42);
  auto s2 = sample(c, 20, 20, 42);
  auto s3 = sample(c, 20, 20, 43);
  CHECK(s1.points == s2.points);
  CHECK(s1.vectors == s2.vectors);
  CHECK(s1.points != s3.points);
  for (std::size_t i = 0; i < s1.points.size(); ++i) {
    const auto& p = s1.points[i];
    CHECK(p[0] > 0.5);
    CHECK(p[0] < 3.0);
    CHECK(p[1] > -1 + kDomainMargin);
    CHECK(p[1] < 1 - kDomainMargin);
    CHECK(std::abs(p[2]) < 2.0);
    CHECK(s1.vectors[i].size() == 20);
    for (const auto& v : s1.vectors[i]) {
      double n2 = 0;
      for (double x : v) {
        CHECK(std::abs(x) < 1.0);
        n2 += x * x;
      }
      CHECK(n2 >= 0.01);
    }
  }
  CHECK(unit_uniform(0) == 0.0);
  CHECK(unit_uniform(~0ULL) < 1.0);
}

TEST_CASE("sampling rejects an indefinite metric") {
  Chart c = chart_of("lorentz", {"t", "x"}, {"-1", "0", "0", "1"});
  CHECK_THROWS(sample(c, 3, 2, 1));
}
