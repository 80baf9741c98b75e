#include "curvlab/cone.hpp"
#include "curvlab/identities.hpp"
#include "curvlab/warped.hpp"

#include <doctest.h>

#include <cmath>

using namespace curvlab;

namespace {

AlmostContactStructure sasakian_r3() {
  return make_contact("sasakian_r3", {"x", "y", "z"}, {},
                      {"1/4 + y^2/4", "0", "-y/4", "0", "1/4", "0", "-y/4", "0", "1/4"},
                      {"0", "1", "0", "-1", "0", "0", "0", "y", "0"}, {"0", "0", "2"}, {"-y/2", "0", "1/2"});
}

AlmostContactStructure cosymplectic_r3() {
  return make_contact("flat", {"x", "y", "z"}, {}, {"1", "0", "0", "0", "1", "0", "0", "0", "1"},
                      {"0", "-1", "0", "1", "0", "0", "0", "0", "0"}, {"0", "0", "1"}, {"0", "0", "1"});
}

AlmostHermitianStructure flat_c2() {
  return make_hermitian("c2", {"x", "y", "u", "v"}, {},
                        {"1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1"},
                        {"0", "-1", "0", "0", "1", "0", "0", "0", "0", "0", "0", "-1", "0", "0", "1", "0"});
}

AlmostHermitianStructure flat_r2() {
  return make_hermitian("r2", {"x", "y"}, {}, {"1", "0", "0", "1"}, {"0", "-1", "1", "0"});
}

Chart line(std::string name, Interval iv) {
  Chart c;
  c.name = name;
  c.coords = {name};
  c.domain = {iv};
  c.metric = ComponentField(std::vector<Expr>{Expr::integer(1)});
  return c;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Expr theta_expr(const char* text) {
  std::vector<std::string> th{"theta"};
  return parse_expr(text, th);
}

}  // namespace

TEST_CASE("cone chart: Christoffel values at t = 2 over a flat base") {
  auto cb = build_cone(cosymplectic_r3());
  std::vector<double> p{2.0, 0.1, 0.2, 0.3};
  auto pg = geometry_at(cb.cone.chart, p);
  CHECK(pg.Gamma(1, 0, 1) == doctest::Approx(0.5));
  CHECK(pg.Gamma(0, 1, 1) == doctest::Approx(-2.0));
  CHECK(pg.Gamma(0, 0, 0) == 0.0);
  CHECK(cb.cone.chart.coords.front() == "t");
  CHECK(cb.cone.chart.domain.front().lo == 0.0);
}

TEST_CASE("cone structure invariants and closed forms") {
  for (const auto& base : {sasakian_r3(), cosymplectic_r3()}) {
    auto cb = build_cone(base);
    auto samples = sample(cb.cone.chart, 6, 8, 17);
    CHECK(validate(cb.cone, samples, 1e-12).back().verdict());
    for (const auto& p : samples.points) {
      auto J = eval_field(cb.cone.J, p);
      auto xi = eval_field(base.xi, std::span<const double>(p).subspan(1));
      const int n = 4;
      // J d_t = -(1/t) xi
      CHECK(J[0] == 0.0);
      for (int i = 0; i < 3; ++i) CHECK(J[static_cast<std::size_t>((i + 1) * n)] == doctest::Approx(-xi[static_cast<std::size_t>(i)] / p[0]));
      auto g = cb.cone.chart.metric.values(p);
      std::vector<double> dt{1, 0, 0, 0};
      auto Jdt = matvec(J, dt, n);
      CHECK(bilinear(g, Jdt, Jdt, n) == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (const auto& r : cone_oracle_checks(cb, samples, 1e-8)) {
      INFO(base.name, " ", r.tag, " ", r.residual);
      CHECK(r.verdict());
    }
  }
}

TEST_CASE("the cone over a Sasakian manifold is Kaehler") {
  auto cb = build_cone(sasakian_r3());
  auto samples = sample(cb.cone.chart, 5, 6, 23);
  double worst = 0;
  for (std::size_t k = 0; k < samples.points.size(); ++k)
    for (const auto& a : samples.vectors[k])
      for (double v : covariant_derivative(cb.cone.chart, cb.cone.J, samples.points[k], a))
        worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-9);
  auto ps = prepare(cb.cone, samples);
  for (auto id : {Identity::K1, Identity::K2, Identity::K3}) CHECK(check_identity(id, ps, 1e-8).verdict());
}

TEST_CASE("warped products: eq (4) oracle and hand-expanded Christoffels") {
  Chart r4;
  r4.name = "r4";
  r4.coords = {"x", "y", "u", "v"};
  r4.domain.resize(4);
  r4.metric = flat_c2().chart.metric;
  WarpedSpec w{line("theta", {-M_PI / 2, M_PI / 2}), r4, theta_expr("cos(theta)")};
  Chart c = build_warped(w);
  auto samples = sample(c, 8, 1, 3);
  for (const auto& p : samples.points) {
    auto pg = geometry_at(c, p);
    auto oracle = warped_christoffel_oracle(w, p);
    CHECK(max_abs_diff(pg.gamma, oracle) < 1e-9);
    // hand expansion: Gamma^theta_aa = sin cos, Gamma^a_{theta a} = -tan
    const double th = p[0];
    CHECK(pg.Gamma(0, 2, 2) == doctest::Approx(std::sin(th) * std::cos(th)).epsilon(1e-12));
    CHECK(pg.Gamma(2, 0, 2) == doctest::Approx(-std::tan(th)).epsilon(1e-12));
  }

  WarpedSpec prod{line("s", {}), r4, Expr::integer(1)};
  Chart pc = build_warped(prod);
  auto ps = sample(pc, 3, 1, 4);
  for (const auto& p : ps.points)
    for (double v : warped_christoffel_oracle(prod, p)) CHECK(v == 0.0);

  CHECK_THROWS_AS(build_warped(WarpedSpec{line("theta", {-1, 1}), r4, theta_expr("theta")}), std::invalid_argument);
}

TEST_CASE("warping R+ by t reproduces the cone metric") {
  auto base = cosymplectic_r3();
  auto cb = build_cone(base);
  std::vector<std::string> tcoord{"t"};
  WarpedSpec w{line("t", {0, INFINITY}), base.chart, parse_expr("t", tcoord)};
  Chart c = build_warped(w);
  auto samples = sample(c, 5, 1, 8);
  for (const auto& p : samples.points) {
    CHECK(max_abs_diff(c.metric.values(p), cb.cone.chart.metric.values(p)) < 1e-15);
    CHECK(max_abs_diff(warped_christoffel_oracle(w, p), cone_christoffel_closed_form(cb, p)) < 1e-14);
  }
}

TEST_CASE("R x_f N: curvature and connection oracles") {
  struct Case {
    const char* f;
    Interval iv;
    double xi_curv;  // -f''/f
  };
  for (const auto& cs : {Case{"cos(theta)", {-M_PI / 2, M_PI / 2}, 1.0}, Case{"sin(theta)", {0, M_PI}, 1.0},
                         Case{"1", {}, 0.0}, Case{"exp(theta/2)", {-1, 1}, -0.25}}) {
    auto rw = build_r_warped_contact("rw", flat_c2(), theta_expr(cs.f), cs.iv);
    const auto& s = rw.structure;
    auto samples = sample(s.chart, 6, 4, 2);
    CHECK(validate(s, samples, 1e-12).back().verdict());
    for (std::size_t k = 0; k < samples.points.size(); ++k) {
      const auto& p = samples.points[k];
      auto pg = geometry_at(s.chart, p);
      INFO(cs.f);
      CHECK(max_abs_diff(pg.riem, r_warped_curvature_oracle(rw, p)) < 1e-8);
      CHECK(max_abs_diff(pg.gamma, r_warped_christoffel_oracle(rw, p)) < 1e-10);
      // R(W, xi, X, xi) = -(f''/f) g(X, W) for horizontal W, X
      std::vector<double> xi{0, 0, 0, 0, 1};
      auto sp = structure_point(s, pg);
      auto W = sp.horizontal(samples.vectors[k][0]), X = sp.horizontal(samples.vectors[k][1]);
      CHECK(pg.R(W, xi, X, xi) == doctest::Approx(cs.xi_curv * pg.inner(X, W)).epsilon(1e-9));
    }
  }
}

TEST_CASE("sine-cone is G2 but not G1; the surface version is G1") {
  auto sine = build_r_warped_contact("sine_cone_cos", flat_c2(), theta_expr("cos(theta)"), {-M_PI / 2, M_PI / 2});
  auto samples = sample(sine.structure.chart, 20, 20, 42);
  auto ps = prepare(sine.structure, samples);
  CHECK(check_identity(Identity::G2, ps, 1e-8).verdict());
  CHECK(check_identity(Identity::G1, ps, 1e-8).residual >= 0.5);

  auto surf = build_r_warped_contact("r_warped_surface", flat_r2(), theta_expr("cos(theta)"), {-M_PI / 2, M_PI / 2});
  auto s2 = sample(surf.structure.chart, 20, 20, 42);
  CHECK(check_identity(Identity::G1, prepare(surf.structure, s2), 1e-8).verdict());
}

TEST_CASE("eq_for_g1 vanishes on surfaces and not on C^2") {
  auto r2 = flat_r2();
  auto c2 = flat_c2();
  CHECK(eq_for_g1_check(r2, sample(r2.chart, 10, 9, 1), 1e-12).verdict());
  CHECK(eq_for_g1_check(c2, sample(c2.chart, 10, 9, 1), 1e-12).residual > 0.01);
}
