#include "curvlab/hypersurface.hpp"
#include "curvlab/identities.hpp"

#include <doctest.h>

#include <cmath>

using namespace curvlab;

TEST_CASE("jet linear algebra keeps derivatives of zero-valued entries") {
  std::vector<double> p{0.0, 2.0};
  auto x = seed_all(p);  // x[0] has value 0, gradient e_0
  Vec<Jet> a{Jet(1.0), Jet(0.0), Jet(0.0), Jet(1.0)};
  auto v = matvec(a, x, 2);
  CHECK(v[0].grad(0) == 1.0);
  CHECK(bilinear(a, x, x, 2).hess(0, 0) == 2.0);
  auto s = solve(a, x, 2);
  CHECK(s[0].grad(0) == 1.0);
}

TEST_CASE("S^5 in C^3: totally umbilical, beta = -1, Sasakian") {
  auto spec = s5_in_c3();
  auto induced = induced_structure(spec);
  auto samples = sample(induced.chart, 20, 20, 42);
  auto rep = induce_hypersurface(spec, samples, 1e-9);
  CHECK(rep.umbilical);
  CHECK(rep.umbilicity.residual <= 1e-9);
  for (double b : rep.beta) CHECK(b == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(rep.second_fundamental.residual <= 1e-9);
  CHECK(rep.ambient_kaehler.residual == 0.0);

  // the round metric: g_chi,chi = 1 and g_th1,th1 = cos^2 chi
  const auto& p = samples.points[0];
  auto g = induced.chart.metric.values(p);
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[2 * 5 + 2] == doctest::Approx(std::cos(p[0]) * std::cos(p[0])));
  // xi = -J N is -(d_th1 + d_th2 + d_th3)
  auto xi = eval_field(induced.xi, p);
  CHECK(xi[0] == doctest::Approx(0.0));
  for (int i = 2; i < 5; ++i) CHECK(xi[static_cast<std::size_t>(i)] == doctest::Approx(-1.0));

  auto cls = classify(induced, sample(induced.chart, 5, 8, 42), 1e-8);
  CHECK(cls.pass("compatibility"));
  CHECK(cls.sasakian());
  CHECK(cls.contact_metric());
  CHECK(cls.ric_xi_xi == doctest::Approx(4.0));

  auto ps = prepare(induced, sample(induced.chart, 5, 8, 42));
  for (auto id : {Identity::G1, Identity::G2, Identity::G3}) {
    INFO(identity_tag(id));
    CHECK(check_identity(id, ps, 1e-8).verdict());
  }
}

TEST_CASE("induced curvature of the unit sphere is constant 1") {
  auto induced = induced_structure(s3_in_c2());
  auto samples = sample(induced.chart, 6, 4, 1);
  for (std::size_t k = 0; k < samples.points.size(); ++k) {
    auto pg = geometry_at(induced.chart, samples.points[k]);
    const auto &x = samples.vectors[k][0], &y = samples.vectors[k][1];
    const double gxx = pg.inner(x, x), gyy = pg.inner(y, y), gxy = pg.inner(x, y);
    CHECK(pg.R(x, y, x, y) == doctest::Approx(gxx * gyy - gxy * gxy).epsilon(1e-10));
  }
}

TEST_CASE("the ellipsoid is not totally umbilical") {
  auto spec = ellipsoid_in_c3();
  auto induced = induced_structure(spec);
  auto rep = induce_hypersurface(spec, sample(induced.chart, 10, 4, 42), 1e-9);
  CHECK_FALSE(rep.umbilical);
  CHECK(rep.umbilicity.residual > 1e-2);
  // h(X, xi) = eta(AX) holds on any real hypersurface of a Kaehler manifold
  CHECK(rep.second_fundamental.residual <= 1e-9);
}

TEST_CASE("a non-unit normal is rejected") {
  auto spec = s5_in_c3();
  std::vector<std::string> c = spec.coords;
  spec.normal[0] = parse_expr("2*cos(chi)*cos(th1)", c);
  std::vector<double> p{0.5, 0.5, 0.1, 0.2, 0.3};
  CHECK_THROWS_AS(hypersurface_point(spec, p), std::invalid_argument);
}
