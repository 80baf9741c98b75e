#include "curvlab/cone.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace curvlab {

namespace {

std::size_t sz(int x) { return static_cast<std::size_t>(x); }

std::vector<double> lift(std::span<const double> x) {
  std::vector<double> v(x.size() + 1, 0.0);
  std::copy(x.begin(), x.end(), v.begin() + 1);
  return v;
}

std::vector<double> combo(std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
  std::vector<double> out(terms.begin()->second->size(), 0.0);
  for (const auto& [c, v] : terms)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * (*v)[i];
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::string cone_coordinate(const std::vector<std::string>& base) {
  std::string t = "t";
  while (std::find(base.begin(), base.end(), t) != base.end()) t += "0";
  return t;
}

}  // namespace

ConeBundle build_cone(const AlmostContactStructure& base) {
  base.check_shapes();
  auto b = std::make_shared<const AlmostContactStructure>(base);
  const int m = base.chart.dim();
  const int n = m + 1;

  AlmostHermitianStructure cone;
  cone.name = "cone_of:" + base.name;
  cone.chart.name = cone.name;
  cone.chart.coords.push_back(cone_coordinate(base.chart.coords));
  cone.chart.coords.insert(cone.chart.coords.end(), base.chart.coords.begin(), base.chart.coords.end());
  cone.chart.domain.push_back({0.0, INFINITY});
  cone.chart.domain.insert(cone.chart.domain.end(), base.chart.domain.begin(), base.chart.domain.end());

  cone.chart.metric = ComponentField(sz(n * n), [b, m, n](std::span<const double> p) {
    auto g = b->chart.metric.jets(p.subspan(1));
    Jet t = Jet::seed(n, 0, p[0]);
    Jet t2 = t * t;
    std::vector<Jet> out(sz(n * n), Jet::zero(n));
    out[0] = Jet::zero(n);
    out[0].value() = 1.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out[sz((i + 1) * n + j + 1)] = t2 * embed(g[sz(i * m + j)], n, 1);
    for (auto& j : out) j.ensure_size(n);
    return out;
  });

  cone.J = {Valence::Endomorphism, ComponentField(sz(n * n), [b, m, n](std::span<const double> p) {
              auto x = p.subspan(1);
              auto phi = eval_field_jets(b->phi, x);
              auto xi = eval_field_jets(b->xi, x);
              auto eta = eval_field_jets(b->eta, x);
              Jet t = Jet::seed(n, 0, p[0]);
              std::vector<Jet> out(sz(n * n), Jet::zero(n));
              for (int j = 0; j < m; ++j) out[sz(j + 1)] = t * embed(eta[sz(j)], n, 1);
              for (int i = 0; i < m; ++i) {
                out[sz((i + 1) * n)] = -embed(xi[sz(i)], n, 1) / t;
                for (int j = 0; j < m; ++j) out[sz((i + 1) * n + j + 1)] = embed(phi[sz(i * m + j)], n, 1);
              }
              for (auto& j : out) j.ensure_size(n);
              return out;
            })};
  return ConeBundle{base, std::move(cone)};
}

std::vector<double> cone_christoffel_closed_form(const ConeBundle& c, std::span<const double> p) {
  const int m = c.base.chart.dim();
  const int n = m + 1;
  const double t = p[0];
  auto pg = geometry_at(c.base.chart, p.subspan(1));
  std::vector<double> out(sz(n * n * n), 0.0);
  auto at = [n](int k, int i, int j) { return sz((k * n + i) * n + j); };
  for (int i = 0; i < m; ++i) {
    out[at(i + 1, 0, i + 1)] = 1.0 / t;
    out[at(i + 1, i + 1, 0)] = 1.0 / t;
    for (int j = 0; j < m; ++j) {
      out[at(0, i + 1, j + 1)] = -t * pg.g[sz(i * m + j)];
      for (int k = 0; k < m; ++k) out[at(k + 1, i + 1, j + 1)] = pg.Gamma(k, i, j);
    }
  }
  return out;
}

std::vector<double> cone_curvature_closed_form(const ConeBundle& c, std::span<const double> p) {
  const int m = c.base.chart.dim();
  const int n = m + 1;
  const double t2 = p[0] * p[0];
  auto pg = geometry_at(c.base.chart, p.subspan(1));
  auto g = [&](int a, int b) { return pg.g[sz(a * m + b)]; };
  std::vector<double> out(sz(n * n * n * n), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          out[sz((((i + 1) * n + j + 1) * n + k + 1) * n + l + 1)] =
              t2 * (pg.Riem(i, j, k, l) + g(j, k) * g(i, l) - g(i, k) * g(j, l));
  return out;
}

std::vector<double> cone_nabla_J_closed_form(const ConeBundle& c, std::span<const double> p,
                                             std::span<const double> a) {
  const int m = c.base.chart.dim();
  const int n = m + 1;
  const double t = p[0];
  auto x = p.subspan(1);
  auto pg = geometry_at(c.base.chart, x);
  std::vector<double> X(a.begin() + 1, a.end());
  auto phi = eval_field(c.base.phi, x);
  auto xi = eval_field(c.base.xi, x);
  auto eta = eval_field(c.base.eta, x);
  auto nabla_eta = pg.nabla_oneform(X, eval_field_jets(c.base.eta, x));
  auto nabla_xi = pg.nabla_vector(X, eval_field_jets(c.base.xi, x));
  auto nabla_phi = pg.nabla_endomorphism(X, eval_field_jets(c.base.phi, x));
  auto Xlow = pg.lower(X);
  std::vector<double> out(sz(n * n), 0.0);
  for (int i = 0; i < m; ++i) {
    double phiX = 0;
    for (int k = 0; k < m; ++k) phiX += phi[sz(i * m + k)] * X[sz(k)];
    out[sz((i + 1) * n)] = -(nabla_xi[sz(i)] + phiX) / t;
  }
  for (int j = 0; j < m; ++j) {
    double g_x_phij = 0;
    for (int l = 0; l < m; ++l) g_x_phij += Xlow[sz(l)] * phi[sz(l * m + j)];
    out[sz(j + 1)] = t * (nabla_eta[sz(j)] - g_x_phij);
    for (int i = 0; i < m; ++i)
      out[sz((i + 1) * n + j + 1)] = nabla_phi[sz(i * m + j)] - Xlow[sz(j)] * xi[sz(i)] + eta[sz(j)] * X[sz(i)];
  }
  return out;
}

std::vector<IdentityReport> cone_oracle_checks(const ConeBundle& c, const SampleSet& samples, double tol) {
  const char* tags[] = {"cone.christoffel", "cone.nabla_j",  "cone.curvature", "cone.r_dt_x_jdt", "cone.r_dt_x_jy",
                        "cone.r_xy_jdt",    "cone.r_xy_jz",  "cone.item1",     "cone.item2",      "cone.item3"};
  std::vector<IdentityReport> reps;
  for (const char* t : tags) {
    IdentityReport r;
    r.tag = t;
    r.tolerance = tol;
    reps.push_back(r);
  }
  auto &r_gam = reps[0], &r_nj = reps[1], &r_curv = reps[2], &r_a = reps[3], &r_b = reps[4], &r_c = reps[5],
       &r_d = reps[6], &r_i1 = reps[7], &r_i2 = reps[8], &r_i3 = reps[9];

  const int m = c.base.chart.dim();
  const int n = m + 1;
  for (std::size_t k = 0; k < samples.points.size(); ++k) {
    const Point& p = samples.points[k];
    const double t = p[0];
    auto x = std::span<const double>(p).subspan(1);
    auto cg = geometry_at(c.cone.chart, p);
    auto bg = geometry_at(c.base.chart, x);
    auto base = structure_point(c.base, bg);
    auto Jj = eval_field_jets(c.cone.J, p);
    auto J = eval_field(c.cone.J, p);
    auto Jv = [&](const std::vector<double>& v) { return matvec(J, v, n); };

    Witness pw;
    pw.point = p;
    r_gam.record(max_diff(cg.gamma, cone_christoffel_closed_form(c, p)), pw);
    r_curv.record(max_diff(cg.riem, cone_curvature_closed_form(c, p)), pw);

    const auto& vs = samples.vectors[k];
    for (const auto& a : vs) {
      Witness w{p, {a}, {}};
      r_nj.record(max_diff(cg.nabla_endomorphism(a, Jj), cone_nabla_J_closed_form(c, p, a)), w);
    }

    std::vector<double> dt(sz(n), 0.0);
    dt[0] = 1.0;
    const auto Jdt = Jv(dt);
    const std::vector<double> zero(sz(n), 0.0);
    for (std::size_t a = 0; a + 3 < vs.size(); a += 4) {
      std::vector<double> X(vs[a].begin() + 1, vs[a].end()), Y(vs[a + 1].begin() + 1, vs[a + 1].end()),
          Z(vs[a + 2].begin() + 1, vs[a + 2].end()), W(vs[a + 3].begin() + 1, vs[a + 3].end());
      auto LX = lift(X), LY = lift(Y), LZ = lift(Z), LW = lift(W);
      Witness w{p, {LX, LY, LZ, LW}, {}};

      r_a.record(max_diff(cg.R_op(dt, LX, Jdt), zero), w);
      r_b.record(max_diff(cg.R_op(dt, LX, Jv(LY)), zero), w);

      auto Rxy_xi = bg.R_op(X, Y, base.xi);
      const double ex = base.Eta(X), ey = base.Eta(Y);
      auto v_c = combo({{-1.0 / t, &Rxy_xi}, {ey / t, &X}, {-ex / t, &Y}});
      auto lhs_c = cg.R_op(LX, LY, Jdt);
      r_c.record(max_diff(lhs_c, lift(v_c)), w);

      auto phiZ = base.Phi(Z), phiW = base.Phi(W);
      auto Rxy_phiz = bg.R_op(X, Y, phiZ);
      const double gy_pz = base.inner(Y, phiZ), gx_pz = base.inner(X, phiZ);
      auto v_d = combo({{1.0, &Rxy_phiz}, {-gy_pz, &X}, {gx_pz, &Y}});
      auto lhs_d = cg.R_op(LX, LY, Jv(LZ));
      r_d.record(max_diff(lhs_d, lift(v_d)), w);

      const double gx_pw = base.inner(X, phiW), gy_pw = base.inner(Y, phiW);
      double item1 = cg.inner(lhs_c, Jv(LW));
      double pred1 = -t * (base.inner(Rxy_xi, phiW) - ey * gx_pw + ex * gy_pw);
      r_i1.record(std::abs(item1 - pred1), w);

      double item2 = cg.inner(lhs_d, Jdt);
      double pred2 = -t * (base.Eta(Rxy_phiz) - ex * gy_pz + ey * gx_pz);
      r_i2.record(std::abs(item2 - pred2), w);

      double item3 = cg.inner(lhs_d, Jv(LW));
      double pred3 = t * t * (base.inner(Rxy_phiz, phiW) - gy_pz * gx_pw + gx_pz * gy_pw);
      r_i3.record(std::abs(item3 - pred3), w);
    }
  }
  return reps;
}

}  // namespace curvlab
