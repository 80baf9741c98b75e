#include "curvlab/warped.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvlab {

namespace {

std::size_t sz(int x) { return static_cast<std::size_t>(x); }

const std::vector<Expr>& require_exprs(const ComponentField& f, const std::string& what) {
  if (!f.is_expression()) throw std::invalid_argument(what + " must be given by expressions");
  return f.exprs();
}

/// Variable i of an expression over `from` becomes variable offset + i.
std::vector<Expr> shift_vars(const std::vector<std::string>& from, int offset) {
  std::vector<Expr> out;
  for (std::size_t i = 0; i < from.size(); ++i) out.push_back(Expr::variable(offset + static_cast<int>(i), from[i]));
  return out;
}

void require_positive(const Expr& e, const Chart& over, const std::string& what) {
  auto s = sample(over, 20, 1, 0);
  for (const auto& p : s.points) {
    if (!(evaluate<double>(e, p) > 0.0)) throw std::invalid_argument(what + " is not positive at a sampled point");
  }
}

}  // namespace

Chart build_warped(const WarpedSpec& w) {
  const int mb = w.base.dim(), mf = w.fiber.dim(), n = mb + mf;
  const auto& gb = require_exprs(w.base.metric, "base metric");
  const auto& gf = require_exprs(w.fiber.metric, "fiber metric");
  require_positive(w.b, w.base, "warping function");
  auto fvars = shift_vars(w.fiber.coords, mb);
  Expr b2 = pow(w.b, 2);

  Chart c;
  c.name = w.base.name + "_x_" + w.fiber.name;
  c.coords = w.base.coords;
  c.coords.insert(c.coords.end(), w.fiber.coords.begin(), w.fiber.coords.end());
  c.domain = w.base.domain;
  c.domain.insert(c.domain.end(), w.fiber.domain.begin(), w.fiber.domain.end());
  std::vector<Expr> g(sz(n * n), Expr::integer(0));
  for (int i = 0; i < mb; ++i)
    for (int j = 0; j < mb; ++j) g[sz(i * n + j)] = gb[sz(i * mb + j)];
  for (int i = 0; i < mf; ++i)
    for (int j = 0; j < mf; ++j) g[sz((mb + i) * n + mb + j)] = b2 * substitute(gf[sz(i * mf + j)], fvars);
  c.metric = ComponentField(std::move(g));
  return c;
}

std::vector<double> warped_christoffel_oracle(const WarpedSpec& w, std::span<const double> p) {
  const int mb = w.base.dim(), mf = w.fiber.dim(), n = mb + mf;
  auto pb = p.subspan(0, sz(mb));
  auto pf = p.subspan(sz(mb));
  auto B = geometry_at(w.base, pb);
  auto F = geometry_at(w.fiber, pf);
  Jet b = evaluate<Jet>(w.b, seed_all(pb));
  const double bv = b.value();
  std::vector<double> dlnb(sz(mb));
  for (int a = 0; a < mb; ++a) dlnb[sz(a)] = b.grad(a) / bv;
  std::vector<double> grad_lnb(sz(mb), 0.0);
  for (int a = 0; a < mb; ++a)
    for (int c = 0; c < mb; ++c) grad_lnb[sz(a)] += B.ginv[sz(a * mb + c)] * dlnb[sz(c)];

  std::vector<double> out(sz(n * n * n), 0.0);
  auto at = [n](int k, int i, int j) { return sz((k * n + i) * n + j); };
  for (int k = 0; k < mb; ++k)
    for (int i = 0; i < mb; ++i)
      for (int j = 0; j < mb; ++j) out[at(k, i, j)] = B.Gamma(k, i, j);
  for (int a = 0; a < mb; ++a)
    for (int i = 0; i < mf; ++i) {
      out[at(mb + i, a, mb + i)] = dlnb[sz(a)];
      out[at(mb + i, mb + i, a)] = dlnb[sz(a)];
    }
  for (int i = 0; i < mf; ++i)
    for (int j = 0; j < mf; ++j) {
      for (int a = 0; a < mb; ++a) out[at(a, mb + i, mb + j)] = -bv * bv * F.g[sz(i * mf + j)] * grad_lnb[sz(a)];
      for (int k = 0; k < mf; ++k) out[at(mb + k, mb + i, mb + j)] = F.Gamma(k, i, j);
    }
  return out;
}

RWarpedContact build_r_warped_contact(std::string name, const AlmostHermitianStructure& fiber, const Expr& f,
                                      Interval theta_domain, std::string theta) {
  fiber.check_shapes();
  const int m = fiber.chart.dim(), n = m + 1;
  const auto& gN = require_exprs(fiber.chart.metric, "fiber metric");
  const auto& JN = require_exprs(fiber.J.components, "fiber J");
  if (max_variable_index(f) > 0) throw std::invalid_argument("f must depend on theta only");
  {
    Chart line;
    line.coords = {theta};
    line.domain = {theta_domain};
    line.metric = ComponentField(std::vector<Expr>{Expr::integer(1)});
    require_positive(f, line, "f");
  }
  Expr fz = substitute(f, std::vector<Expr>{Expr::variable(m, theta)});
  Expr f2 = pow(fz, 2);

  AlmostContactStructure s;
  s.name = name;
  s.chart.name = std::move(name);
  s.chart.coords = fiber.chart.coords;
  s.chart.coords.push_back(theta);
  s.chart.domain = fiber.chart.domain;
  s.chart.domain.push_back(theta_domain);
  std::vector<Expr> g(sz(n * n), Expr::integer(0)), phi(sz(n * n), Expr::integer(0));
  std::vector<Expr> xi(sz(n), Expr::integer(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      g[sz(i * n + j)] = f2 * gN[sz(i * m + j)];
      phi[sz(i * n + j)] = JN[sz(i * m + j)];
    }
  g[sz(m * n + m)] = Expr::integer(1);
  xi[sz(m)] = Expr::integer(1);
  s.chart.metric = ComponentField(std::move(g));
  s.phi = {Valence::Endomorphism, ComponentField(std::move(phi))};
  s.xi = {Valence::Vector, ComponentField(xi)};
  s.eta = {Valence::OneForm, ComponentField(xi)};
  s.check_shapes();
  return RWarpedContact{fiber, f, std::move(s)};
}

namespace {

struct FData {
  double f, df, ddf;
};

FData f_at(const Expr& f, double theta) {
  std::vector<double> p{theta};
  Jet j = evaluate<Jet>(f, seed_all(p));
  return {j.value(), j.grad(0), j.hess(0, 0)};
}

}  // namespace

std::vector<double> r_warped_curvature_oracle(const RWarpedContact& r, std::span<const double> p) {
  const int m = r.fiber.chart.dim(), n = m + 1;
  auto N = geometry_at(r.fiber.chart, p.subspan(0, sz(m)));
  auto [f, df, ddf] = f_at(r.f, p[sz(m)]);
  auto gb = [&](int a, int b) { return N.g[sz(a * m + b)]; };
  std::vector<double> out(sz(n * n * n * n), 0.0);
  auto at = [n](int a, int b, int c, int d) { return sz(((a * n + b) * n + c) * n + d); };
  const int T = m;
  for (int w = 0; w < m; ++w)
    for (int z = 0; z < m; ++z)
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
          out[at(w, z, x, y)] =
              f * f * (N.Riem(w, z, x, y) + df * df * (gb(x, z) * gb(y, w) - gb(y, z) * gb(x, w)));
  for (int w = 0; w < m; ++w)
    for (int x = 0; x < m; ++x) {
      const double v = -f * ddf * gb(x, w);  // -(f''/f) f^2 g_N
      out[at(w, T, x, T)] = v;
      out[at(T, w, T, x)] = v;
      out[at(w, T, T, x)] = -v;
      out[at(T, w, x, T)] = -v;
    }
  return out;
}

std::vector<double> r_warped_christoffel_oracle(const RWarpedContact& r, std::span<const double> p) {
  const int m = r.fiber.chart.dim(), n = m + 1;
  auto N = geometry_at(r.fiber.chart, p.subspan(0, sz(m)));
  auto [f, df, ddf] = f_at(r.f, p[sz(m)]);
  (void)ddf;
  std::vector<double> out(sz(n * n * n), 0.0);
  auto at = [n](int k, int i, int j) { return sz((k * n + i) * n + j); };
  const int T = m;
  for (int a = 0; a < m; ++a) {
    out[at(a, T, a)] = df / f;
    out[at(a, a, T)] = df / f;
    for (int b = 0; b < m; ++b) {
      out[at(T, a, b)] = -f * df * N.g[sz(a * m + b)];
      for (int c = 0; c < m; ++c) out[at(c, a, b)] = N.Gamma(c, a, b);
    }
  }
  return out;
}

std::vector<double> eq_for_g1(const AlmostHermitianStructure& n, std::span<const double> p, std::span<const double> x,
                              std::span<const double> y, std::span<const double> z) {
  const int m = n.chart.dim();
  auto g = n.chart.metric.values(p);
  auto J = eval_field(n.J, p);
  std::vector<double> X(x.begin(), x.end()), Y(y.begin(), y.end()), Z(z.begin(), z.end());
  auto JX = matvec(J, X, m), JY = matvec(J, Y, m);
  const double a = bilinear(g, JY, Z, m), b = bilinear(g, JX, Z, m), c = bilinear(g, X, Z, m),
               d = bilinear(g, Y, Z, m);
  std::vector<double> out(sz(m));
  for (int i = 0; i < m; ++i)
    out[sz(i)] = a * JX[sz(i)] - b * JY[sz(i)] + c * Y[sz(i)] - d * X[sz(i)];
  return out;
}

IdentityReport eq_for_g1_check(const AlmostHermitianStructure& n, const SampleSet& samples, double tol) {
  IdentityReport r;
  r.tag = "eq_for_g1";
  r.tolerance = tol;
  for (std::size_t k = 0; k < samples.points.size(); ++k) {
    const auto& vs = samples.vectors[k];
    for (std::size_t a = 0; a + 2 < vs.size(); a += 3) {
      auto v = eq_for_g1(n, samples.points[k], vs[a], vs[a + 1], vs[a + 2]);
      double mx = 0;
      for (double c : v) mx = std::max(mx, std::abs(c));
      r.record(mx, Witness{samples.points[k], {vs[a], vs[a + 1], vs[a + 2]}, {}});
    }
  }
  return r;
}

}  // namespace curvlab
