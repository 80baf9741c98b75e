#include "curvlab/submersion.hpp"

#include "curvlab/hypersurface.hpp"
#include "curvlab/identities.hpp"

#include <algorithm>
#include <cmath>

namespace curvlab {

namespace {

std::size_t sz(int x) { return static_cast<std::size_t>(x); }

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// d pi at p as jets ([alpha][a] row-major) plus pi(p).
struct Differential {
  std::vector<Jet> dpi;
  std::vector<double> image;
};

Differential differential(const SubmersionPair& s, std::span<const double> p) {
  const int m = s.total.chart.dim();
  const int k = s.base.chart.dim();
  auto nested = seed_all_nested(p);
  Differential d;
  d.dpi.resize(sz(k * m));
  for (int a = 0; a < k; ++a) {
    auto pj = evaluate<Jet2<Jet>>(s.projection[sz(a)], nested);
    d.image.push_back(primal(pj));
    for (int i = 0; i < m; ++i) {
      Jet j = pj.grad(i);
      j.ensure_size(m);
      d.dpi[sz(a * m + i)] = j;
    }
  }
  return d;
}

std::vector<double> values(const std::vector<Jet>& v) {
  std::vector<double> out;
  for (const auto& j : v) out.push_back(j.value());
  return out;
}

std::vector<Jet> lift_with(const Differential& d, const std::vector<Jet>& eta, std::span<const double> x, int m, int k) {
  if (m != k + 1) throw std::invalid_argument("submersion fibres must be one-dimensional");
  std::vector<Jet> A(sz(m * m)), b(sz(m), Jet::zero(m));
  for (int a = 0; a < k; ++a) {
    for (int i = 0; i < m; ++i) A[sz(a * m + i)] = d.dpi[sz(a * m + i)];
    b[sz(a)].value() = x[sz(a)];
  }
  for (int i = 0; i < m; ++i) A[sz(k * m + i)] = eta[sz(i)];
  auto out = solve(A, b, m);
  for (auto& j : out) j.ensure_size(m);
  return out;
}

}  // namespace

std::vector<Jet> horizontal_lift(const SubmersionPair& s, std::span<const double> p, std::span<const double> x) {
  const int m = s.total.chart.dim(), k = s.base.chart.dim();
  return lift_with(differential(s, p), eval_field_jets(s.total.eta, p), x, m, k);
}

std::vector<IdentityReport> check_submersion_lift(const SubmersionPair& s, const SampleSet& samples, double tol) {
  const char* tags[] = {"lift.dpi_xi",   "lift.dpi_phi",  "lift.connection", "lift.nabla_xi", "lift.bracket",
                        "lift.curvature", "lift.k1",      "lift.k2",         "lift.k3"};
  std::vector<IdentityReport> reps;
  for (const char* t : tags) {
    IdentityReport r;
    r.tag = t;
    r.tolerance = tol;
    reps.push_back(r);
  }
  auto &r_dxi = reps[0], &r_dphi = reps[1], &r_conn = reps[2], &r_nxi = reps[3], &r_br = reps[4], &r_curv = reps[5],
       &r_k1 = reps[6], &r_k2 = reps[7], &r_k3 = reps[8];

  const int m = s.total.chart.dim(), k = s.base.chart.dim();
  for (std::size_t q = 0; q < samples.points.size(); ++q) {
    const Point& p = samples.points[q];
    auto d = differential(s, p);
    auto dpi_v = values(d.dpi);
    auto eta = eval_field_jets(s.total.eta, p);
    auto xi_j = eval_field_jets(s.total.xi, p);
    auto pg = geometry_at(s.total.chart, p);
    auto sp = structure_point(s.total, pg);
    auto bg = geometry_at(s.base.chart, d.image);
    auto J = eval_field(s.base.J, d.image);
    auto push = [&](const std::vector<double>& v) {
      std::vector<double> out(sz(k), 0.0);
      for (int a = 0; a < k; ++a)
        for (int i = 0; i < m; ++i) out[sz(a)] += dpi_v[sz(a * m + i)] * v[sz(i)];
      return out;
    };
    auto lift = [&](const std::vector<double>& x) { return lift_with(d, eta, x, m, k); };
    auto G = [&](const std::vector<double>& x, const std::vector<double>& y) { return bg.inner(x, y); };
    auto Jv = [&](const std::vector<double>& x) { return matvec(J, x, k); };

    Witness pw{p, {}, {}};
    r_dxi.record(max_abs(push(sp.xi)), pw);

    const auto& vs = samples.vectors[q];
    for (std::size_t a = 0; a + 3 < vs.size(); a += 4) {
      Witness w{p, {vs[a], vs[a + 1], vs[a + 2], vs[a + 3]}, {}};
      auto X = push(vs[a]), Y = push(vs[a + 1]), Z = push(vs[a + 2]), W = push(vs[a + 3]);
      auto Xl = lift(X), Yl = lift(Y), Zl = lift(Z), Wl = lift(W);
      auto Xv = values(Xl), Yv = values(Yl), Zv = values(Zl), Wv = values(Wl);

      {
        auto lhs = push(sp.Phi(Xv)), rhs = Jv(X);
        for (int i = 0; i < k; ++i) lhs[sz(i)] -= rhs[sz(i)];
        r_dphi.record(max_abs(lhs), w);
      }

      const double gxjy = G(X, Jv(Y));
      {
        auto lhs = pg.nabla_vector(Xv, Yl);
        // nabla^N_X Y for constant coefficients is Gamma^N(X, Y)
        std::vector<double> nXY(sz(k), 0.0);
        for (int c = 0; c < k; ++c)
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) nXY[sz(c)] += bg.Gamma(c, i, j) * X[sz(i)] * Y[sz(j)];
        auto rhs = values(lift(nXY));
        for (int i = 0; i < m; ++i) lhs[sz(i)] -= rhs[sz(i)] - gxjy * sp.xi[sz(i)];
        r_conn.record(max_abs(lhs), w);
      }
      {
        auto v = pg.nabla_vector(Xv, xi_j);
        auto phx = sp.Phi(Xv);
        for (int i = 0; i < m; ++i) v[sz(i)] += phx[sz(i)];
        r_nxi.record(max_abs(v), w);
      }
      {
        std::vector<double> br(sz(m), 0.0);
        for (int c = 0; c < m; ++c) {
          for (int i = 0; i < m; ++i) br[sz(c)] += Xv[sz(i)] * Yl[sz(c)].grad(i) - Yv[sz(i)] * Xl[sz(c)].grad(i);
          br[sz(c)] += 2.0 * gxjy * sp.xi[sz(c)];
        }
        r_br.record(max_abs(br), w);
      }
      {
        auto g = [&](const std::vector<double>& a, const std::vector<double>& b) { return sp.inner(a, b); };
        auto P = [&](const std::vector<double>& a) { return sp.Phi(a); };
        double lhs = sp.R(Wv, Zv, Xv, Yv);
        double rhs = bg.R(W, Z, X, Y) - 2.0 * g(Xv, P(Yv)) * g(Wv, P(Zv)) + g(Yv, P(Zv)) * g(Wv, P(Xv)) -
                     g(Xv, P(Zv)) * g(Wv, P(Yv));
        r_curv.record(std::abs(lhs - rhs), w);

        r_k1.record(std::abs(identity_residual(Identity::G1, sp, Xv, Yv, Zv, Wv)), w);
        double k2 = sp.R(P(Xv), Yv, Zv, Wv) + sp.R(Xv, P(Yv), Zv, Wv) + sp.R(Xv, Yv, P(Zv), Wv) +
                    sp.R(Xv, Yv, Zv, P(Wv));
        r_k2.record(std::abs(k2), w);
        r_k3.record(std::abs(sp.R(P(Xv), P(Yv), P(Zv), P(Wv)) - sp.R(Xv, Yv, Zv, Wv)), w);
      }
    }
  }
  return reps;
}

SubmersionPair hopf_pair() {
  SubmersionPair s;
  s.name = "hopf_pair";
  s.total = induced_structure(s3_in_c2());
  s.total.name = "hopf_total";
  s.total.chart.name = "hopf_total";
  s.base = make_hermitian("s2_half", {"u", "v"}, {{-4, 4}, {-4, 4}}, {"1/(1 + u^2 + v^2)^2", "0", "0", "1/(1 + u^2 + v^2)^2"},
                          {"0", "-1", "1", "0"});
  s.projection = parse_all(std::vector<std::string>{"tan(chi)*cos(th2 - th1)", "tan(chi)*sin(th2 - th1)"},
                           s.total.chart.coords);
  return s;
}

}  // namespace curvlab
