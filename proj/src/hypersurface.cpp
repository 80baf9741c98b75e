#include "curvlab/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace curvlab {

namespace {

std::size_t sz(int x) { return static_cast<std::size_t>(x); }

constexpr double kUnitNormalTol = 1e-9;

/// Remembers the last evaluated point; the four induced fields are read in a row.
class PointCache {
 public:
  explicit PointCache(HypersurfaceSpec spec) : spec_(std::move(spec)) {}

  HypersurfacePoint at(std::span<const double> p) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!valid_ || !std::equal(p.begin(), p.end(), last_p_.begin(), last_p_.end())) {
      last_ = hypersurface_point(spec_, p);
      last_p_.assign(p.begin(), p.end());
      valid_ = true;
    }
    return last_;
  }

 private:
  HypersurfaceSpec spec_;
  std::mutex mu_;
  bool valid_ = false;
  std::vector<double> last_p_;
  HypersurfacePoint last_;
};

Jet sized(Jet j, int m) {
  j.ensure_size(m);
  return j;
}

}  // namespace

HypersurfacePoint hypersurface_point(const HypersurfaceSpec& spec, std::span<const double> p) {
  const auto& amb = spec.ambient;
  const int m = static_cast<int>(spec.coords.size());
  const int n = amb.chart.dim();
  if (static_cast<int>(p.size()) != m) throw std::invalid_argument("point has the wrong dimension");
  if (static_cast<int>(spec.immersion.size()) != n || static_cast<int>(spec.normal.size()) != n) {
    throw std::invalid_argument("immersion and normal need one component per ambient coordinate");
  }
  if (!amb.chart.metric.is_expression() || !amb.J.components.is_expression()) {
    throw std::invalid_argument("hypersurface ambient must be given by expressions");
  }
  const auto& Gx = amb.chart.metric.exprs();
  const auto& Jx = amb.J.components.exprs();

  auto nested = seed_all_nested(p);
  auto seeds = seed_all(p);
  std::vector<Jet> F(sz(n)), N(sz(n));
  std::vector<std::vector<Jet>> P(sz(m), std::vector<Jet>(sz(n)));
  for (int k = 0; k < n; ++k) {
    Jet2<Jet> fk = evaluate<Jet2<Jet>>(spec.immersion[sz(k)], nested);
    F[sz(k)] = sized(fk.value(), m);
    for (int a = 0; a < m; ++a) P[sz(a)][sz(k)] = sized(fk.grad(a), m);
    N[sz(k)] = sized(evaluate<Jet>(spec.normal[sz(k)], seeds), m);
  }
  std::vector<Jet> G(sz(n * n)), J(sz(n * n));
  for (int q = 0; q < n * n; ++q) {
    G[sz(q)] = sized(evaluate<Jet>(Gx[sz(q)], F), m);
    J[sz(q)] = sized(evaluate<Jet>(Jx[sz(q)], F), m);
  }

  HypersurfacePoint hp;
  hp.m = m;
  hp.n = n;
  hp.normal_norm2 = primal(bilinear(G, N, N, n));
  if (std::abs(hp.normal_norm2 - 1.0) > kUnitNormalTol) {
    throw std::invalid_argument("normal of " + spec.name + " is not a unit vector (|N|^2 = " +
                                std::to_string(hp.normal_norm2) + ")");
  }

  Vec<Jet> g(sz(m * m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g[sz(a * m + b)] = sized(bilinear(G, P[sz(a)], P[sz(b)], n), m);

  std::vector<Vec<Jet>> JP(sz(m));
  for (int a = 0; a < m; ++a) JP[sz(a)] = matvec(J, P[sz(a)], n);
  Vec<Jet> xi_amb = matvec(J, N, n);
  for (auto& c : xi_amb) c = -c;

  Vec<Jet> eta(sz(m)), rhs_xi(sz(m)), M(sz(m * m));
  for (int a = 0; a < m; ++a) {
    eta[sz(a)] = sized(bilinear(G, JP[sz(a)], N, n), m);
    rhs_xi[sz(a)] = bilinear(G, xi_amb, P[sz(a)], n);
    for (int b = 0; b < m; ++b) M[sz(a * m + b)] = bilinear(G, P[sz(a)], JP[sz(b)], n);
  }
  hp.xi = solve(g, rhs_xi, m);
  hp.phi = solve(g, M, m, m);
  for (auto& j : hp.xi) j.ensure_size(m);
  for (auto& j : hp.phi) j.ensure_size(m);
  hp.g = g;
  hp.eta = eta;

  // Weingarten map from values only
  std::vector<double> Fv(sz(n));
  for (int k = 0; k < n; ++k) Fv[sz(k)] = F[sz(k)].value();
  auto ag = geometry_at(amb.chart, Fv);
  hp.ambient_g = ag.g;
  hp.ambient_J = eval_field(amb.J, Fv);
  hp.normal.resize(sz(n));
  for (int k = 0; k < n; ++k) hp.normal[sz(k)] = N[sz(k)].value();
  hp.tangents.resize(sz(m * n));
  for (int a = 0; a < m; ++a)
    for (int k = 0; k < n; ++k) hp.tangents[sz(a * n + k)] = P[sz(a)][sz(k)].value();
  hp.nabla_N.assign(sz(m * n), 0.0);
  for (int b = 0; b < m; ++b)
    for (int k = 0; k < n; ++k) {
      double v = N[sz(k)].grad(b);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v += ag.Gamma(k, i, j) * hp.tangents[sz(b * n + i)] * hp.normal[sz(j)];
      hp.nabla_N[sz(b * n + k)] = v;
    }
  std::vector<double> gv(sz(m * m)), rhs(sz(m * m));
  for (int q = 0; q < m * m; ++q) gv[sz(q)] = g[sz(q)].value();
  for (int c = 0; c < m; ++c)
    for (int b = 0; b < m; ++b) {
      double s = 0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          s += hp.ambient_g[sz(k * n + l)] * hp.tangents[sz(c * n + k)] * hp.nabla_N[sz(b * n + l)];
      rhs[sz(c * m + b)] = -s;
    }
  hp.weingarten = solve(gv, rhs, m, m);
  return hp;
}

AlmostContactStructure induced_structure(const HypersurfaceSpec& spec) {
  spec.ambient.check_shapes();
  const int m = static_cast<int>(spec.coords.size());
  auto cache = std::make_shared<PointCache>(spec);
  AlmostContactStructure s;
  s.name = spec.name;
  s.chart.name = spec.name;
  s.chart.coords = spec.coords;
  s.chart.domain = spec.domain;
  s.chart.metric = ComponentField(sz(m * m), [cache](std::span<const double> p) { return cache->at(p).g; });
  s.phi = {Valence::Endomorphism,
           ComponentField(sz(m * m), [cache](std::span<const double> p) { return cache->at(p).phi; })};
  s.xi = {Valence::Vector, ComponentField(sz(m), [cache](std::span<const double> p) { return cache->at(p).xi; })};
  s.eta = {Valence::OneForm, ComponentField(sz(m), [cache](std::span<const double> p) { return cache->at(p).eta; })};
  return s;
}

HypersurfaceReport induce_hypersurface(const HypersurfaceSpec& spec, const SampleSet& samples, double tol) {
  HypersurfaceReport rep;
  rep.induced = induced_structure(spec);
  auto init = [tol](IdentityReport& r, const char* tag) {
    r.tag = tag;
    r.tolerance = tol;
  };
  init(rep.umbilicity, "umbilicity");
  init(rep.second_fundamental, "h_x_xi");
  init(rep.ambient_kaehler, "ambient_kaehler");
  for (std::size_t k = 0; k < samples.points.size(); ++k) {
    const Point& p = samples.points[k];
    auto hp = hypersurface_point(spec, p);
    const int m = hp.m, n = hp.n;
    const auto& A = hp.weingarten;
    double beta = 0;
    for (int a = 0; a < m; ++a) beta += A[sz(a * m + a)];
    beta /= m;
    double umb = 0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) umb = std::max(umb, std::abs(A[sz(a * m + b)] - (a == b ? beta : 0.0)));
    rep.weingarten.push_back(A);
    rep.beta.push_back(beta);
    rep.umbilicity.record(umb, Witness{p, {}, {}});

    std::vector<double> Fv(sz(n));
    for (int q = 0; q < n; ++q) Fv[sz(q)] = evaluate<double>(spec.immersion[sz(q)], p);
    for (int d = 0; d < n; ++d) {
      std::vector<double> e(sz(n), 0.0);
      e[sz(d)] = 1.0;
      for (double v : covariant_derivative(spec.ambient.chart, spec.ambient.J, Fv, e))
        rep.ambient_kaehler.record(std::abs(v), Witness{p, {e}, {}});
    }

    std::vector<double> eta(sz(m));
    for (int a = 0; a < m; ++a) eta[sz(a)] = hp.eta[sz(a)].value();
    for (const auto& X : samples.vectors[k]) {
      std::vector<double> nX(sz(n), 0.0);
      for (int b = 0; b < m; ++b)
        for (int q = 0; q < n; ++q) nX[sz(q)] += X[sz(b)] * hp.nabla_N[sz(b * n + q)];
      auto JnX = matvec(hp.ambient_J, nX, n);
      for (auto& c : JnX) c = -c;
      double h = bilinear(hp.ambient_g, JnX, hp.normal, n);
      auto AX = matvec(A, X, m);
      double etaAX = 0;
      for (int a = 0; a < m; ++a) etaAX += eta[sz(a)] * AX[sz(a)];
      rep.second_fundamental.record(std::abs(h - etaAX), Witness{p, {X}, {}});
    }
  }
  rep.umbilical = rep.umbilicity.verdict();
  return rep;
}

AlmostHermitianStructure flat_complex_space(int n) {
  const int d = 2 * n;
  std::vector<std::string> coords;
  for (int i = 1; i <= n; ++i) {
    coords.push_back("x" + std::to_string(i));
    coords.push_back("y" + std::to_string(i));
  }
  std::vector<std::string> g(sz(d * d), "0"), J(sz(d * d), "0");
  for (int i = 0; i < d; ++i) g[sz(i * d + i)] = "1";
  for (int i = 0; i < n; ++i) {
    // J d_x = d_y, J d_y = -d_x
    J[sz((2 * i + 1) * d + 2 * i)] = "1";
    J[sz((2 * i) * d + 2 * i + 1)] = "-1";
  }
  return make_hermitian("c" + std::to_string(n), coords, {}, g, J);
}

namespace {

HypersurfaceSpec spec_from_texts(std::string name, AlmostHermitianStructure ambient, std::vector<std::string> coords,
                                 std::vector<Interval> domain, const std::vector<std::string>& immersion,
                                 const std::vector<std::string>& normal) {
  HypersurfaceSpec s;
  s.name = std::move(name);
  s.ambient = std::move(ambient);
  s.coords = std::move(coords);
  s.domain = std::move(domain);
  s.immersion = parse_all(immersion, s.coords);
  s.normal = parse_all(normal, s.coords);
  return s;
}

}  // namespace

HypersurfaceSpec s5_in_c3() {
  std::vector<std::string> F{"cos(chi)*cos(th1)",          "cos(chi)*sin(th1)",
                             "sin(chi)*cos(psi)*cos(th2)", "sin(chi)*cos(psi)*sin(th2)",
                             "sin(chi)*sin(psi)*cos(th3)", "sin(chi)*sin(psi)*sin(th3)"};
  return spec_from_texts("s5_in_c3", flat_complex_space(3), {"chi", "psi", "th1", "th2", "th3"},
                         {{0.25, 1.3}, {0.25, 1.3}, {-3, 3}, {-3, 3}, {-3, 3}}, F, F);
}

HypersurfaceSpec ellipsoid_in_c3() {
  std::vector<std::string> F{"cos(chi)*cos(th1)/sqrt(2)",  "cos(chi)*sin(th1)",
                             "sin(chi)*cos(psi)*cos(th2)", "sin(chi)*cos(psi)*sin(th2)",
                             "sin(chi)*sin(psi)*cos(th3)", "sin(chi)*sin(psi)*sin(th3)"};
  // gradient of 2 x1^2 + ... is proportional to (2 x1, y1, x2, y2, x3, y3)
  const std::string norm = "sqrt(2*cos(chi)^2*cos(th1)^2 + cos(chi)^2*sin(th1)^2 + sin(chi)^2)";
  std::vector<std::string> N{"sqrt(2)*cos(chi)*cos(th1)/" + norm, "cos(chi)*sin(th1)/" + norm};
  for (std::size_t k = 2; k < F.size(); ++k) N.push_back(F[k] + "/" + norm);
  return spec_from_texts("ellipsoid_in_c3", flat_complex_space(3), {"chi", "psi", "th1", "th2", "th3"},
                         {{0.25, 1.3}, {0.25, 1.3}, {-3, 3}, {-3, 3}, {-3, 3}}, F, N);
}

HypersurfaceSpec s3_in_c2() {
  std::vector<std::string> F{"cos(chi)*cos(th1)", "cos(chi)*sin(th1)", "sin(chi)*cos(th2)", "sin(chi)*sin(th2)"};
  return spec_from_texts("s3_in_c2", flat_complex_space(2), {"chi", "th1", "th2"}, {{0.1, 1.4}, {-3, 3}, {-3, 3}},
                         F, F);
}

}  // namespace curvlab
