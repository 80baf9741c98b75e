#include "curvlab/structures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvlab {

namespace {

std::size_t sz(int x) { return static_cast<std::size_t>(x); }

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Rational max_abs(const Vec<Rational>& v) {
  Rational m = 0;
  for (const auto& x : v) m = std::max(m, abs_value(x));
  return m;
}

void require(const Chart& chart, const TensorField& f, Valence v, const char* what) {
  if (f.valence != v) throw std::invalid_argument(std::string(what) + " has the wrong valence");
  check_shape(chart, f);
}

IdentityReport make(std::string tag, double tol) {
  IdentityReport r;
  r.tag = std::move(tag);
  r.tolerance = tol;
  return r;
}

Witness chart_witness(const Point& p, std::initializer_list<const std::vector<double>*> vs) {
  Witness w;
  w.point = p;
  for (const auto* v : vs) w.vectors.push_back(*v);
  return w;
}

Witness frame_witness(const FrameStructure& s, std::initializer_list<int> idx) {
  Witness w;
  for (int i : idx) w.frame_labels.push_back(s.label(i));
  return w;
}

IdentityReport max_of(std::string tag, const std::vector<IdentityReport>& parts, double tol) {
  IdentityReport r = make(std::move(tag), tol);
  for (const auto& p : parts) {
    if (p.exact) {
      r.samples += p.samples - 1;
      r.record_exact(*p.exact, *p.witness);
    } else if (p.witness) {
      r.samples += p.samples - 1;
      r.record(p.residual, *p.witness);
    }
  }
  return r;
}

/// phi^2 + I - xi (x) eta, row-major.
template <class S>
Vec<S> phi_squared_defect(const StructurePoint<S>& sp) {
  const int n = sp.n;
  Vec<S> m = matmul(sp.phi, sp.phi, n);
  for (int i = 0; i < n; ++i) {
    m[sz(i * n + i)] += S(1);
    for (int j = 0; j < n; ++j) m[sz(i * n + j)] -= sp.xi[sz(i)] * sp.eta[sz(j)];
  }
  return m;
}

template <class S>
Vec<S> eta_phi(const StructurePoint<S>& sp) {
  const int n = sp.n;
  Vec<S> out(sz(n), S(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out[sz(j)] += sp.eta[sz(i)] * sp.phi[sz(i * n + j)];
  return out;
}

Vec<double> add_scaled(Vec<double> a, const Vec<double>& b, double s) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

Vec<Rational> add_scaled(Vec<Rational> a, const Vec<Rational>& b, const Rational& s) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

/// (nabla_X phi) Y given as a matrix applied to Y.
Vec<double> apply(const std::vector<double>& m, const std::vector<double>& y, int n) { return matvec(m, y, n); }

}  // namespace

AlmostContactStructure make_contact(std::string name, std::vector<std::string> coords, std::vector<Interval> domain,
                                    const std::vector<std::string>& metric, const std::vector<std::string>& phi,
                                    const std::vector<std::string>& xi, const std::vector<std::string>& eta) {
  AlmostContactStructure s;
  s.name = name;
  s.chart.name = std::move(name);
  s.chart.coords = std::move(coords);
  s.chart.domain = domain.empty() ? std::vector<Interval>(s.chart.coords.size()) : std::move(domain);
  s.chart.metric = metric_from_rows(metric, s.chart.coords);
  s.phi = {Valence::Endomorphism, ComponentField(parse_all(phi, s.chart.coords))};
  s.xi = {Valence::Vector, ComponentField(parse_all(xi, s.chart.coords))};
  s.eta = {Valence::OneForm, ComponentField(parse_all(eta, s.chart.coords))};
  s.check_shapes();
  return s;
}

AlmostHermitianStructure make_hermitian(std::string name, std::vector<std::string> coords,
                                        std::vector<Interval> domain, const std::vector<std::string>& metric,
                                        const std::vector<std::string>& J) {
  AlmostHermitianStructure s;
  s.name = name;
  s.chart.name = std::move(name);
  s.chart.coords = std::move(coords);
  s.chart.domain = domain.empty() ? std::vector<Interval>(s.chart.coords.size()) : std::move(domain);
  s.chart.metric = metric_from_rows(metric, s.chart.coords);
  s.J = {Valence::Endomorphism, ComponentField(parse_all(J, s.chart.coords))};
  s.check_shapes();
  return s;
}

void AlmostContactStructure::check_shapes() const {
  require(chart, phi, Valence::Endomorphism, "phi");
  require(chart, xi, Valence::Vector, "xi");
  require(chart, eta, Valence::OneForm, "eta");
}

void AlmostHermitianStructure::check_shapes() const {
  require(chart, J, Valence::Endomorphism, "J");
  if (chart.dim() % 2 != 0) throw std::invalid_argument("an almost Hermitian structure needs an even dimension");
}

StructurePoint<double> structure_point(const AlmostContactStructure& s, const PointGeometry& pg) {
  StructurePoint<double> sp;
  sp.n = pg.n;
  sp.g = pg.g;
  sp.riem = pg.riem;
  sp.phi = eval_field(s.phi, pg.p);
  sp.xi = eval_field(s.xi, pg.p);
  sp.eta = eval_field(s.eta, pg.p);
  return sp;
}

StructurePoint<double> structure_point(const AlmostHermitianStructure& s, const PointGeometry& pg) {
  StructurePoint<double> sp;
  sp.n = pg.n;
  sp.g = pg.g;
  sp.riem = pg.riem;
  sp.phi = eval_field(s.J, pg.p);
  return sp;
}

std::vector<IdentityReport> validate(const AlmostContactStructure& s, const SampleSet& samples, double tol) {
  s.check_shapes();
  const int n = s.chart.dim();
  auto r_eta_xi = make("eta_xi", tol), r_phi_xi = make("phi_xi", tol), r_eta_phi = make("eta_phi", tol),
       r_phi2 = make("phi_squared", tol), r_metric = make("metric_compatible", tol);
  for (std::size_t k = 0; k < samples.points.size(); ++k) {
    const Point& p = samples.points[k];
    StructurePoint<double> sp;
    sp.n = n;
    sp.g = s.chart.metric.values(p);
    sp.phi = eval_field(s.phi, p);
    sp.xi = eval_field(s.xi, p);
    sp.eta = eval_field(s.eta, p);
    Witness w = chart_witness(p, {});
    r_eta_xi.record(std::abs(sp.Eta(sp.xi) - 1.0), w);
    r_phi_xi.record(max_abs(sp.Phi(sp.xi)), w);
    r_eta_phi.record(max_abs(eta_phi(sp)), w);
    r_phi2.record(max_abs(phi_squared_defect(sp)), w);
    const auto& vs = samples.vectors[k];
    for (std::size_t a = 0; a + 1 < vs.size(); a += 2) {
      const auto &x = vs[a], &y = vs[a + 1];
      double d = sp.inner(sp.Phi(x), sp.Phi(y)) - sp.inner(x, y) + sp.Eta(x) * sp.Eta(y);
      r_metric.record(std::abs(d), chart_witness(p, {&x, &y}));
    }
  }
  std::vector<IdentityReport> out{r_eta_xi, r_phi_xi, r_eta_phi, r_phi2, r_metric};
  out.push_back(max_of("compatibility", out, tol));
  return out;
}

std::vector<IdentityReport> validate(const FrameStructure& s) {
  auto sp = s.point();
  const int n = sp.n;
  auto r_eta_xi = make("eta_xi", 0), r_phi_xi = make("phi_xi", 0), r_eta_phi = make("eta_phi", 0),
       r_phi2 = make("phi_squared", 0), r_metric = make("metric_compatible", 0);
  Witness none;
  r_eta_xi.record_exact(sp.Eta(sp.xi) - 1, none);
  r_phi_xi.record_exact(max_abs(sp.Phi(sp.xi)), none);
  r_eta_phi.record_exact(max_abs(eta_phi(sp)), none);
  r_phi2.record_exact(max_abs(phi_squared_defect(sp)), none);
  const auto& f = s.frame;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto x = f.basis(i), y = f.basis(j);
      Rational d = sp.inner(sp.Phi(x), sp.Phi(y)) - sp.inner(x, y) + sp.Eta(x) * sp.Eta(y);
      r_metric.record_exact(d, frame_witness(s, {i, j}));
    }
  }
  std::vector<IdentityReport> out{r_eta_xi, r_phi_xi, r_eta_phi, r_phi2, r_metric};
  out.push_back(max_of("compatibility", out, 0));
  return out;
}

std::vector<IdentityReport> validate(const AlmostHermitianStructure& s, const SampleSet& samples, double tol) {
  s.check_shapes();
  const int n = s.chart.dim();
  auto r_j2 = make("j_squared", tol), r_orth = make("j_orthogonal", tol);
  for (std::size_t k = 0; k < samples.points.size(); ++k) {
    const Point& p = samples.points[k];
    auto g = s.chart.metric.values(p);
    auto J = eval_field(s.J, p);
    auto J2 = matmul(J, J, n);
    for (int i = 0; i < n; ++i) J2[sz(i * n + i)] += 1.0;
    r_j2.record(max_abs(J2), chart_witness(p, {}));
    const auto& vs = samples.vectors[k];
    for (std::size_t a = 0; a + 1 < vs.size(); a += 2) {
      const auto &x = vs[a], &y = vs[a + 1];
      double d = bilinear(g, matvec(J, x, n), matvec(J, y, n), n) - bilinear(g, x, y, n);
      r_orth.record(std::abs(d), chart_witness(p, {&x, &y}));
    }
  }
  std::vector<IdentityReport> out{r_j2, r_orth};
  out.push_back(max_of("compatibility", out, tol));
  return out;
}

const IdentityReport& ClassificationReport::get(std::string_view tag) const {
  for (const auto& c : checks)
    if (c.tag == tag) return c;
  throw std::out_of_range("no check tagged " + std::string(tag));
}

ClassificationReport classify(const AlmostContactStructure& s, const SampleSet& samples, double tol) {
  s.check_shapes();
  const int n = s.chart.dim();
  if (n % 2 == 0) throw std::invalid_argument("an almost contact structure needs an odd dimension");
  ClassificationReport rep;
  rep.n = (n - 1) / 2;
  auto validation = validate(s, samples, tol);
  auto r_cm = make("contact_metric", tol), r_cme = make("contact_metric_engine", tol), r_kill = make("killing_xi", tol),
       r_nxi = make("sasakian_nabla_xi", tol), r_nphi = make("sasakian_nabla_phi", tol),
       r_par = make("parallel_phi", tol), r_ric = make("ric_xi_xi", tol);
  rep.contact_volume_min = INFINITY;
  for (std::size_t k = 0; k < samples.points.size(); ++k) {
    const Point& p = samples.points[k];
    auto pg = geometry_at(s.chart, p);
    auto sp = structure_point(s, pg);
    auto phi_j = eval_field_jets(s.phi, p);
    auto xi_j = eval_field_jets(s.xi, p);
    auto eta_j = eval_field_jets(s.eta, p);
    rep.contact_volume_min = std::min(rep.contact_volume_min, std::abs(contact_volume(s.chart, s.eta, p)));
    double ric = ricci(pg, sp.xi, sp.xi);
    double ric_res = std::abs(ric - 2.0 * rep.n);
    if (!r_ric.witness || ric_res > r_ric.residual) rep.ric_xi_xi = ric;
    r_ric.record(ric_res, chart_witness(p, {}));

    const auto& vs = samples.vectors[k];
    for (std::size_t a = 0; a + 1 < vs.size(); a += 2) {
      const auto &x = vs[a], &y = vs[a + 1];
      Witness w = chart_witness(p, {&x, &y});
      double deta = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) deta += x[sz(i)] * y[sz(j)] * (eta_j[sz(j)].grad(i) - eta_j[sz(i)].grad(j));
      double gxphiy = sp.inner(x, sp.Phi(y));
      r_cm.record(std::abs(gxphiy - 0.5 * deta), w);
      r_cme.record(std::abs(gxphiy - deta), w);

      auto nx_xi = pg.nabla_vector(x, xi_j);
      auto ny_xi = pg.nabla_vector(y, xi_j);
      r_kill.record(std::abs(sp.inner(nx_xi, y) + sp.inner(x, ny_xi)), w);
      r_nxi.record(max_abs(add_scaled(nx_xi, sp.Phi(x), 1.0)), chart_witness(p, {&x}));

      auto nphi = apply(pg.nabla_endomorphism(x, phi_j), y, n);
      r_par.record(max_abs(nphi), w);
      auto d = add_scaled(nphi, sp.xi, -sp.inner(x, y));
      d = add_scaled(d, x, sp.Eta(y));
      r_nphi.record(max_abs(d), w);
    }
  }
  rep.checks.push_back(validation.back());
  for (auto* r : {&r_cm, &r_cme, &r_kill, &r_nxi, &r_nphi, &r_par, &r_ric}) rep.checks.push_back(*r);
  return rep;
}

ClassificationReport classify(const FrameStructure& s) {
  const auto& f = s.frame;
  const int n = f.dim();
  if (n % 2 == 0) throw std::invalid_argument("an almost contact structure needs an odd dimension");
  ClassificationReport rep;
  rep.n = (n - 1) / 2;
  auto sp = s.point();
  auto validation = validate(s);
  auto r_cm = make("contact_metric", 0), r_cme = make("contact_metric_engine", 0), r_kill = make("killing_xi", 0),
       r_nxi = make("sasakian_nabla_xi", 0), r_nphi = make("sasakian_nabla_phi", 0), r_par = make("parallel_phi", 0),
       r_ric = make("ric_xi_xi", 0);

  // left-invariant forms: d eta(X,Y) = -eta([X,Y]) in the engine convention
  for (int i = 0; i < n; ++i) {
    auto x = f.basis(i);
    auto nx_xi = f.nabla(x, s.xi);
    r_nxi.record_exact(max_abs(add_scaled(nx_xi, sp.Phi(x), 1)), frame_witness(s, {i}));
    for (int j = 0; j < n; ++j) {
      auto y = f.basis(j);
      Witness w = frame_witness(s, {i, j});
      Rational deta = -sp.Eta(f.bracket(x, y));
      Rational gxphiy = sp.inner(x, sp.Phi(y));
      r_cm.record_exact(gxphiy - deta / 2, w);
      r_cme.record_exact(gxphiy - deta, w);
      r_kill.record_exact(sp.inner(nx_xi, y) + sp.inner(x, f.nabla(y, s.xi)), w);
      // (nabla_X phi) Y = nabla_X (phi Y) - phi (nabla_X Y)
      auto nphi = add_scaled(f.nabla(x, sp.Phi(y)), sp.Phi(f.nabla(x, y)), -1);
      r_par.record_exact(max_abs(nphi), w);
      auto d = add_scaled(nphi, s.xi, -sp.inner(x, y));
      d = add_scaled(d, x, sp.Eta(y));
      r_nphi.record_exact(max_abs(d), w);
    }
  }
  // Ric(xi,xi) = g^{ab} R(E_a, xi, E_b, xi)
  auto ginv = inverse(f.metric(), n);
  Rational ric = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Rational& gab = ginv[sz(a * n + b)];
      if (gab != 0) ric += gab * sp.R(f.basis(a), s.xi, f.basis(b), s.xi);
    }
  rep.ric_xi_xi = to_double(ric);
  r_ric.record_exact(ric - 2 * rep.n, Witness{});

  // (d eta)^n wedge eta on the frame, engine d convention, same normalisation as the chart engine
  {
    std::vector<int> perm(sz(n));
    for (int i = 0; i < n; ++i) perm[sz(i)] = i;
    Rational total = 0;
    auto w = [&](int i, int j) { return -sp.Eta(f.bracket(f.basis(i), f.basis(j))); };
    do {
      int inv = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) inv += perm[sz(a)] > perm[sz(b)];
      Rational term = s.eta[sz(perm[0])];
      for (int k = 1; k + 1 < n && term != 0; k += 2) term *= w(perm[sz(k)], perm[sz(k + 1)]);
      total += inv % 2 ? -term : term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int k = 0; k < rep.n; ++k) total /= 2;
    rep.contact_volume_min = to_double(abs_value(total));
  }

  rep.checks.push_back(validation.back());
  for (auto* r : {&r_cm, &r_cme, &r_kill, &r_nxi, &r_nphi, &r_par, &r_ric}) rep.checks.push_back(*r);
  return rep;
}

std::vector<double> h_tensor(const AlmostContactStructure& s, std::span<const double> p) {
  const int n = s.chart.dim();
  auto phi = eval_field_jets(s.phi, p);
  auto xi = eval_field_jets(s.xi, p);
  std::vector<double> h(sz(n * n), 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double v = 0;
      for (int c = 0; c < n; ++c) {
        v += xi[sz(c)].value() * phi[sz(a * n + b)].grad(c);
        v -= phi[sz(c * n + b)].value() * xi[sz(a)].grad(c);
        v += phi[sz(a * n + c)].value() * xi[sz(c)].grad(b);
      }
      h[sz(a * n + b)] = 0.5 * v;
    }
  return h;
}

IdentityReport kappa_mu(const AlmostContactStructure& s, const SampleSet& samples, double kappa, double mu,
                        double tol) {
  s.check_shapes();
  const int n = s.chart.dim();
  auto r = make("kappa_mu", tol);
  for (std::size_t k = 0; k < samples.points.size(); ++k) {
    const Point& p = samples.points[k];
    auto pg = geometry_at(s.chart, p);
    auto sp = structure_point(s, pg);
    auto h = h_tensor(s, p);
    const auto& vs = samples.vectors[k];
    for (std::size_t a = 0; a + 1 < vs.size(); a += 2) {
      const auto &x = vs[a], &y = vs[a + 1];
      auto d = pg.R_op(x, y, sp.xi);
      const double ex = sp.Eta(x), ey = sp.Eta(y);
      d = add_scaled(d, x, -kappa * ey);
      d = add_scaled(d, y, kappa * ex);
      d = add_scaled(d, matvec(h, x, n), -mu * ey);
      d = add_scaled(d, matvec(h, y, n), mu * ex);
      r.record(max_abs(d), chart_witness(p, {&x, &y}));
    }
  }
  return r;
}

IdentityReport kappa_mu(const FrameStructure& s, const Rational& kappa, const Rational& mu) {
  const auto& f = s.frame;
  const int n = f.dim();
  auto sp = s.point();
  auto r = make("kappa_mu", 0);
  // h X = (1/2)([xi, phi X] - phi [xi, X])
  auto h = [&](const Vec<Rational>& x) {
    auto v = add_scaled(f.bracket(s.xi, sp.Phi(x)), sp.Phi(f.bracket(s.xi, x)), -1);
    for (auto& c : v) c /= 2;
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto x = f.basis(i), y = f.basis(j);
      auto d = f.R_op(x, y, s.xi);
      const Rational ex = sp.Eta(x), ey = sp.Eta(y);
      d = add_scaled(d, x, -kappa * ey);
      d = add_scaled(d, y, kappa * ex);
      d = add_scaled(d, h(x), -mu * ey);
      d = add_scaled(d, h(y), mu * ex);
      r.record_exact(max_abs(d), frame_witness(s, {i, j}));
    }
  return r;
}

}  // namespace curvlab
