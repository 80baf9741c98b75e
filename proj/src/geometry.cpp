#include "curvlab/geometry.hpp"

#include "curvlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace curvlab {

namespace {

std::size_t sz(int x) { return static_cast<std::size_t>(x); }

}  // namespace

PointGeometry geometry_at(const Chart& chart, std::span<const double> p) {
  const int n = chart.dim();
  if (static_cast<int>(p.size()) != n) throw std::invalid_argument("point dimension mismatch");
  PointGeometry pg;
  pg.n = n;
  pg.p.assign(p.begin(), p.end());
  auto gj = chart.metric.jets(p);
  if (static_cast<int>(gj.size()) != n * n) throw std::invalid_argument("metric has wrong component count");

  const std::size_t n2 = sz(n * n);
  const std::size_t n3 = n2 * sz(n);
  pg.g.resize(n2);
  pg.dg.assign(n3, 0.0);
  std::vector<double> d2g(n3 * sz(n), 0.0);  // [m][i][a][b] = d_m d_i g_ab
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Jet& j = gj[sz(a * n + b)];
      pg.g[sz(a * n + b)] = j.value();
      for (int m = 0; m < n; ++m) {
        pg.dg[pg.idx3(m, a, b)] = j.grad(m);
        for (int i = 0; i < n; ++i) d2g[sz(((m * n + i) * n + a) * n + b)] = j.hess(m, i);
      }
    }
  }
  pg.ginv = inverse(pg.g, n);

  auto g = [&](int a, int b) { return pg.g[sz(a * n + b)]; };
  auto gi = [&](int a, int b) { return pg.ginv[sz(a * n + b)]; };
  auto dg = [&](int m, int a, int b) { return pg.dg[pg.idx3(m, a, b)]; };
  auto ddg = [&](int m, int i, int a, int b) { return d2g[sz(((m * n + i) * n + a) * n + b)]; };

  // first-kind symbols S_lij = d_i g_jl + d_j g_il - d_l g_ij
  std::vector<double> S(n3);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) S[pg.idx3(l, i, j)] = dg(i, j, l) + dg(j, i, l) - dg(l, i, j);
    }
  }
  pg.gamma.assign(n3, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += gi(k, l) * S[pg.idx3(l, i, j)];
        pg.gamma[pg.idx3(k, i, j)] = 0.5 * s;
      }
    }
  }

  // d_m g^kl = -g^ka d_m g_ab g^bl
  std::vector<double> dginv(n3, 0.0);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) s += gi(k, a) * dg(m, a, b) * gi(b, l);
        }
        dginv[pg.idx3(m, k, l)] = -s;
      }
    }
  }

  pg.dgamma.assign(n3 * sz(n), 0.0);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double s = 0;
          for (int l = 0; l < n; ++l) {
            const double dS = ddg(m, i, j, l) + ddg(m, j, i, l) - ddg(m, l, i, j);
            s += dginv[pg.idx3(m, k, l)] * S[pg.idx3(l, i, j)] + gi(k, l) * dS;
          }
          pg.dgamma[sz(((m * n + k) * n + i) * n + j)] = 0.5 * s;
        }
      }
    }
  }

  auto Gm = [&](int k, int i, int j) { return pg.gamma[pg.idx3(k, i, j)]; };
  auto dG = [&](int m, int k, int i, int j) { return pg.dgamma[sz(((m * n + k) * n + i) * n + j)]; };

  // R^m_ijk = d_i Gamma^m_jk - d_j Gamma^m_ik + Gamma^m_il Gamma^l_jk - Gamma^m_jl Gamma^l_ik
  pg.rup.assign(n3 * sz(n), 0.0);
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          double s = dG(i, m, j, k) - dG(j, m, i, k);
          for (int l = 0; l < n; ++l) s += Gm(m, i, l) * Gm(l, j, k) - Gm(m, j, l) * Gm(l, i, k);
          pg.rup[sz(((m * n + i) * n + j) * n + k)] = s;
        }
      }
    }
  }
  pg.riem.assign(n3 * sz(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += g(m, l) * pg.rup[sz(((m * n + i) * n + j) * n + k)];
          pg.riem[sz(((i * n + j) * n + k) * n + l)] = -s;
        }
      }
    }
  }
  return pg;
}

double PointGeometry::inner(std::span<const double> x, std::span<const double> y) const {
  double s = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += x[sz(i)] * g[sz(i * n + j)] * y[sz(j)];
  }
  return s;
}

std::vector<double> PointGeometry::lower(std::span<const double> v) const {
  std::vector<double> out(sz(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[sz(i)] += g[sz(i * n + j)] * v[sz(j)];
  }
  return out;
}

double PointGeometry::R(std::span<const double> x, std::span<const double> y, std::span<const double> z,
                        std::span<const double> w) const {
  double s = 0;
  for (int i = 0; i < n; ++i) {
    if (x[sz(i)] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double xy = x[sz(i)] * y[sz(j)];
      if (xy == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        const double xyz = xy * z[sz(k)];
        if (xyz == 0.0) continue;
        const double* row = &riem[sz(((i * n + j) * n + k) * n)];
        for (int l = 0; l < n; ++l) s += xyz * row[l] * w[sz(l)];
      }
    }
  }
  return s;
}

std::vector<double> PointGeometry::R_op(std::span<const double> x, std::span<const double> y,
                                        std::span<const double> z) const {
  std::vector<double> out(sz(n), 0.0);
  for (int m = 0; m < n; ++m) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) s += rup[sz(((m * n + i) * n + j) * n + k)] * x[sz(i)] * y[sz(j)] * z[sz(k)];
      }
    }
    out[sz(m)] = s;
  }
  return out;
}

std::vector<double> PointGeometry::nabla_vector(std::span<const double> x, std::span<const Jet> y) const {
  std::vector<double> out(sz(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      double t = y[sz(k)].grad(i);
      for (int j = 0; j < n; ++j) t += Gamma(k, i, j) * y[sz(j)].value();
      s += x[sz(i)] * t;
    }
    out[sz(k)] = s;
  }
  return out;
}

std::vector<double> PointGeometry::nabla_oneform(std::span<const double> x, std::span<const Jet> eta) const {
  std::vector<double> out(sz(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      double t = eta[sz(j)].grad(i);
      for (int k = 0; k < n; ++k) t -= Gamma(k, i, j) * eta[sz(k)].value();
      s += x[sz(i)] * t;
    }
    out[sz(j)] = s;
  }
  return out;
}

std::vector<double> PointGeometry::nabla_endomorphism(std::span<const double> x, std::span<const Jet> phi) const {
  std::vector<double> out(sz(n * n), 0.0);
  auto ph = [&](int a, int b) { return phi[sz(a * n + b)].value(); };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double s = 0;
      for (int c = 0; c < n; ++c) {
        if (x[sz(c)] == 0.0) continue;
        double t = phi[sz(a * n + b)].grad(c);
        for (int d = 0; d < n; ++d) t += Gamma(a, c, d) * ph(d, b) - Gamma(d, c, b) * ph(a, d);
        s += x[sz(c)] * t;
      }
      out[sz(a * n + b)] = s;
    }
  }
  return out;
}

ConnectionAtPoint christoffel(const Chart& chart, std::span<const double> p) {
  auto pg = geometry_at(chart, p);
  return {pg.n, std::move(pg.gamma)};
}

CurvatureAtPoint curvature(const Chart& chart, std::span<const double> p) {
  auto pg = geometry_at(chart, p);
  return {pg.n, std::move(pg.riem)};
}

std::vector<double> covariant_derivative(const Chart& chart, const TensorField& f, std::span<const double> p,
                                         std::span<const double> x) {
  check_shape(chart, f);
  auto pg = geometry_at(chart, p);
  auto jets = eval_field_jets(f, p);
  switch (f.valence) {
    case Valence::Vector: return pg.nabla_vector(x, jets);
    case Valence::OneForm: return pg.nabla_oneform(x, jets);
    case Valence::Endomorphism: return pg.nabla_endomorphism(x, jets);
  }
  throw std::invalid_argument("unsupported valence");
}

double lie_derivative_metric(const Chart& chart, const TensorField& xi, std::span<const double> p,
                             std::span<const double> x, std::span<const double> y) {
  auto pg = geometry_at(chart, p);
  auto jets = eval_field_jets(xi, p);
  auto nx = pg.nabla_vector(x, jets);
  auto ny = pg.nabla_vector(y, jets);
  return pg.inner(nx, y) + pg.inner(x, ny);
}

double exterior_d_oneform(const Chart& chart, const TensorField& eta, std::span<const double> p,
                          std::span<const double> x, std::span<const double> y) {
  const int n = chart.dim();
  auto e = eval_field_jets(eta, p);
  double s = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += x[sz(i)] * y[sz(j)] * (e[sz(j)].grad(i) - e[sz(i)].grad(j));
  }
  return s;
}

double contact_volume(const Chart& chart, const TensorField& eta, std::span<const double> p) {
  const int n = chart.dim();
  if (n % 2 == 0) throw std::invalid_argument("contact volume needs an odd dimension");
  auto e = eval_field_jets(eta, p);
  auto w = [&](int i, int j) { return e[sz(j)].grad(i) - e[sz(i)].grad(j); };
  std::vector<int> perm(sz(n));
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0;
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) inversions += perm[sz(a)] > perm[sz(b)];
    }
    double term = e[sz(perm[0])].value();
    for (int k = 1; k + 1 < n; k += 2) term *= w(perm[sz(k)], perm[sz(k + 1)]);
    total += (inversions % 2 ? -term : term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / std::pow(2.0, (n - 1) / 2);
}

std::vector<std::vector<double>> orthonormal_frame(const PointGeometry& pg) {
  const int n = pg.n;
  std::vector<std::vector<double>> frame;
  for (int c = 0; c < n; ++c) {
    std::vector<double> v(sz(n), 0.0);
    v[sz(c)] = 1.0;
    for (const auto& e : frame) {
      const double proj = pg.inner(v, e);
      for (int i = 0; i < n; ++i) v[sz(i)] -= proj * e[sz(i)];
    }
    const double norm2 = pg.inner(v, v);
    if (!(norm2 > 1e-14)) throw SingularMatrix("Gram-Schmidt breakdown");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c2 : v) c2 *= inv;
    frame.push_back(std::move(v));
  }
  return frame;
}

double ricci(const PointGeometry& pg, std::span<const double> x, std::span<const double> y) {
  double s = 0;
  for (const auto& e : orthonormal_frame(pg)) s += pg.R(e, x, e, y);
  return s;
}

double ricci(const Chart& chart, std::span<const double> p, std::span<const double> x, std::span<const double> y) {
  return ricci(geometry_at(chart, p), x, y);
}

double SymmetryResiduals::max() const { return std::max({antisym_ij, antisym_kl, pair, bianchi}); }

SymmetryResiduals curvature_symmetries(const PointGeometry& pg) {
  const int n = pg.n;
  auto frame = orthonormal_frame(pg);
  std::vector<double> r(sz(n * n * n * n));
  auto at = [n](int a, int b, int c, int d) { return sz(((a * n + b) * n + c) * n + d); };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) r[at(a, b, c, d)] = pg.R(frame[sz(a)], frame[sz(b)], frame[sz(c)], frame[sz(d)]);
      }
    }
  }
  SymmetryResiduals s;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          const double v = r[at(a, b, c, d)];
          s.antisym_ij = std::max(s.antisym_ij, std::abs(v + r[at(b, a, c, d)]));
          s.antisym_kl = std::max(s.antisym_kl, std::abs(v + r[at(a, b, d, c)]));
          s.pair = std::max(s.pair, std::abs(v - r[at(c, d, a, b)]));
          s.bianchi = std::max(s.bianchi, std::abs(v + r[at(b, c, a, d)] + r[at(c, a, b, d)]));
        }
      }
    }
  }
  return s;
}

double metric_compatibility_residual(const PointGeometry& pg) {
  // (nabla_m g)_ij = d_m g_ij - Gamma^k_mi g_kj - Gamma^k_mj g_ik
  const int n = pg.n;
  double worst = 0;
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = pg.dg[pg.idx3(m, i, j)];
        for (int k = 0; k < n; ++k) {
          s -= pg.Gamma(k, m, i) * pg.g[sz(k * n + j)] + pg.Gamma(k, m, j) * pg.g[sz(i * n + k)];
        }
        worst = std::max(worst, std::abs(s));
      }
    }
  }
  return worst;
}

}  // namespace curvlab
