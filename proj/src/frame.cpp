#include "curvlab/frame.hpp"

namespace curvlab {

namespace {

std::size_t sz(int x) { return static_cast<std::size_t>(x); }

}  // namespace

FrameGeometry::FrameGeometry(int dim, Vec<Rational> c, Vec<Rational> g)
    : n_(dim), c_(std::move(c)), g_(std::move(g)) {
  const int n = n_;
  if (n < 1) throw FrameError("frame dimension must be positive");
  if (c_.size() != sz(n * n * n)) throw FrameError("structure constants have the wrong size");
  if (g_.size() != sz(n * n)) throw FrameError("frame metric has the wrong size");
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (c_[idx3(k, i, j)] != -c_[idx3(k, j, i)]) {
          throw FrameError("structure constants not antisymmetric at c[" + std::to_string(k + 1) + "][" +
                           std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
        }
      }
    }
  }
  // Jacobi: [[E_i,E_j],E_k] + cyclic = 0
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Rational s = 0;
          for (int m = 0; m < n; ++m) {
            s += c_[idx3(m, i, j)] * c_[idx3(l, m, k)] + c_[idx3(m, j, k)] * c_[idx3(l, m, i)] +
                 c_[idx3(m, k, i)] * c_[idx3(l, m, j)];
          }
          if (s != 0) throw FrameError("structure constants violate the Jacobi identity");
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g_[sz(i * n + j)] != g_[sz(j * n + i)]) throw FrameError("frame metric is not symmetric");
    }
  }
  if (!leading_minors_positive(g_, n)) throw FrameError("frame metric is not positive definite");
  ginv_ = inverse(g_, n);

  // Koszul for constant g: 2 g(nabla_i E_j, E_k) = C_ijk - C_jki + C_kij, C_ijk = g([E_i,E_j],E_k)
  std::vector<Rational> C(sz(n * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Rational s = 0;
        for (int m = 0; m < n; ++m) s += c_[idx3(m, i, j)] * g_[sz(m * n + k)];
        C[idx3(i, j, k)] = s;
      }
    }
  }
  nabla_.assign(sz(n * n), Vec<Rational>(sz(n), Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec<Rational> lowered(sz(n));
      for (int k = 0; k < n; ++k) lowered[sz(k)] = (C[idx3(i, j, k)] - C[idx3(j, k, i)] + C[idx3(k, i, j)]) / 2;
      nabla_[sz(i * n + j)] = matvec(ginv_, lowered, n);
    }
  }

  riem_.assign(sz(n * n * n * n), Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Vec<Rational> r = R_op(basis(i), basis(j), basis(k));
        for (int l = 0; l < n; ++l) {
          Rational s = 0;
          for (int m = 0; m < n; ++m) s += r[sz(m)] * g_[sz(m * n + l)];
          riem_[sz(((i * n + j) * n + k) * n + l)] = -s;
        }
      }
    }
  }
}

Vec<Rational> FrameGeometry::basis(int i) const {
  Vec<Rational> e(sz(n_), Rational(0));
  e.at(sz(i)) = 1;
  return e;
}

Vec<Rational> FrameGeometry::bracket(const Vec<Rational>& x, const Vec<Rational>& y) const {
  Vec<Rational> out(sz(n_), Rational(0));
  for (int i = 0; i < n_; ++i) {
    if (x[sz(i)] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[sz(j)] == 0) continue;
      Rational xy = x[sz(i)] * y[sz(j)];
      for (int k = 0; k < n_; ++k) out[sz(k)] += xy * c_[idx3(k, i, j)];
    }
  }
  return out;
}

Vec<Rational> FrameGeometry::nabla(const Vec<Rational>& x, const Vec<Rational>& y) const {
  Vec<Rational> out(sz(n_), Rational(0));
  for (int i = 0; i < n_; ++i) {
    if (x[sz(i)] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[sz(j)] == 0) continue;
      Rational xy = x[sz(i)] * y[sz(j)];
      const auto& v = nabla_[sz(i * n_ + j)];
      for (int k = 0; k < n_; ++k) out[sz(k)] += xy * v[sz(k)];
    }
  }
  return out;
}

Vec<Rational> FrameGeometry::R_op(const Vec<Rational>& x, const Vec<Rational>& y, const Vec<Rational>& z) const {
  // constant coefficients, so nabla_X nabla_Y Z is nabla(X, nabla(Y, Z))
  Vec<Rational> a = nabla(x, nabla(y, z));
  Vec<Rational> b = nabla(y, nabla(x, z));
  Vec<Rational> c = nabla(bracket(x, y), z);
  for (int k = 0; k < n_; ++k) a[sz(k)] -= b[sz(k)] + c[sz(k)];
  return a;
}

StructurePoint<Rational> FrameStructure::point() const {
  StructurePoint<Rational> sp;
  sp.n = frame.dim();
  sp.g = frame.metric();
  sp.riem = frame.riemann();
  sp.phi = phi;
  sp.xi = xi;
  sp.eta = eta;
  return sp;
}

std::string FrameStructure::label(int i) const {
  if (i >= 0 && static_cast<std::size_t>(i) < labels.size()) return labels[sz(i)];
  return "E" + std::to_string(i + 1);
}

FrameStructure heisenberg_h21(const Rational& c, const Rational& s) {
  if (c * c + s * s != 1) {
    throw std::invalid_argument("h21 needs c^2 + s^2 = 1, got c=" + to_string(c) + " s=" + to_string(s));
  }
  const int n = 5;
  enum { X1, X2, Y1, Y2, XI };
  Vec<Rational> cst(sz(n * n * n), Rational(0));
  auto set = [&](int k, int i, int j, const Rational& v) {
    cst[sz((k * n + i) * n + j)] = v;
    cst[sz((k * n + j) * n + i)] = -v;
  };
  set(XI, X1, Y1, 2);
  set(XI, X2, Y2, 2);
  Vec<Rational> g = identity_matrix<Rational>(n);
  FrameGeometry fg(n, std::move(cst), std::move(g));

  // columns are the images of the frame vectors
  Vec<Rational> phi(sz(n * n), Rational(0));
  auto col = [&](int j, int i, const Rational& v) { phi[sz(i * n + j)] = v; };
  col(X1, Y1, c);
  col(X1, Y2, s);
  col(X2, Y1, s);
  col(X2, Y2, -c);
  col(Y1, X1, -c);
  col(Y1, X2, -s);
  col(Y2, X1, -s);
  col(Y2, X2, c);
  Vec<Rational> xi(sz(n), Rational(0));
  xi[XI] = 1;
  Vec<Rational> eta = xi;
  return FrameStructure{"h21:" + to_string(c) + "," + to_string(s), std::move(fg), std::move(phi), std::move(xi),
                        std::move(eta), h21_frame_names()};
}

const std::vector<std::string>& h21_frame_names() {
  static const std::vector<std::string> names{"X1", "X2", "Y1", "Y2", "xi"};
  return names;
}

}  // namespace curvlab
