#pragma once

// Small dense linear algebra, generic over double, Jet2 and Rational.
// Matrices are row-major std::vector<S> of size n*n.

#include "curvlab/jet.hpp"
#include "curvlab/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace curvlab {

template <class S>
using Vec = std::vector<S>;

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
template <class T>
double magnitude(const Jet2<T>& x) {
  return std::abs(primal(x));
}
inline double magnitude(const Rational& x) { return to_double(abs_value(x)); }

inline bool is_zero(double x) { return x == 0.0; }
/// A jet is zero only when its value and all derivatives are.
template <class T>
bool is_zero(const Jet2<T>& x) {
  if (!is_zero(x.value())) return false;
  const int n = x.size();
  for (int i = 0; i < n; ++i) {
    if (!is_zero(x.grad(i))) return false;
    for (int j = 0; j < n; ++j)
      if (!is_zero(x.hess(i, j))) return false;
  }
  return true;
}
inline bool is_zero(const Rational& x) { return x == 0; }

}  // namespace detail

/// Solves A X = B for k right-hand sides stored row-major in B (n x k).
/// Partial pivoting on the primal magnitude; exact for rationals.
template <class S>
Vec<S> solve(Vec<S> a, Vec<S> b, int n, int k = 1) {
  if (static_cast<int>(a.size()) != n * n || static_cast<int>(b.size()) != n * k) {
    throw std::invalid_argument("solve: shape mismatch");
  }
  auto at = [n](int i, int j) { return static_cast<std::size_t>(i * n + j); };
  auto bt = [k](int i, int j) { return static_cast<std::size_t>(i * k + j); };
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = detail::magnitude(a[at(col, col)]);
    for (int r = col + 1; r < n; ++r) {
      double m = detail::magnitude(a[at(r, col)]);
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (detail::is_zero(a[at(piv, col)]) || best < 1e-300) throw SingularMatrix("singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a[at(col, j)], a[at(piv, j)]);
      for (int j = 0; j < k; ++j) std::swap(b[bt(col, j)], b[bt(piv, j)]);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || detail::is_zero(a[at(r, col)])) continue;
      S f = a[at(r, col)] / a[at(col, col)];
      for (int j = col; j < n; ++j) a[at(r, j)] = a[at(r, j)] - f * a[at(col, j)];
      for (int j = 0; j < k; ++j) b[bt(r, j)] = b[bt(r, j)] - f * b[bt(col, j)];
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < k; ++j) b[bt(r, j)] = b[bt(r, j)] / a[at(r, r)];
  }
  return b;
}

template <class S>
Vec<S> identity_matrix(int n) {
  Vec<S> m(static_cast<std::size_t>(n * n), S(0.0));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = S(1.0);
  return m;
}

template <>
inline Vec<Rational> identity_matrix<Rational>(int n) {
  Vec<Rational> m(static_cast<std::size_t>(n * n), Rational(0));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = Rational(1);
  return m;
}

template <class S>
Vec<S> inverse(const Vec<S>& a, int n) {
  return solve(a, identity_matrix<S>(n), n, n);
}

template <class S>
Vec<S> matmul(const Vec<S>& a, const Vec<S>& b, int n) {
  Vec<S> c(static_cast<std::size_t>(n * n), S{});
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const S& aik = a[static_cast<std::size_t>(i * n + k)];
      if (detail::is_zero(aik)) continue;
      for (int j = 0; j < n; ++j) {
        c[static_cast<std::size_t>(i * n + j)] += aik * b[static_cast<std::size_t>(k * n + j)];
      }
    }
  }
  return c;
}

template <class S>
Vec<S> matvec(const Vec<S>& a, const Vec<S>& v, int n) {
  Vec<S> r(static_cast<std::size_t>(n), S{});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const S& x = v[static_cast<std::size_t>(j)];
      if (detail::is_zero(x)) continue;
      r[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i * n + j)] * x;
    }
  }
  return r;
}

/// Bilinear form v^T A w.
template <class S>
S bilinear(const Vec<S>& a, const Vec<S>& v, const Vec<S>& w, int n) {
  S s{};
  for (int i = 0; i < n; ++i) {
    const S& vi = v[static_cast<std::size_t>(i)];
    if (detail::is_zero(vi)) continue;
    for (int j = 0; j < n; ++j) {
      const S& wj = w[static_cast<std::size_t>(j)];
      if (detail::is_zero(wj)) continue;
      s += vi * a[static_cast<std::size_t>(i * n + j)] * wj;
    }
  }
  return s;
}

/// Determinant by elimination (exact for rationals).
template <class S>
S determinant(Vec<S> a, int n) {
  S det(1.0);
  auto at = [n](int i, int j) { return static_cast<std::size_t>(i * n + j); };
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = detail::magnitude(a[at(col, col)]);
    for (int r = col + 1; r < n; ++r) {
      double m = detail::magnitude(a[at(r, col)]);
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (detail::is_zero(a[at(piv, col)])) return S(0.0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a[at(col, j)], a[at(piv, j)]);
      det = -det;
    }
    det *= a[at(col, col)];
    for (int r = col + 1; r < n; ++r) {
      if (detail::is_zero(a[at(r, col)])) continue;
      S f = a[at(r, col)] / a[at(col, col)];
      for (int j = col; j < n; ++j) a[at(r, j)] = a[at(r, j)] - f * a[at(col, j)];
    }
  }
  return det;
}

template <>
inline Rational determinant<Rational>(Vec<Rational> a, int n) {
  Rational det(1);
  auto at = [n](int i, int j) { return static_cast<std::size_t>(i * n + j); };
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[at(piv, col)] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a[at(col, j)], a[at(piv, j)]);
      det = -det;
    }
    det *= a[at(col, col)];
    for (int r = col + 1; r < n; ++r) {
      if (a[at(r, col)] == 0) continue;
      Rational f = a[at(r, col)] / a[at(col, col)];
      for (int j = col; j < n; ++j) a[at(r, j)] -= f * a[at(col, j)];
    }
  }
  return det;
}

/// Leading principal minors all positive.
template <class S>
bool leading_minors_positive(const Vec<S>& a, int n) {
  for (int k = 1; k <= n; ++k) {
    Vec<S> sub(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) sub[static_cast<std::size_t>(i * k + j)] = a[static_cast<std::size_t>(i * n + j)];
    }
    if (!(determinant(sub, k) > S(0.0))) return false;
  }
  return true;
}

template <>
inline bool leading_minors_positive<Rational>(const Vec<Rational>& a, int n) {
  for (int k = 1; k <= n; ++k) {
    Vec<Rational> sub(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) sub[static_cast<std::size_t>(i * k + j)] = a[static_cast<std::size_t>(i * n + j)];
    }
    if (!(determinant(sub, k) > 0)) return false;
  }
  return true;
}

template <class S>
Vec<S> primal_values(const Vec<Jet2<S>>& v) {
  Vec<S> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.value());
  return out;
}

}  // namespace curvlab
