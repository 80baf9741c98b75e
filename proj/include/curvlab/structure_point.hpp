#pragma once

// Pointwise algebraic data (metric, curvature, structure tensors) shared by
// the chart engine (double) and the frame engine (Rational).

#include "curvlab/linalg.hpp"

#include <vector>

namespace curvlab {

template <class S>
struct StructurePoint {
  int n = 0;
  Vec<S> g;     // n*n
  Vec<S> riem;  // n^4, R(e_i, e_j, e_k, e_l)
  Vec<S> phi;   // n*n row-major phi^i_j (J for Hermitian structures)
  Vec<S> xi;    // empty for Hermitian structures
  Vec<S> eta;

  S inner(const Vec<S>& x, const Vec<S>& y) const { return bilinear(g, x, y, n); }
  Vec<S> Phi(const Vec<S>& x) const { return matvec(phi, x, n); }
  S Eta(const Vec<S>& x) const {
    S s{};
    for (int i = 0; i < n; ++i) {
      const S& xi_ = x[static_cast<std::size_t>(i)];
      if (!detail::is_zero(xi_)) s += eta[static_cast<std::size_t>(i)] * xi_;
    }
    return s;
  }

  S R(const Vec<S>& x, const Vec<S>& y, const Vec<S>& z, const Vec<S>& w) const {
    S s{};
    for (int i = 0; i < n; ++i) {
      const S& a = x[static_cast<std::size_t>(i)];
      if (detail::is_zero(a)) continue;
      for (int j = 0; j < n; ++j) {
        const S& b = y[static_cast<std::size_t>(j)];
        if (detail::is_zero(b)) continue;
        S ab = a * b;
        for (int k = 0; k < n; ++k) {
          const S& c = z[static_cast<std::size_t>(k)];
          if (detail::is_zero(c)) continue;
          S abc = ab * c;
          for (int l = 0; l < n; ++l) {
            const S& d = w[static_cast<std::size_t>(l)];
            if (detail::is_zero(d)) continue;
            const S& r = riem[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
            if (detail::is_zero(r)) continue;
            s += abc * r * d;
          }
        }
      }
    }
    return s;
  }

  /// v - eta(v) xi
  Vec<S> horizontal(const Vec<S>& v) const {
    S e = Eta(v);
    Vec<S> out = v;
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] -= e * xi[static_cast<std::size_t>(i)];
    return out;
  }
};

}  // namespace curvlab
