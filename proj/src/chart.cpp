#include "curvlab/chart.hpp"

#include "curvlab/linalg.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace curvlab {

ComponentField::ComponentField(std::vector<Expr> exprs)
    : count_(exprs.size()), exprs_(std::move(exprs)) {}

ComponentField::ComponentField(std::size_t count, JetFn fn) : count_(count), fn_(std::move(fn)) {}

std::vector<double> ComponentField::values(std::span<const double> p) const {
  std::vector<double> out;
  out.reserve(count_);
  if (fn_) {
    for (const Jet& j : fn_(p)) out.push_back(j.value());
  } else {
    for (const Expr& e : exprs_) out.push_back(evaluate<double>(e, p));
  }
  return out;
}

std::vector<Jet> ComponentField::jets(std::span<const double> p) const {
  if (fn_) {
    auto out = fn_(p);
    if (out.size() != count_) throw std::logic_error("computed field returned the wrong component count");
    return out;
  }
  auto seeds = seed_all(p);
  std::vector<Jet> out;
  out.reserve(count_);
  for (const Expr& e : exprs_) {
    Jet j = evaluate<Jet>(e, seeds);
    j.ensure_size(static_cast<int>(p.size()));
    out.push_back(std::move(j));
  }
  return out;
}

void check_shape(const Chart& chart, const TensorField& f) {
  const std::size_t n = static_cast<std::size_t>(chart.dim());
  const std::size_t want = f.valence == Valence::Endomorphism ? n * n : n;
  if (f.components.size() != want) {
    throw std::invalid_argument("field has " + std::to_string(f.components.size()) + " components, expected " +
                                std::to_string(want));
  }
}

std::vector<double> eval_field(const TensorField& f, std::span<const double> p) {
  return f.components.values(p);
}

std::vector<Jet> eval_field_jets(const TensorField& f, std::span<const double> p) {
  return f.components.jets(p);
}

ComponentField symmetric_metric(int dim, const std::vector<std::vector<Expr>>& upper) {
  std::vector<Expr> m(static_cast<std::size_t>(dim * dim), Expr::integer(0));
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      const Expr& e = upper.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
      m[static_cast<std::size_t>(i * dim + j)] = e;
      m[static_cast<std::size_t>(j * dim + i)] = e;
    }
  }
  return ComponentField(std::move(m));
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

Interval sampling_window(const Interval& iv) {
  const bool lo_inf = std::isinf(iv.lo);
  const bool hi_inf = std::isinf(iv.hi);
  if (lo_inf && hi_inf) return {-2.0, 2.0};
  if (!lo_inf && hi_inf) return {iv.lo + 0.5, iv.lo + 3.0};
  if (lo_inf && !hi_inf) return {iv.hi - 3.0, iv.hi - 0.5};
  return {iv.lo + kDomainMargin, iv.hi - kDomainMargin};
}

SampleSet sample(const Chart& chart, int n_points, int vecs_per_point, std::uint64_t seed) {
  if (n_points < 1) throw std::invalid_argument("n_points must be at least 1");
  const int n = chart.dim();
  if (static_cast<int>(chart.domain.size()) != n) throw std::invalid_argument("domain/coordinate count mismatch");
  std::vector<Interval> windows;
  for (const auto& iv : chart.domain) {
    Interval w = sampling_window(iv);
    if (!(w.lo < w.hi)) throw std::invalid_argument("empty domain for chart " + chart.name);
    windows.push_back(w);
  }
  std::mt19937_64 rng(seed);
  SampleSet s;
  s.seed = seed;
  for (int k = 0; k < n_points; ++k) {
    Point p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto& w = windows[static_cast<std::size_t>(i)];
      p[static_cast<std::size_t>(i)] = w.lo + (w.hi - w.lo) * unit_uniform(rng());
    }
    auto g = chart.metric.values(p);
    if (!leading_minors_positive(g, n)) {
      throw std::runtime_error("metric of " + chart.name + " is not positive definite at a sampled point");
    }
    std::vector<std::vector<double>> vs;
    for (int v = 0; v < vecs_per_point; ++v) {
      std::vector<double> x(static_cast<std::size_t>(n));
      double norm2 = 0;
      do {
        norm2 = 0;
        for (auto& c : x) {
          c = 2.0 * unit_uniform(rng()) - 1.0;
          norm2 += c * c;
        }
      } while (norm2 < 0.01);
      vs.push_back(std::move(x));
    }
    s.points.push_back(std::move(p));
    s.vectors.push_back(std::move(vs));
  }
  return s;
}

std::vector<Expr> parse_all(std::span<const std::string> texts, std::span<const std::string> coords) {
  std::vector<Expr> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_expr(t, coords));
  return out;
}

ComponentField metric_from_rows(std::span<const std::string> rows, std::span<const std::string> coords) {
  return ComponentField(parse_all(rows, coords));
}

}  // namespace curvlab
