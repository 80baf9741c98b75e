#pragma once

/// \file
/// Coordinate charts, component fields and deterministic sampling.
///
/// A ComponentField is a flat array of scalar functions on a chart, given
/// either as expressions or as a computed function returning jets. Metrics
/// are dim*dim row-major; endomorphisms store phi^i_j at index i*dim + j.

#include "curvlab/expr.hpp"
#include "curvlab/jet.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace curvlab {

using Point = std::vector<double>;

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

class ComponentField {
 public:
  using JetFn = std::function<std::vector<Jet>(std::span<const double>)>;

  ComponentField() = default;
  explicit ComponentField(std::vector<Expr> exprs);
  ComponentField(std::size_t count, JetFn fn);

  std::size_t size() const { return count_; }
  bool is_expression() const { return !fn_; }
  const std::vector<Expr>& exprs() const { return exprs_; }

  std::vector<double> values(std::span<const double> p) const;
  std::vector<Jet> jets(std::span<const double> p) const;

 private:
  std::size_t count_ = 0;
  std::vector<Expr> exprs_;
  JetFn fn_;
};

enum class Valence { Vector, OneForm, Endomorphism };

struct TensorField {
  Valence valence = Valence::Vector;
  ComponentField components;
};

struct Chart {
  std::string name;
  std::vector<std::string> coords;
  std::vector<Interval> domain;
  ComponentField metric;

  int dim() const { return static_cast<int>(coords.size()); }
};

/// Checks the component count of a field against the chart dimension.
void check_shape(const Chart& chart, const TensorField& f);

std::vector<double> eval_field(const TensorField& f, std::span<const double> p);
std::vector<Jet> eval_field_jets(const TensorField& f, std::span<const double> p);

/// Symmetric dim*dim metric from upper-triangle expressions; missing entries are 0.
ComponentField symmetric_metric(int dim, const std::vector<std::vector<Expr>>& upper);

/// Parses each text over the chart coordinates.
std::vector<Expr> parse_all(std::span<const std::string> texts, std::span<const std::string> coords);
/// Full row-major metric from dim*dim expression texts.
ComponentField metric_from_rows(std::span<const std::string> rows, std::span<const std::string> coords);

struct SampleSet {
  std::vector<Point> points;
  std::vector<std::vector<std::vector<double>>> vectors;  // [point][k] -> components
  std::uint64_t seed = 0;
};

constexpr double kDomainMargin = 1e-3;

/// The box actually sampled for one coordinate interval.
Interval sampling_window(const Interval& iv);

/// Deterministic sample of points and tangent vectors. Throws on an empty
/// domain or a metric that is not positive definite at a drawn point.
SampleSet sample(const Chart& chart, int n_points, int vecs_per_point, std::uint64_t seed);

/// Uniform in [0, 1) from the top 53 bits; platform independent.
double unit_uniform(std::uint64_t bits);

}  // namespace curvlab
