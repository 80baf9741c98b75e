#pragma once

// Result of one residual check over a sample set or an exhaustive frame sweep.

#include "curvlab/chart.hpp"
#include "curvlab/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvlab {

struct Witness {
  Point point;                             // empty on frame carriers
  std::vector<std::vector<double>> vectors;
  std::vector<std::string> frame_labels;  // frame carriers: basis names of the arguments
};

struct IdentityReport {
  std::string tag;
  std::size_t samples = 0;
  double residual = 0;
  std::optional<Rational> exact;  // set on frame carriers
  std::optional<Witness> witness;
  double tolerance = 1e-7;

  /// Exact carriers require an exact zero; sampled ones residual <= tolerance.
  bool verdict() const { return exact ? *exact == 0 : residual <= tolerance; }

  /// Folds in one evaluated residual, keeping the first argmax.
  void record(double r, const Witness& w) {
    ++samples;
    if (!witness || r > residual) {
      residual = r;
      witness = w;
    }
  }
  void record_exact(const Rational& r, const Witness& w) {
    ++samples;
    Rational a = abs_value(r);
    if (!witness || a > *exact) {
      exact = a;
      residual = to_double(a);
      witness = w;
    }
  }
};

}  // namespace curvlab
