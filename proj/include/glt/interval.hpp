#pragma once

#include <algorithm>

namespace glt {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  double width() const { return hi - lo; }
  bool contains(double v, double tol = 0.0) const {
    return v >= lo - tol && v <= hi + tol;
  }
  Interval clamped(double a, double b) const {
    return {std::clamp(lo, a, b), std::clamp(hi, a, b)};
  }
};

}  // namespace glt
