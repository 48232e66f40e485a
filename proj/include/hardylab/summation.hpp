#pragma once

#include <cmath>

namespace hardylab {

/// Error-free transformation: a + b == sum + err exactly.
struct TwoSum {
  double sum;
  double err;
};

inline TwoSum two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

/// Running sum that carries the rounding error of every addition
/// (Knuth TwoSum, so no magnitude test is needed).
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) noexcept {
    const TwoSum t = two_sum(sum_, x);
    sum_ = t.sum;
    comp_ += t.err;
    return *this;
  }

  /// Infinite or NaN running sums are returned as is; their error term is NaN.
  double value() const noexcept { return std::isfinite(sum_) ? sum_ + comp_ : sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace hardylab
