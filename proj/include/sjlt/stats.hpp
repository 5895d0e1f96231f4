#pragma once

#include <cstdint>

namespace sjlt {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for `successes` out of `trials` Bernoulli draws.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

/// Welford accumulator; `merge` combines partial results (Chan et al.).
class MeanAccumulator {
 public:
  void add(double v) noexcept;
  void merge(const MeanAccumulator& other) noexcept;

  std::uint64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const noexcept;
  double standard_error() const noexcept;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace sjlt
