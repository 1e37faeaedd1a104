#pragma once

#include <span>

namespace conic {

// two-sided 99% normal quantile
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
  double low;
  double high;
};

// Wilson score interval at 99% for `successes` out of `trials`.
Interval wilson99(long successes, long trials);

struct SlopeFit {
  double slope;
  double stderr_slope;
};

// Weighted least-squares line y ~ a + b x; weights w are inverse
// variances.  Returns the slope and its standard error.
SlopeFit weighted_slope(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w);

// Hill estimator of the tail index from the top k of a descending
// sorted sample: 1 / mean(log(v_i / v_(k+1)), i = 1..k).
double hill_tail_index(std::span<const double> sorted_desc, long k);

}  // namespace conic
