#include "conic/stats.hpp"

#include <cmath>

#include "conic/errors.hpp"

namespace conic {

Interval wilson99(long successes, long trials) {
  if (trials < 1) throw InvalidInput("wilson99: trials must be >= 1");
  if (successes < 0 || successes > trials)
    throw InvalidInput("wilson99: successes out of range");
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = kZ99 * kZ99;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = kZ99 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {center - half, center + half};
}

SlopeFit weighted_slope(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w) {
  if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
    throw InvalidInput("weighted_slope: need >= 2 consistent points");
  double sw = 0, swx = 0, swy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    swx += w[i] * x[i];
    swy += w[i] * y[i];
  }
  double xbar = swx / sw, ybar = swy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - xbar;
    sxx += w[i] * dx * dx;
    sxy += w[i] * dx * (y[i] - ybar);
  }
  if (sxx <= 0.0) throw InvalidInput("weighted_slope: degenerate abscissae");
  return {sxy / sxx, std::sqrt(1.0 / sxx)};
}

double hill_tail_index(std::span<const double> sorted_desc, long k) {
  if (k < 1 || k + 1 > static_cast<long>(sorted_desc.size()))
    throw InvalidInput("hill_tail_index: k out of range");
  double pivot = sorted_desc[static_cast<std::size_t>(k)];
  if (!(pivot > 0.0)) throw InvalidInput("hill_tail_index: sample must be positive");
  double acc = 0.0;
  for (long i = 0; i < k; ++i)
    acc += std::log(sorted_desc[static_cast<std::size_t>(i)] / pivot);
  return static_cast<double>(k) / acc;
}

}  // namespace conic
