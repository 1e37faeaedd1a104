#include "conic/bounds.hpp"

#include <cmath>
#include <limits>

#include "conic/sphere_geometry.hpp"

namespace conic {

namespace {

void check_mn(int m, long n, int min_m) {
  if (m < min_m) throw InvalidInput("bound: m below the valid range");
  if (n < m) throw InvalidInput("bound: n must be >= m");
}

BoundValue as_probability(double log_raw) {
  if (log_raw > 0.0) return {0.0, true};
  return {log_raw, false};
}

// log of the cap-complement factor (1 - capmeas(m, arccos(x)))^(n-m),
// with x = 1/t or e^-t in [0, 1]; the base lies in [1/2, 1]
double log_complement_power(int m, long n, double x) {
  double meas = cap_measure(m, Angle(std::acos(x)));
  return static_cast<double>(n - m) * std::log1p(-meas);
}

}  // namespace

double BoundValue::value() const { return clamped ? 1.0 : std::exp(log_value); }

double log_binomial(long n, long k) {
  if (k < 0 || k > n) throw InvalidInput("log_binomial: k out of range");
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

BoundValue upper_tail_bound(int m, long n, double t) {
  check_mn(m, n, 3);
  if (t < 1.0) throw InvalidInput("upper_tail_bound: t must be >= 1");
  double log_raw = log_binomial(n, m) + std::log(2.0) + 2.5 * std::log(m) +
                   log_complement_power(m, n, 1.0 / t) - std::log(t);
  return as_probability(log_raw);
}

BoundValue log_tail_bound(int m, long n, double t) {
  check_mn(m, n, 3);
  if (t < 0.0) throw InvalidInput("log_tail_bound: t must be >= 0");
  // identical to upper_tail_bound at e^t; -log(e^t) folded in exactly
  double log_raw = log_binomial(n, m) + std::log(2.0) + 2.5 * std::log(m) +
                   log_complement_power(m, n, std::exp(-t)) - t;
  return as_probability(log_raw);
}

BoundValue lower_tail_envelope(int m, long n, double t, double c) {
  check_mn(m, n, 2);
  if (!(c > 0.0)) throw InvalidInput("lower_tail_envelope: c must be > 0");
  if (t < std::sqrt(2.0)) throw InvalidInput("lower_tail_envelope: t must be >= sqrt(2)");
  double meas = cap_measure(m, Angle(std::acos(1.0 / t)));
  double log_raw = std::log(c) + static_cast<double>(n - m) * std::log(meas) - std::log(t);
  return as_probability(log_raw);
}

double moment_bound_estimates(int m, long n, double gamma) {
  check_mn(m, n, 3);
  if (!(gamma > 0.0)) throw InvalidInput("moment_bound_estimates: gamma must be > 0");
  double first = std::pow(cutoff_f(m, static_cast<int>(n)), gamma);
  double log_second = log_binomial(n, m) + std::log(2.0) + 2.5 * std::log(m) -
                      (static_cast<double>(n - m) / std::sqrt(static_cast<double>(n))) *
                          std::log(2.0) +
                      std::lgamma(gamma + 1.0);
  return first + std::exp(log_second);
}

double moment_bound_polycor(int m, long n, double gamma) {
  check_mn(m, n, 3);
  if (gamma < 1.0) throw InvalidInput("moment_bound_polycor: gamma must be >= 1");
  double p = m * std::log(static_cast<double>(n)) + 2.5 * std::log(m) + std::log(2.0);
  return std::pow(p, gamma) + std::tgamma(gamma + 1.0) * std::pow(2.0, gamma - 1.0);
}

double polycor_mean_bound(int m, long n) {
  check_mn(m, n, 3);
  return m * std::log(static_cast<double>(n)) + 2.5 * std::log(m) + std::log(2.0) + 1.0;
}

double polycor_variance_bound(int m, long n) {
  check_mn(m, n, 3);
  double p = m * std::log(static_cast<double>(n)) + 2.5 * std::log(m) + std::log(2.0);
  return p * p + 4.0;
}

double moment_bound_cori(int m, long n, double gamma) {
  check_mn(m, n, 3);
  if (!(gamma > 0.0)) throw InvalidInput("moment_bound_cori: gamma must be > 0");
  if (gamma >= 1.0)
    throw MomentDivergent("E[C^gamma] is infinite for gamma >= 1");
  double log_term = log_binomial(n, m) + std::log(2.0) + 2.5 * std::log(m) +
                    std::log(gamma) - std::log1p(-gamma);
  return 1.0 + std::exp(log_term);
}

double generic_tail_to_mean(double p, double t0, double gamma) {
  if (gamma < 1.0) throw InvalidInput("generic_tail_to_mean: gamma must be >= 1");
  return std::max(std::pow(p, gamma), t0) +
         std::tgamma(gamma + 1.0) * std::pow(2.0, gamma - 1.0);
}

double small_n_bound(long n) {
  if (n < 1) throw InvalidInput("small_n_bound: n must be >= 1");
  return 2.5 * std::log(static_cast<double>(n)) + 2.0;
}

}  // namespace conic
