#pragma once

namespace conic {

// A probability bound kept in log space.  When the raw bound exceeds 1
// it is reported as 1: log_value is capped at 0 and `clamped` is set.
struct BoundValue {
  double log_value;  // natural log; -inf allowed
  bool clamped;
  double value() const;
};

double log_binomial(long n, long k);

// binom(n,m) * 2 m^(5/2) * (1 - capmeas(arccos(1/t)))^(n-m) / t  for t >= 1.
BoundValue upper_tail_bound(int m, long n, double t);

// The same bound evaluated at e^t (survival of log C at level t >= 0).
BoundValue log_tail_bound(int m, long n, double t);

// c * capmeas(arccos(1/t))^(n-m) / t for t >= sqrt(2); c stands in for
// the unquantified dimension constant.
BoundValue lower_tail_envelope(int m, long n, double t, double c);

// f(m,n)^gamma + binom(n,m) * 2 m^(5/2) * 2^(-(n-m)/sqrt(n)) * Gamma(gamma+1).
double moment_bound_estimates(int m, long n, double gamma);

// (m ln n + 5/2 ln m + ln 2)^gamma + Gamma(gamma+1) 2^(gamma-1), gamma >= 1.
double moment_bound_polycor(int m, long n, double gamma);
double polycor_mean_bound(int m, long n);      // m ln n + 5/2 ln m + ln 2 + 1
double polycor_variance_bound(int m, long n);  // (m ln n + 5/2 ln m + ln 2)^2 + 4

// 1 + binom(n,m) * 2 m^(5/2) * gamma/(1-gamma) for gamma in (0,1);
// gamma >= 1 raises MomentDivergent.
double moment_bound_cori(int m, long n, double gamma);

// max(p^gamma, t0) + Gamma(gamma+1) 2^(gamma-1).
double generic_tail_to_mean(double p, double t0, double gamma);

// (5/2) ln n + 2.
double small_n_bound(long n);

}  // namespace conic
