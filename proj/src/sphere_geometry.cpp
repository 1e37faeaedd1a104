#include "conic/sphere_geometry.hpp"

#include <cmath>
#include <limits>

namespace conic {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Upward recurrence from the I_0 / I_1 bases.  Stable whenever
// cos(rho) <= 0 (all terms positive) or sin^m(rho) stays away from 0
// (no significant cancellation).
double upward(int m, double rho) {
  double s = std::sin(rho);
  double c = std::cos(rho);
  double even = rho;        // I_0
  double odd = 1.0 - c;     // I_1
  if (m == 0) return even;
  if (m == 1) return odd;
  double p = s;  // sin^(j-1) for j = 2
  for (int j = 2; j <= m; ++j) {
    if (j % 2 == 0)
      even = (-c * p + (j - 1) * even) / j;
    else
      odd = (-c * p + (j - 1) * odd) / j;
    p *= s;
  }
  return (m % 2 == 0) ? even : odd;
}

// Downward recurrence in scaled variables H_j = I_j / sin^(j+1)(rho):
//   H_(j-2) = (j sin^2 H_j + cos) / (j-1),
// seeded with H = 0 far enough above m that the seed error has decayed
// below 1e-17 relative.  All terms are positive for rho < pi/2.
// Returns ln I_m(rho).
double downward_log(int m, double rho) {
  double s = std::sin(rho);
  double c = std::cos(rho);
  double logs = std::log(s);
  int extra = 4;
  if (logs < 0.0) {
    double need = std::ceil(19.6 / -logs);
    if (need > extra) extra = static_cast<int>(need);
  }
  double s2 = s * s;
  double h = 0.0;
  for (int j = m + 2 * extra; j >= m + 2; j -= 2) h = (j * s2 * h + c) / (j - 1);
  return std::log(h) + (m + 1) * logs;
}

bool use_downward(int m, double rho) {
  if (rho >= kPi / 2) return false;
  double s = std::sin(rho);
  if (s <= 0.0) return false;
  return m >= 2 && m * std::log(s) < std::log(0.4);
}

// integral of cos^k over [0, delta] by composite Simpson; used only on
// short intervals where the integrand is smooth and close to 1.
double cos_power_short(int k, double delta) {
  const int panels = 128;
  double h = delta / panels;
  auto f = [&](double u) { return std::pow(std::cos(u), k); };
  double acc = f(0.0) + f(delta);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return acc * h / 3.0;
}

}  // namespace

double sin_power_integral(int m, Angle rho) {
  if (m < 0) throw InvalidInput("sin_power_integral: m must be >= 0");
  double r = rho.radians();
  if (r <= 0.0) return 0.0;
  if (use_downward(m, r)) return std::exp(downward_log(m, r));
  return upward(m, r);
}

double log_sin_power_integral(int m, double rho) {
  if (m < 0) throw InvalidInput("log_sin_power_integral: m must be >= 0");
  if (rho <= 0.0) return kNegInf;
  if (use_downward(m, rho)) return downward_log(m, rho);
  return std::log(upward(m, rho));
}

double log_sin_power_integral_pi(int m) {
  if (m < 0) throw InvalidInput("log_sin_power_integral_pi: m must be >= 0");
  return 0.5 * std::log(kPi) + std::lgamma(0.5 * (m + 1)) - std::lgamma(0.5 * m + 1.0);
}

double cap_measure(int m, Angle rho) {
  if (m < 2) throw InvalidInput("cap_measure: m must be >= 2");
  double r = rho.radians();
  if (r == kPi / 2) return 0.5;
  if (r > kPi / 2) return 1.0 - cap_measure(m, Angle(kPi - r));
  return std::exp(log_sin_power_integral(m - 2, r) - log_sin_power_integral_pi(m - 2));
}

double phi(int m, double t) {
  if (m < 3) throw InvalidInput("phi: m must be >= 3");
  if (t < 0.0) throw InvalidInput("phi: t must be >= 0");
  if (t == 0.0) return 1.0;
  double x = std::exp(-t);
  return 1.0 - cap_measure(m, Angle(std::acos(x)));
}

double cutoff_f(int m, int n) {
  if (m < 3) throw InvalidInput("cutoff_f: m must be >= 3");
  if (n < m) throw InvalidInput("cutoff_f: n must be >= m");
  double target = std::pow(0.5, 1.0 / std::sqrt(static_cast<double>(n)));
  double lo = 0.0, hi = 64.0;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (phi(m, mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double concentration_ratio(int m, double gamma) {
  if (m < 3) throw InvalidInput("concentration_ratio: m must be >= 3");
  if (!(gamma > 0.0)) throw InvalidInput("concentration_ratio: gamma must be > 0");
  double x = std::exp(-std::pow(static_cast<double>(m), gamma));
  if (x >= 0.01) return cap_measure(m, Angle(std::acos(x)));
  // cap within O(x) of a hemisphere: form 1/2 - deviation directly,
  // deviation = (integral of cos^(m-2) over [0, arcsin x]) / I_(m-2)(pi)
  if (x == 0.0) return 0.5;
  double dev = cos_power_short(m - 2, std::asin(x)) *
               std::exp(-log_sin_power_integral_pi(m - 2));
  return 0.5 - dev;
}

}  // namespace conic
