#pragma once

#include "conic/angle.hpp"

namespace conic {

// I_m(rho) = integral of sin^m(x) over [0, rho].  Exact recurrence
//   I_m = (-cos(rho) sin^(m-1)(rho))/m + ((m-1)/m) I_(m-2),
// run upward from I_0 = rho, I_1 = 1 - cos(rho) when that is stable
// (rho >= pi/2, or sin^m(rho) not small), and downward from a seeded
// tail in scaled form otherwise, where the upward subtraction cancels.
double sin_power_integral(int m, Angle rho);

// ln I_m(rho); -inf at rho = 0.  Safe against underflow for all m, so
// ratios of integrals can be formed in log space.
double log_sin_power_integral(int m, double rho);

// ln I_m(pi) through the closed form sqrt(pi) * G((m+1)/2) / G(m/2+1).
double log_sin_power_integral_pi(int m);

// Normalised cap measure I_(m-2)(rho) / I_(m-2)(pi) in [0, 1], m >= 2.
// Exactly 1/2 at rho = pi/2; the antipodal identity
// cap_measure(rho) + cap_measure(pi - rho) = 1 holds by construction.
double cap_measure(int m, Angle rho);

// phi(t) = 1 - cap_measure(m, arccos(e^-t)) in (1/2, 1], m >= 3.
double phi(int m, double t);

// The cutoff t* solving phi(m, t*) = (1/2)^(1/sqrt(n)), by bisection
// on [0, 64]; phi(m, 64) - 1/2 is below 1e-12 for every m >= 3.
double cutoff_f(int m, int n);

// cap_measure(m, arccos(e^(-m^gamma))), evaluated through the
// complement integral when the cap is within ~0.01 of a hemisphere so
// the deviation from 1/2 survives cancellation.
double concentration_ratio(int m, double gamma);

}  // namespace conic
