#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "conic/errors.hpp"

namespace conic {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Tolerance on ||v|| - 1 accepted for unit-vector arguments.
inline constexpr double kUnitTol = 1e-9;

// Absolute dot-product tolerance for strict cap membership.
inline constexpr double kContainTol = 1e-9;

// An angle in radians, restricted to [0, pi].
class Angle {
 public:
  Angle() : value_(0.0) {}
  explicit Angle(double radians) : value_(radians) {
    // absorb roundoff just outside the interval
    if (value_ < 0.0 && value_ > -1e-12) value_ = 0.0;
    if (value_ > kPi && value_ < kPi + 1e-12) value_ = kPi;
    if (!(value_ >= 0.0 && value_ <= kPi))
      throw InvalidInput("Angle out of [0, pi]: " + std::to_string(radians));
  }
  double radians() const noexcept { return value_; }
  double cos() const noexcept { return std::cos(value_); }

  friend bool operator<(Angle a, Angle b) { return a.value_ < b.value_; }
  friend bool operator>(Angle a, Angle b) { return a.value_ > b.value_; }

 private:
  double value_;
};

// Spherical cap { x : x . center >= cos(radius) }.
struct Cap {
  std::vector<double> center;  // unit vector
  Angle radius;
};

inline double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline double norm(std::span<const double> u) { return std::sqrt(dot(u, u)); }

// arccos of the clamped dot product; arguments must be unit vectors.
Angle angle_between(std::span<const double> u, std::span<const double> v);

// Non-strict: x.center >= cos(radius).  Strict: x.center > cos(radius) + tol,
// so boundary points are excluded from the interior.
bool cap_contains(const Cap& c, std::span<const double> x, bool strict);

}  // namespace conic
