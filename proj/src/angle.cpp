#include "conic/angle.hpp"

#include <algorithm>

namespace conic {

Angle angle_between(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InvalidInput("angle_between: dimension mismatch");
  if (std::abs(norm(u) - 1.0) > kUnitTol || std::abs(norm(v) - 1.0) > kUnitTol)
    throw InvalidInput("angle_between: arguments must be unit vectors");
  double d = std::clamp(dot(u, v), -1.0, 1.0);
  return Angle(std::acos(d));
}

bool cap_contains(const Cap& c, std::span<const double> x, bool strict) {
  double d = dot(std::span<const double>(c.center), x);
  double cr = c.radius.cos();
  // the tolerance band around the boundary counts as "on the cap" for
  // non-strict membership and as "not inside" for strict membership
  return strict ? d > cr + kContainTol : d >= cr - kContainTol;
}

}  // namespace conic
