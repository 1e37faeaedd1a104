#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "conic/unit_row_matrix.hpp"

namespace conic {

enum class SelectionRule { FirstViolated, MaxViolation };
enum class PerceptronTermination { Solved, IterationCapReached };

// ceil(C^2) with a relative guard so that values a few ulps above an
// integer (sqrt(2)^2 = 2 + 4e-16, say) do not round up a whole step
inline double ceil_cond_sq(double cond) {
  return std::ceil(cond * cond * (1.0 - 1e-12));
}

struct PerceptronTrace {
  std::optional<std::vector<double>> solution;  // strict solution of Ax < 0
  long iterations = 0;                          // number of update steps
  std::optional<double> bound;                  // ceil(C^2) when the condition is known
  PerceptronTermination terminated = PerceptronTermination::IterationCapReached;
};

// Relaxation iteration from x0 = 0: while some row has a . x >= 0, pick
// one by `rule` and set x <- x - a.  Zero dot products count as violated,
// and the strict solution test is an exact < 0 with no tolerance.
PerceptronTrace perceptron_solve(const UnitRowMatrix& A, long cap, SelectionRule rule,
                                 std::optional<double> known_cond = std::nullopt);

// max(10^6, 10 ceil(C^2)) when C is known, else 10^6.
long perceptron_default_cap(std::optional<double> known_cond);

}  // namespace conic
