#pragma once

#include <optional>
#include <vector>

#include "conic/unit_row_matrix.hpp"

namespace conic {

struct MinNormResult {
  double distance = 0.0;
  std::vector<double> weights;                     // convex, size n
  std::optional<std::vector<double>> direction;    // unit, absent when distance <= 1e-9
};

// Wolfe's algorithm for the point of minimum norm in conv(p_1..p_n):
// major cycles add the most violating point to an affinely independent
// active set, minor cycles solve the affine-hull subproblem and drop
// points whose weight would go negative.  Terminates when the support
// inequality min_i p_i . x >= ||x||^2 holds to tolerance.
class WolfeSolver {
 public:
  struct State {
    double distance = 0.0;
    std::vector<double> weights;
    std::vector<double> x;
    bool has_direction = false;
    std::vector<double> direction;
  };

  // pts is n x m row-major.  Throws NoConvergence past 10^4 major cycles.
  const State& solve(int n, int m, const double* pts);

 private:
  State st_;
  std::vector<int> corral_;
  std::vector<double> lam_, beta_, bmat_, brhs_, dots_;
};

MinNormResult min_norm_point(int n, int m, const double* pts);
MinNormResult min_norm_point(const UnitRowMatrix& A);

}  // namespace conic
