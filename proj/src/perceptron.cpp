#include "conic/perceptron.hpp"

#include <cmath>
#include <limits>

#include "conic/angle.hpp"

namespace conic {

long perceptron_default_cap(std::optional<double> known_cond) {
  if (!known_cond) return 1000000L;
  double b = ceil_cond_sq(*known_cond);
  long scaled = b >= 1e17 ? std::numeric_limits<long>::max() / 16 : static_cast<long>(b) * 10;
  return std::max(1000000L, scaled);
}

PerceptronTrace perceptron_solve(const UnitRowMatrix& A, long cap, SelectionRule rule,
                                 std::optional<double> known_cond) {
  if (cap < 1) throw InvalidInput("perceptron_solve: cap must be >= 1");
  const int m = A.dim();
  const int n = A.rows();

  PerceptronTrace trace;
  if (known_cond) trace.bound = ceil_cond_sq(*known_cond);

  std::vector<double> x(m, 0.0);
  long iter = 0;
  while (true) {
    int pick = -1;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      double d = dot(A.row(i), x);
      if (d >= 0.0) {
        if (rule == SelectionRule::FirstViolated) {
          pick = i;
          break;
        }
        if (pick < 0 || d > worst) {  // ties keep the lowest index
          pick = i;
          worst = d;
        }
      }
    }
    if (pick < 0) {
      trace.terminated = PerceptronTermination::Solved;
      trace.solution = x;
      break;
    }
    if (iter >= cap) {
      trace.terminated = PerceptronTermination::IterationCapReached;
      break;
    }
    auto a = A.row(pick);
    for (int j = 0; j < m; ++j) x[j] -= a[j];
    ++iter;
  }
  trace.iterations = iter;
  return trace;
}

}  // namespace conic
