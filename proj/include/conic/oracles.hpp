#pragma once

#include "conic/angle.hpp"
#include "conic/unit_row_matrix.hpp"

namespace conic {

// Exact theta(A) for m = 2: half of the largest circular gap between
// the sorted polar angles of the rows.
Angle theta_oracle_2d(const UnitRowMatrix& A);

// Lower estimate of theta(A) for any m: evaluate the min-angle
// objective on `budget` quasi-uniform sphere points (angle grid for
// m = 2, Fibonacci spiral for m = 3, seeded normalized Gaussians
// above), then polish the best point by tangent-space ascent with
// step halving.  Never exceeds theta(A).
Angle theta_oracle_grid(const UnitRowMatrix& A, long budget);

}  // namespace conic
