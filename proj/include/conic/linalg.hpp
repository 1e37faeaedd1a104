#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conic/angle.hpp"
#include "conic/unit_row_matrix.hpp"

namespace conic {

// Pivot magnitude below which a square system is treated as singular.
inline constexpr double kPivotTol = 1e-12;

// In-place LU solve with partial pivoting on a k x k row-major system.
// Returns false when a pivot falls below `pivot_tol` (singular).
// `a` and `b` are overwritten; the solution lands in `b`.
bool lu_solve_inplace(int k, double* a, double* b, double pivot_tol = kPivotTol);

// The solve u = A_S^-1 e for an m-subset S of rows, plus the derived
// cap candidate: center u/||u|| and radius arccos(1/||u||), the latter
// present only when ||u|| >= 1.
struct SubsetSolve {
  std::vector<int> subset;   // sorted, size m
  std::vector<double> u;
  double norm_u = 0.0;
  std::vector<double> center;
  std::optional<Angle> candidate_radius;
};

// Throws SingularSubset when A_S is singular, InvalidInput on a bad S.
SubsetSolve subset_solve(const UnitRowMatrix& A, std::span<const int> S);

// Orthonormal basis from Gram-Schmidt with the orientation fixed so
// E_i . v_i > 0 and span(E_1..E_i) = span(v_1..v_i) for every prefix.
// Throws DependentSet when the residual pivot drops below 1e-10.
std::vector<std::vector<double>> gram_schmidt_basis(
    const std::vector<std::vector<double>>& vectors);

}  // namespace conic
