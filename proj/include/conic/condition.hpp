#pragma once

#include <optional>
#include <vector>

#include "conic/angle.hpp"
#include "conic/min_norm.hpp"
#include "conic/unit_row_matrix.hpp"

namespace conic {

enum class FeasibilityClass { StrictlyFeasible, Infeasible, IllPosedNumerical };

const char* to_string(FeasibilityClass c);

// Full classification output.  cond is empty when infinite (ill-posed);
// it is never represented by a floating-point overflow.
struct ConditionReport {
  FeasibilityClass cls = FeasibilityClass::IllPosedNumerical;
  Angle theta;
  std::optional<double> cond;
  Cap witness;                                  // LCP: max radius empty cap
  std::optional<std::vector<int>> blocking_set; // present for Infeasible
  std::optional<std::vector<double>> certificate;  // present for StrictlyFeasible
  long singular_subsets_skipped = 0;
};

// Two-phase classifier.
//
// Phase F solves the min-norm point d of conv(rows).  d > eps means the
// system is strictly feasible with theta = pi - arccos(d) and condition
// 1/d; the Wolfe weights are the certificate.
//
// Otherwise 0 lies in the hull.  A supporting-face probe decides whether
// 0 sits on the hull boundary (feasible but not strictly: ill-posed,
// theta = pi/2) before the infeasible enumeration runs: the probe walks
// down the face spanned by the active Wolfe weights looking for a unit p
// with max_i a_i . p <= 0, which exists precisely in the ill-posed case.
//
// Phase I enumerates all m-subsets in lexicographic order, forms the cap
// candidate from A_S^-1 e, and keeps the largest-radius candidate with
// no row strictly inside.  Ties within 1e-12 keep the earlier subset.
class ConditionSolver {
 public:
  ConditionReport classify(const UnitRowMatrix& A);

  // classification + condition value only (no witness assembly);
  // cond is +infinity for ill-posed.
  struct Value {
    FeasibilityClass cls;
    double cond;
  };
  Value condition_value(const UnitRowMatrix& A);

 private:
  struct PhaseIBest {
    bool found = false;
    double cos_radius = 1.0;
    double radius = 0.0;
    std::vector<double> center;
    std::vector<int> subset;
    long skipped = 0;
  };
  PhaseIBest enumerate_caps(const UnitRowMatrix& A);

  WolfeSolver wolfe_;
  std::vector<int> comb_;
  std::vector<double> mat_, u_, center_;
};

ConditionReport classify_and_condition(const UnitRowMatrix& A);

// Independent consistency check of a report against its matrix:
//  (a) no row strictly inside the witness cap,
//  (b) infeasible: every nonsingular m-subset of the blocking set
//      reproduces the witness center (within 1e-7) and blocking rows
//      sit on the boundary (within 1e-8),
//  (c) strictly feasible: the support inequality at -center holds,
//  (d) the grid oracle cannot beat theta by more than 1e-3.
bool verify_report(const UnitRowMatrix& A, const ConditionReport& r);

}  // namespace conic
