#include "conic/condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conic/linalg.hpp"
#include "conic/oracles.hpp"

namespace conic {

namespace {

constexpr double kEpsFeas = 1e-9;   // min-norm threshold for strict feasibility
constexpr double kEpsIp = 1e-9;     // |cos theta| below this is ill-posed
constexpr double kTieTol = 1e-12;   // radius tie tolerance, lexicographic winner

const char* kClassNames[] = {"StrictlyFeasible", "Infeasible", "IllPosedNumerical"};

void append_orthonormal(std::vector<std::vector<double>>& basis,
                        std::span<const double> v, double tol) {
  std::vector<double> r(v.begin(), v.end());
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : basis) {
      double c = dot(r, e);
      for (std::size_t t = 0; t < r.size(); ++t) r[t] -= c * e[t];
    }
  double nrm = norm(r);
  if (nrm > tol) {
    for (auto& x : r) x /= nrm;
    basis.push_back(std::move(r));
  }
}

// Searches for a unit p with rows_i . p <= ~0 for all i, given convex
// weights of a near-zero combination of the rows.  Such a p exists iff 0
// lies on the boundary of conv(rows): any supporting normal is orthogonal
// to the face spanned by the actively weighted rows, so the search can be
// restricted to that orthogonal complement and recursed.
std::optional<std::vector<double>> support_from_weights(
    const std::vector<std::vector<double>>& rows, int q,
    const std::vector<double>& weights, WolfeSolver& ws) {
  std::vector<std::vector<double>> face;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (weights[i] > 1e-9) append_orthonormal(face, rows[i], 1e-9);
  const int span_dim = static_cast<int>(face.size());
  if (span_dim >= q) return std::nullopt;  // face is full-dimensional

  // orthonormal basis of the complement, extended from canonical vectors
  std::vector<std::vector<double>> complement;
  {
    auto full = face;
    for (int j = 0; j < q && static_cast<int>(full.size()) < q; ++j) {
      std::vector<double> e(q, 0.0);
      e[j] = 1.0;
      std::size_t before = full.size();
      append_orthonormal(full, e, 1e-8);
      if (full.size() > before) complement.push_back(full.back());
    }
  }
  const int k = static_cast<int>(complement.size());
  if (k == 0) return std::nullopt;

  auto lift = [&](const std::vector<double>& qv) {
    std::vector<double> p(q, 0.0);
    for (int t = 0; t < k; ++t)
      for (int j = 0; j < q; ++j) p[j] += qv[t] * complement[t][j];
    double nrm = norm(p);
    for (auto& x : p) x /= nrm;
    return p;
  };

  // project the rows into the complement; rows inside the face vanish
  std::vector<std::vector<double>> sub;
  sub.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<double> b(k);
    for (int t = 0; t < k; ++t) b[t] = dot(r, complement[t]);
    double nrm = norm(b);
    if (nrm > 1e-9) {
      for (auto& x : b) x /= nrm;
      sub.push_back(std::move(b));
    }
  }
  if (sub.empty()) {
    // every row lies in the face: any complement direction supports
    std::vector<double> e(k, 0.0);
    e[0] = 1.0;
    return lift(e);
  }

  std::vector<double> flat(sub.size() * static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < sub.size(); ++i)
    std::copy(sub[i].begin(), sub[i].end(), flat.begin() + i * k);
  const auto& st = ws.solve(static_cast<int>(sub.size()), k, flat.data());
  if (st.distance > 1e-9) {
    std::vector<double> qv(st.direction);
    for (auto& x : qv) x = -x;
    return lift(qv);
  }
  std::vector<double> sub_weights = st.weights;  // solver state is reused below
  auto deeper = support_from_weights(sub, k, sub_weights, ws);
  if (!deeper) return std::nullopt;
  return lift(*deeper);
}

std::optional<std::vector<double>> boundary_support(const UnitRowMatrix& A,
                                                    const std::vector<double>& weights,
                                                    WolfeSolver& ws) {
  std::vector<std::vector<double>> rows(A.rows());
  for (int i = 0; i < A.rows(); ++i) {
    auto r = A.row(i);
    rows[i].assign(r.begin(), r.end());
  }
  auto p = support_from_weights(rows, A.dim(), weights, ws);
  if (!p) return std::nullopt;
  double worst = -2.0;
  for (int i = 0; i < A.rows(); ++i) worst = std::max(worst, dot(A.row(i), *p));
  if (worst > 1e-7) return std::nullopt;  // numerics disagree; let Phase I decide
  return p;
}

// deterministic fallback witness center for the (unreachable in the
// sampling model) case where Phase I accepts nothing: best antipode
std::vector<double> best_antipode(const UnitRowMatrix& A) {
  int besti = 0;
  double bestv = 2.0;
  std::vector<double> c(A.dim());
  for (int i = 0; i < A.rows(); ++i) {
    auto ai = A.row(i);
    double worst = -2.0;
    for (int j = 0; j < A.rows(); ++j) {
      double d = -dot(A.row(j), ai);
      if (d > worst) worst = d;
    }
    if (worst < bestv) {
      bestv = worst;
      besti = i;
    }
  }
  auto r = A.row(besti);
  for (int j = 0; j < A.dim(); ++j) c[j] = -r[j];
  return c;
}

}  // namespace

const char* to_string(FeasibilityClass c) { return kClassNames[static_cast<int>(c)]; }

ConditionSolver::PhaseIBest ConditionSolver::enumerate_caps(const UnitRowMatrix& A) {
  const int m = A.dim();
  const int n = A.rows();
  PhaseIBest best;

  comb_.resize(m);
  for (int i = 0; i < m; ++i) comb_[i] = i;
  mat_.resize(static_cast<std::size_t>(m) * m);
  u_.resize(m);
  center_.resize(m);

  while (true) {
    for (int i = 0; i < m; ++i) {
      auto r = A.row(comb_[i]);
      std::copy(r.begin(), r.end(), mat_.begin() + static_cast<std::size_t>(i) * m);
      u_[i] = 1.0;
    }
    if (!lu_solve_inplace(m, mat_.data(), u_.data())) {
      ++best.skipped;
    } else {
      double nu2 = 0.0;
      for (int j = 0; j < m; ++j) nu2 += u_[j] * u_[j];
      if (nu2 >= 1.0) {
        double nu = std::sqrt(nu2);
        double cos_c = 1.0 / nu;
        // a larger radius needs a smaller cosine
        if (!best.found || cos_c < best.cos_radius) {
          double radius = std::acos(std::min(cos_c, 1.0));
          if (!best.found || radius > best.radius + kTieTol) {
            for (int j = 0; j < m; ++j) center_[j] = u_[j] / nu;
            double worst = -2.0;
            for (int i = 0; i < n; ++i) {
              double d = dot(A.row(i), center_);
              if (d > worst) worst = d;
            }
            if (worst <= cos_c + kContainTol) {  // no row strictly inside
              best.found = true;
              best.cos_radius = cos_c;
              best.radius = radius;
              best.center.assign(center_.begin(), center_.end());
              best.subset.assign(comb_.begin(), comb_.end());
            }
          }
        }
      }
    }
    // next combination in lexicographic order
    int i = m - 1;
    while (i >= 0 && comb_[i] == n - m + i) --i;
    if (i < 0) break;
    ++comb_[i];
    for (int j = i + 1; j < m; ++j) comb_[j] = comb_[j - 1] + 1;
  }
  return best;
}

ConditionReport ConditionSolver::classify(const UnitRowMatrix& A) {
  const int m = A.dim();
  const int n = A.rows();
  ConditionReport r;

  const auto& st = wolfe_.solve(n, m, A.raw());
  if (st.distance > kEpsFeas) {
    double d = std::min(st.distance, 1.0);
    r.cls = FeasibilityClass::StrictlyFeasible;
    r.theta = Angle(kPi - std::acos(d));
    r.cond = 1.0 / st.distance;
    r.witness.center.resize(m);
    for (int j = 0; j < m; ++j) r.witness.center[j] = -st.direction[j];
    r.witness.radius = r.theta;
    r.certificate = st.weights;
    return r;
  }

  std::vector<double> weights = st.weights;  // the solver state is reused below
  if (auto p = boundary_support(A, weights, wolfe_)) {
    r.cls = FeasibilityClass::IllPosedNumerical;
    r.theta = Angle(kPi / 2);
    r.cond = std::nullopt;
    r.witness.center = std::move(*p);
    r.witness.radius = r.theta;
    return r;
  }

  if (n < m)
    throw Unsupported("classify_and_condition: infeasible-side enumeration needs n >= m");

  PhaseIBest best = enumerate_caps(A);
  r.singular_subsets_skipped = best.skipped;
  if (!best.found) {
    r.cls = FeasibilityClass::IllPosedNumerical;
    r.theta = Angle(kPi / 2);
    r.cond = std::nullopt;
    r.witness.center = best_antipode(A);
    r.witness.radius = r.theta;
    return r;
  }
  if (best.cos_radius < kEpsIp) {
    r.cls = FeasibilityClass::IllPosedNumerical;
    r.theta = Angle(best.radius);
    r.cond = std::nullopt;
    r.witness.center = std::move(best.center);
    r.witness.radius = r.theta;
    return r;
  }

  r.cls = FeasibilityClass::Infeasible;
  r.theta = Angle(best.radius);
  r.cond = 1.0 / best.cos_radius;
  r.witness.center = std::move(best.center);
  r.witness.radius = r.theta;
  std::vector<int> blocking;
  for (int i = 0; i < n; ++i)
    if (std::abs(dot(A.row(i), r.witness.center) - best.cos_radius) <= 1e-8)
      blocking.push_back(i);
  r.blocking_set = std::move(blocking);
  return r;
}

ConditionSolver::Value ConditionSolver::condition_value(const UnitRowMatrix& A) {
  const int m = A.dim();
  const int n = A.rows();

  const auto& st = wolfe_.solve(n, m, A.raw());
  if (st.distance > kEpsFeas)
    return {FeasibilityClass::StrictlyFeasible, 1.0 / st.distance};

  std::vector<double> weights = st.weights;
  if (boundary_support(A, weights, wolfe_))
    return {FeasibilityClass::IllPosedNumerical,
            std::numeric_limits<double>::infinity()};

  if (n < m)
    throw Unsupported("classify_and_condition: infeasible-side enumeration needs n >= m");

  PhaseIBest best = enumerate_caps(A);
  if (!best.found || best.cos_radius < kEpsIp)
    return {FeasibilityClass::IllPosedNumerical,
            std::numeric_limits<double>::infinity()};
  return {FeasibilityClass::Infeasible, 1.0 / best.cos_radius};
}

ConditionReport classify_and_condition(const UnitRowMatrix& A) {
  ConditionSolver solver;
  return solver.classify(A);
}

bool verify_report(const UnitRowMatrix& A, const ConditionReport& r) {
  const int m = A.dim();
  const int n = A.rows();
  if (static_cast<int>(r.witness.center.size()) != m) return false;
  if (std::abs(norm(r.witness.center) - 1.0) > 1e-9) return false;

  // (a) no row strictly inside the witness cap
  for (int i = 0; i < n; ++i)
    if (cap_contains(r.witness, A.row(i), /*strict=*/true)) return false;

  // cond consistency with theta
  if (r.cls != FeasibilityClass::IllPosedNumerical) {
    if (!r.cond) return false;
    double c = std::abs(std::cos(r.theta.radians()));
    if (c <= 0.0) return false;
    if (std::abs(*r.cond - 1.0 / c) > 1e-9 * (1.0 / c)) return false;
  }

  if (r.cls == FeasibilityClass::Infeasible) {
    // (b) every nonsingular m-subset of the blocking set reproduces the center
    if (!r.blocking_set) return false;
    const auto& blk = *r.blocking_set;
    if (static_cast<int>(blk.size()) < m) return false;
    double cr = r.witness.radius.cos();
    for (int i : blk) {
      if (i < 0 || i >= n) return false;
      if (std::abs(dot(A.row(i), r.witness.center) - cr) > 1e-8) return false;
    }
    std::vector<int> comb(m);
    for (int i = 0; i < m; ++i) comb[i] = i;
    const int B = static_cast<int>(blk.size());
    while (true) {
      std::vector<int> subset(m);
      for (int i = 0; i < m; ++i) subset[i] = blk[comb[i]];
      try {
        SubsetSolve s = subset_solve(A, subset);
        if (!s.candidate_radius) return false;
        double diff = 0.0;
        for (int j = 0; j < m; ++j) {
          double d = s.center[j] - r.witness.center[j];
          diff += d * d;
        }
        if (std::sqrt(diff) > 1e-7) return false;
      } catch (const SingularSubset&) {
        // skipped by contract
      }
      int i = m - 1;
      while (i >= 0 && comb[i] == B - m + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
    }
  }

  if (r.cls == FeasibilityClass::StrictlyFeasible) {
    // (c) support inequality at the SCP center
    double target = std::cos(kPi - r.theta.radians());
    for (int i = 0; i < n; ++i) {
      double d = -dot(A.row(i), r.witness.center);
      if (d < target - 1e-8) return false;
    }
  }

  // (d) the oracle cannot find a larger theta
  Angle oracle = theta_oracle_grid(A, 100000);
  if (oracle.radians() > r.theta.radians() + 1e-3) return false;

  return true;
}

}  // namespace conic
