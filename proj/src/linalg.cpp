#include "conic/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace conic {

bool lu_solve_inplace(int k, double* a, double* b, double pivot_tol) {
  for (int col = 0; col < k; ++col) {
    int piv = col;
    double best = std::abs(a[col * k + col]);
    for (int r = col + 1; r < k; ++r) {
      double v = std::abs(a[r * k + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < pivot_tol) return false;
    if (piv != col) {
      for (int j = 0; j < k; ++j) std::swap(a[piv * k + j], a[col * k + j]);
      std::swap(b[piv], b[col]);
    }
    double d = a[col * k + col];
    for (int r = col + 1; r < k; ++r) {
      double f = a[r * k + col] / d;
      if (f == 0.0) continue;
      for (int j = col + 1; j < k; ++j) a[r * k + j] -= f * a[col * k + j];
      b[r] -= f * b[col];
    }
  }
  for (int r = k - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < k; ++j) s -= a[r * k + j] * b[j];
    b[r] = s / a[r * k + r];
  }
  return true;
}

SubsetSolve subset_solve(const UnitRowMatrix& A, std::span<const int> S) {
  const int m = A.dim();
  if (static_cast<int>(S.size()) != m)
    throw InvalidInput("subset_solve: subset size must equal m");
  std::vector<int> idx(S.begin(), S.end());
  std::sort(idx.begin(), idx.end());
  for (int i = 0; i < m; ++i) {
    if (idx[i] < 0 || idx[i] >= A.rows())
      throw InvalidInput("subset_solve: index out of range");
    if (i > 0 && idx[i] == idx[i - 1])
      throw InvalidInput("subset_solve: indices must be distinct");
  }

  std::vector<double> mat(static_cast<std::size_t>(m) * m);
  std::vector<double> rhs(m, 1.0);
  for (int i = 0; i < m; ++i) {
    auto r = A.row(idx[i]);
    std::copy(r.begin(), r.end(), mat.begin() + static_cast<std::size_t>(i) * m);
  }
  if (!lu_solve_inplace(m, mat.data(), rhs.data()))
    throw SingularSubset("subset_solve: A_S is singular");

  SubsetSolve out;
  out.subset = std::move(idx);
  out.u = std::move(rhs);
  out.norm_u = norm(out.u);

  // residual check ||A_S u - e|| <= 1e-9 ||u||
  double res2 = 0.0;
  for (int i = 0; i < m; ++i) {
    double d = dot(A.row(out.subset[i]), out.u) - 1.0;
    res2 += d * d;
  }
  if (std::sqrt(res2) > 1e-9 * std::max(1.0, out.norm_u))
    throw SingularSubset("subset_solve: residual too large, treating A_S as singular");

  if (out.norm_u > 0.0) {
    out.center.resize(m);
    for (int j = 0; j < m; ++j) out.center[j] = out.u[j] / out.norm_u;
  }
  if (out.norm_u >= 1.0)
    out.candidate_radius = Angle(std::acos(1.0 / out.norm_u));
  return out;
}

std::vector<std::vector<double>> gram_schmidt_basis(
    const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) return {};
  const std::size_t m = vectors[0].size();
  if (vectors.size() > m)
    throw InvalidInput("gram_schmidt_basis: more vectors than dimensions");
  std::vector<std::vector<double>> basis;
  basis.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != m) throw InvalidInput("gram_schmidt_basis: ragged input");
    std::vector<double> r = v;
    // re-orthogonalise twice to keep pairwise dots at roundoff level
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : basis) {
        double c = dot(r, e);
        for (std::size_t j = 0; j < m; ++j) r[j] -= c * e[j];
      }
    }
    double nrm = norm(r);
    if (nrm < 1e-10) throw DependentSet("gram_schmidt_basis: dependent input");
    for (auto& x : r) x /= nrm;
    if (dot(r, v) < 0.0)
      for (auto& x : r) x = -x;
    basis.push_back(std::move(r));
  }
  return basis;
}

}  // namespace conic
