#include "conic/min_norm.hpp"

#include <algorithm>
#include <cmath>

#include "conic/angle.hpp"
#include "conic/linalg.hpp"

namespace conic {

namespace {
constexpr int kMajorCap = 10000;
constexpr double kCoordTol = 1e-14;
}  // namespace

const WolfeSolver::State& WolfeSolver::solve(int n, int m, const double* pts) {
  if (n < 1) throw InvalidInput("min_norm_point: need at least one point");

  auto point = [&](int i) { return pts + static_cast<std::size_t>(i) * m; };

  // start from the point of smallest norm (lowest index on ties)
  int j0 = 0;
  double best = 0.0;
  for (int j = 0; j < m; ++j) best += point(0)[j] * point(0)[j];
  for (int i = 1; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += point(i)[j] * point(i)[j];
    if (s < best) {
      best = s;
      j0 = i;
    }
  }

  corral_.assign(1, j0);
  lam_.assign(1, 1.0);
  st_.x.assign(point(j0), point(j0) + m);
  dots_.resize(n);

  auto set_x_from_corral = [&]() {
    std::fill(st_.x.begin(), st_.x.end(), 0.0);
    for (std::size_t c = 0; c < corral_.size(); ++c) {
      const double* p = point(corral_[c]);
      for (int j = 0; j < m; ++j) st_.x[j] += lam_[c] * p[j];
    }
  };

  // min-norm point of the affine hull of the corral, via the bordered
  // system [[0, 1^T], [1, G]] [mu; beta] = [1; 0]; false if degenerate.
  auto affine_min_norm = [&]() -> bool {
    int k = static_cast<int>(corral_.size());
    bmat_.assign(static_cast<std::size_t>(k + 1) * (k + 1), 0.0);
    brhs_.assign(k + 1, 0.0);
    brhs_[0] = 1.0;
    for (int a = 0; a < k; ++a) {
      bmat_[static_cast<std::size_t>(a + 1)] = 1.0;
      bmat_[static_cast<std::size_t>(a + 1) * (k + 1)] = 1.0;
      const double* pa = point(corral_[a]);
      for (int b = a; b < k; ++b) {
        const double* pb = point(corral_[b]);
        double g = 0.0;
        for (int j = 0; j < m; ++j) g += pa[j] * pb[j];
        bmat_[static_cast<std::size_t>(a + 1) * (k + 1) + (b + 1)] = g;
        bmat_[static_cast<std::size_t>(b + 1) * (k + 1) + (a + 1)] = g;
      }
    }
    if (!lu_solve_inplace(k + 1, bmat_.data(), brhs_.data(), 1e-14)) return false;
    beta_.assign(brhs_.begin() + 1, brhs_.end());
    return true;
  };

  bool converged = false;
  for (int major = 0; major < kMajorCap && !converged; ++major) {
    double xx = 0.0;
    for (int j = 0; j < m; ++j) xx += st_.x[j] * st_.x[j];
    double xnorm = std::sqrt(xx);

    int jmin = 0;
    for (int i = 0; i < n; ++i) {
      const double* p = point(i);
      double d = 0.0;
      for (int j = 0; j < m; ++j) d += p[j] * st_.x[j];
      dots_[i] = d;
      if (d < dots_[jmin]) jmin = i;
    }
    if (dots_[jmin] >= xx - (1e-10 * xnorm + 1e-15)) {
      converged = true;
      break;
    }
    if (std::find(corral_.begin(), corral_.end(), jmin) != corral_.end()) {
      converged = true;  // no further progress possible at roundoff level
      break;
    }

    corral_.push_back(jmin);
    lam_.push_back(0.0);

    const int minor_cap = 3 * (m + 2);
    for (int minor = 0; minor < minor_cap; ++minor) {
      if (!affine_min_norm()) {
        // degenerate corral: the new point adds nothing representable
        corral_.pop_back();
        lam_.pop_back();
        converged = true;
        break;
      }
      bool interior = true;
      for (double b : beta_)
        if (b <= kCoordTol) {
          interior = false;
          break;
        }
      if (interior) {
        lam_ = beta_;
        set_x_from_corral();
        break;
      }

      // move toward beta until the first weight hits zero, then drop
      double theta = 1.0;
      for (std::size_t c = 0; c < beta_.size(); ++c) {
        if (beta_[c] <= kCoordTol && lam_[c] > beta_[c]) {
          double t = lam_[c] / (lam_[c] - beta_[c]);
          if (t < theta) theta = t;
        }
      }
      double lsum = 0.0;
      for (std::size_t c = 0; c < lam_.size(); ++c) {
        lam_[c] = (1.0 - theta) * lam_[c] + theta * beta_[c];
        if (lam_[c] < kCoordTol) lam_[c] = 0.0;
        lsum += lam_[c];
      }
      std::size_t w = 0;
      for (std::size_t c = 0; c < corral_.size(); ++c) {
        if (lam_[c] > 0.0) {
          corral_[w] = corral_[c];
          lam_[w] = lam_[c] / lsum;
          ++w;
        }
      }
      if (w == 0) {  // cannot happen for a convex update; keep the newest
        corral_[0] = corral_.back();
        lam_[0] = 1.0;
        w = 1;
      }
      corral_.resize(w);
      lam_.resize(w);
      set_x_from_corral();
    }
  }
  if (!converged) throw NoConvergence("min_norm_point: major cycle cap exceeded");

  st_.distance = 0.0;
  for (int j = 0; j < m; ++j) st_.distance += st_.x[j] * st_.x[j];
  st_.distance = std::sqrt(st_.distance);
  st_.weights.assign(n, 0.0);
  for (std::size_t c = 0; c < corral_.size(); ++c) st_.weights[corral_[c]] = lam_[c];
  st_.has_direction = st_.distance > 1e-9;
  if (st_.has_direction) {
    st_.direction.resize(m);
    for (int j = 0; j < m; ++j) st_.direction[j] = st_.x[j] / st_.distance;
  }
  return st_;
}

MinNormResult min_norm_point(int n, int m, const double* pts) {
  WolfeSolver solver;
  const auto& st = solver.solve(n, m, pts);
  MinNormResult r;
  r.distance = st.distance;
  r.weights = st.weights;
  if (st.has_direction) r.direction = st.direction;
  return r;
}

MinNormResult min_norm_point(const UnitRowMatrix& A) {
  return min_norm_point(A.rows(), A.dim(), A.raw());
}

}  // namespace conic
