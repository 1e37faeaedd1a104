#include "conic/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "conic/rng.hpp"

namespace conic {

Angle theta_oracle_2d(const UnitRowMatrix& A) {
  if (A.dim() != 2) throw InvalidInput("theta_oracle_2d: requires m = 2");
  const int n = A.rows();
  std::vector<double> ang(n);
  for (int i = 0; i < n; ++i) {
    auto r = A.row(i);
    ang[i] = std::atan2(r[1], r[0]);
  }
  std::sort(ang.begin(), ang.end());
  if (n == 1) return Angle(kPi);
  double largest = 2.0 * kPi - (ang[n - 1] - ang[0]);  // wrap-around gap
  for (int i = 1; i < n; ++i) largest = std::max(largest, ang[i] - ang[i - 1]);
  return Angle(std::min(largest / 2.0, kPi));
}

namespace {

// largest dot product against any row; minimising this maximises the
// min angle
double max_dot(const UnitRowMatrix& A, const std::vector<double>& x) {
  double best = -2.0;
  for (int i = 0; i < A.rows(); ++i) {
    double d = dot(A.row(i), x);
    if (d > best) best = d;
  }
  return best;
}

void normalize(std::vector<double>& v) {
  double s = norm(v);
  for (auto& x : v) x /= s;
}

// orthonormal tangent basis at unit x, from canonical vectors
std::vector<std::vector<double>> tangent_basis(const std::vector<double>& x) {
  const std::size_t m = x.size();
  std::vector<std::vector<double>> basis;
  basis.push_back(x);
  for (std::size_t j = 0; j < m && basis.size() < m; ++j) {
    std::vector<double> r(m, 0.0);
    r[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : basis) {
        double c = dot(r, e);
        for (std::size_t t = 0; t < m; ++t) r[t] -= c * e[t];
      }
    double nrm = norm(r);
    if (nrm > 1e-8) {
      for (auto& v : r) v /= nrm;
      basis.push_back(std::move(r));
    }
  }
  basis.erase(basis.begin());
  return basis;
}

// pattern-search ascent with step halving.  In the first two tangent
// coordinates eight directions 45 degrees apart are tried, rotated by
// the golden angle between iterations, so a narrow ascent cone along an
// active-set ridge is eventually entered.  Returns the final max-dot.
double polish(const UnitRowMatrix& A, std::vector<double>& x, double value) {
  double step = 0.1;
  std::vector<double> cand(x.size());
  for (int iter = 0; iter < 200 && step > 1e-13; ++iter) {
    auto tb = tangent_basis(x);
    const std::size_t k = tb.size();
    std::vector<std::vector<double>> dirs;
    if (k == 1) {
      dirs.push_back(tb[0]);
      std::vector<double> neg = tb[0];
      for (auto& v : neg) v = -v;
      dirs.push_back(std::move(neg));
    } else {
      double base = 2.399963229728653 * iter;  // golden angle
      for (int d = 0; d < 8; ++d) {
        double a = base + d * (kPi / 4.0);
        double ca = std::cos(a), sa = std::sin(a);
        std::vector<double> dir(x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
          dir[j] = ca * tb[0][j] + sa * tb[1][j];
        dirs.push_back(std::move(dir));
      }
      for (std::size_t extra = 2; extra < k; ++extra) {
        dirs.push_back(tb[extra]);
        std::vector<double> neg = tb[extra];
        for (auto& v : neg) v = -v;
        dirs.push_back(std::move(neg));
      }
    }
    bool improved = false;
    double cs = std::cos(step), sn = std::sin(step);
    for (const auto& dir : dirs) {
      for (std::size_t j = 0; j < x.size(); ++j) cand[j] = cs * x[j] + sn * dir[j];
      normalize(cand);
      double v = max_dot(A, cand);
      if (v < value - 1e-15) {
        value = v;
        x = cand;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return value;
}

double geodesic(const std::vector<double>& a, const std::vector<double>& b) {
  return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

}  // namespace

Angle theta_oracle_grid(const UnitRowMatrix& A, long budget) {
  if (budget < 1000) throw InvalidInput("theta_oracle_grid: budget must be >= 1000");
  const int m = A.dim();

  // generate the point set and the objective on it
  std::vector<double> pts(static_cast<std::size_t>(budget) * m);
  std::vector<double> val(budget);
  std::vector<double> x(m);

  auto put = [&](long i) {
    std::copy(x.begin(), x.end(), pts.begin() + static_cast<std::size_t>(i) * m);
  };

  if (m == 2) {
    for (long i = 0; i < budget; ++i) {
      double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(budget);
      x[0] = std::cos(a);
      x[1] = std::sin(a);
      put(i);
    }
  } else if (m == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (long i = 0; i < budget; ++i) {
      double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(budget);
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double a = golden * static_cast<double>(i);
      x[0] = r * std::cos(a);
      x[1] = r * std::sin(a);
      x[2] = z;
      put(i);
    }
  } else {
    Xoshiro256pp rng(0x0C0FFEE5EEDULL);  // fixed: the oracle is deterministic
    GaussianSampler g(rng);
    for (long i = 0; i < budget; ++i) {
      double s = 0.0;
      do {
        s = 0.0;
        for (int j = 0; j < m; ++j) {
          x[j] = g.next();
          s += x[j] * x[j];
        }
      } while (s == 0.0);
      s = std::sqrt(s);
      for (auto& v : x) v /= s;
      put(i);
    }
  }

  double best_coarse = 2.0;
  for (long i = 0; i < budget; ++i) {
    std::copy(pts.begin() + static_cast<std::size_t>(i) * m,
              pts.begin() + static_cast<std::size_t>(i + 1) * m, x.begin());
    val[i] = max_dot(A, x);
    best_coarse = std::min(best_coarse, val[i]);
  }

  // covering radius estimate of the point set
  double cover;
  if (m == 2)
    cover = kPi / static_cast<double>(budget);
  else if (m == 3)
    cover = 2.0 * std::sqrt(4.0 * kPi / static_cast<double>(budget));
  else
    cover = 3.0 * std::pow(static_cast<double>(budget), -1.0 / (m - 1));

  // multi-start: polish well-separated candidates whose coarse angle is
  // within a few covering radii of the best; the basin of the global
  // maximiser always contains the grid point nearest to it
  double angle_best = std::acos(std::clamp(best_coarse, -1.0, 1.0));
  double angle_floor = angle_best - 3.5 * cover;
  std::vector<long> order(budget);
  std::iota(order.begin(), order.end(), 0L);
  std::sort(order.begin(), order.end(),
            [&](long a, long b) { return val[a] < val[b]; });

  std::vector<std::vector<double>> starts;
  for (long idx : order) {
    double ang = std::acos(std::clamp(val[idx], -1.0, 1.0));
    if (ang < angle_floor) break;
    std::vector<double> p(pts.begin() + static_cast<std::size_t>(idx) * m,
                          pts.begin() + static_cast<std::size_t>(idx + 1) * m);
    bool separated = true;
    for (const auto& s : starts)
      if (geodesic(s, p) < 1.25 * cover) {
        separated = false;
        break;
      }
    if (separated) starts.push_back(std::move(p));
    if (starts.size() >= 48) break;
  }

  double best = 2.0;
  for (auto& s : starts) {
    double v = polish(A, s, max_dot(A, s));
    best = std::min(best, v);
  }
  return Angle(std::acos(std::clamp(best, -1.0, 1.0)));
}

}  // namespace conic
