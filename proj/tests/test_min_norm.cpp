#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "conic/angle.hpp"
#include "conic/min_norm.hpp"
#include "conic/oracles.hpp"
#include "support/oracles.hpp"

using conic::min_norm_point;
using conic::UnitRowMatrix;

TEST_CASE("min_norm_point on canonical configurations") {
  SUBCASE("standard basis: centroid") {
    for (int m : {2, 3, 5}) {
      std::vector<double> pts(static_cast<std::size_t>(m) * m, 0.0);
      for (int i = 0; i < m; ++i) pts[static_cast<std::size_t>(i) * m + i] = 1.0;
      auto r = min_norm_point(m, m, pts.data());
      CHECK(r.distance == doctest::Approx(1.0 / std::sqrt(m)).epsilon(1e-10));
      for (double w : r.weights) CHECK(w == doctest::Approx(1.0 / m).epsilon(1e-8));
      REQUIRE(r.direction.has_value());
      // support inequality certifies optimality
      for (int i = 0; i < m; ++i) {
        double d = (*r.direction)[i];
        CHECK(d >= r.distance - 1e-8);
      }
    }
  }
  SUBCASE("antipodal pair: zero in the hull") {
    std::vector<double> pts{1, 0, -1, 0};
    auto r = min_norm_point(2, 2, pts.data());
    CHECK(r.distance <= 1e-12);
    CHECK_FALSE(r.direction.has_value());
  }
  SUBCASE("single point") {
    std::vector<double> pts{0, 1};
    auto r = min_norm_point(1, 2, pts.data());
    CHECK(r.distance == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.weights[0] == 1.0);
  }
}

TEST_CASE("min_norm_point matches the 2-D angular scan oracle") {
  testsupport::TestRng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 3 + static_cast<int>(rng.next() % 18);  // up to 20 points
    std::vector<std::vector<double>> pts;
    std::vector<double> flat;
    for (int i = 0; i < n; ++i) {
      auto v = rng.unit_vector(2);
      pts.push_back(v);
      flat.insert(flat.end(), v.begin(), v.end());
    }
    auto r = min_norm_point(n, 2, flat.data());
    double ref = testsupport::min_norm_scan_2d(pts, 400000);
    CHECK(std::abs(r.distance - ref) <= 1e-6);
  }
}

TEST_CASE("min_norm_point invariances") {
  testsupport::TestRng rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    int m = 2 + static_cast<int>(rng.next() % 4);
    int n = 2 + static_cast<int>(rng.next() % 10);
    std::vector<double> flat;
    for (int i = 0; i < n; ++i) {
      auto v = rng.unit_vector(m);
      flat.insert(flat.end(), v.begin(), v.end());
    }
    auto base = min_norm_point(n, m, flat.data());

    // permutation of the points
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.next() % (i + 1)]);
    std::vector<double> permuted(flat.size());
    for (int i = 0; i < n; ++i)
      std::copy(flat.begin() + perm[i] * m, flat.begin() + (perm[i] + 1) * m,
                permuted.begin() + static_cast<std::size_t>(i) * m);
    auto p = min_norm_point(n, m, permuted.data());
    CHECK(std::abs(p.distance - base.distance) <= 1e-10);

    // common orthogonal transforms: Householder reflection by a random unit v
    auto v = rng.unit_vector(m);
    std::vector<double> reflected(flat.size());
    for (int i = 0; i < n; ++i) {
      const double* src = flat.data() + static_cast<std::size_t>(i) * m;
      double c = 0.0;
      for (int j = 0; j < m; ++j) c += src[j] * v[j];
      for (int j = 0; j < m; ++j)
        reflected[static_cast<std::size_t>(i) * m + j] = src[j] - 2.0 * c * v[j];
    }
    auto h = min_norm_point(n, m, reflected.data());
    CHECK(std::abs(h.distance - base.distance) <= 1e-10);

    // weights stay on the simplex and reproduce the distance
    double wsum = 0.0;
    std::vector<double> combo(m, 0.0);
    for (int i = 0; i < n; ++i) {
      CHECK(base.weights[i] >= 0.0);
      wsum += base.weights[i];
      for (int j = 0; j < m; ++j)
        combo[j] += base.weights[i] * flat[static_cast<std::size_t>(i) * m + j];
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(conic::norm(combo) == doctest::Approx(base.distance).epsilon(1e-9));
  }
}

TEST_CASE("min_norm distance equals the SCP cosine on feasible 2-D instances") {
  testsupport::TestRng rng(31);
  int done = 0;
  while (done < 40) {
    int n = 2 + static_cast<int>(rng.next() % 8);
    std::vector<double> flat;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < n; ++i) {
      auto v = rng.unit_vector(2);
      rows.push_back(v);
      flat.insert(flat.end(), v.begin(), v.end());
    }
    auto r = min_norm_point(n, 2, flat.data());
    if (r.distance <= 1e-6) continue;  // want strictly feasible instances
    auto A = UnitRowMatrix::from_unit_rows(2, n, std::move(flat));
    double theta = conic::theta_oracle_2d(A).radians();
    CHECK(std::abs(r.distance - std::max(0.0, -std::cos(theta))) <= 1e-8);
    ++done;
  }
}
