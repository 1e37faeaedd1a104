#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "conic/bounds.hpp"
#include "conic/montecarlo.hpp"
#include "conic/serialize.hpp"
#include "conic/sphere_geometry.hpp"

using namespace conic;

TEST_CASE("sample_uniform_rows: unit rows, symmetry, cap frequencies") {
  auto rng = trial_stream(kDefaultSeed, 0);
  const int m = 3;
  const long N = 200000;
  std::vector<double> coord_sum(m, 0.0);
  long in_cap[3] = {0, 0, 0};
  const double radii[3] = {kPi / 4, kPi / 2, 3 * kPi / 4};
  for (long i = 0; i < N; ++i) {
    auto A = sample_uniform_rows(m, 1, rng);
    auto r = A.row(0);
    double nrm2 = 0.0;
    for (int j = 0; j < m; ++j) nrm2 += r[j] * r[j];
    CHECK(std::abs(std::sqrt(nrm2) - 1.0) <= 1e-12);
    for (int j = 0; j < m; ++j) coord_sum[j] += r[j];
    for (int k = 0; k < 3; ++k)
      if (r[0] >= std::cos(radii[k])) ++in_cap[k];
  }
  // coordinate means within 4 sigma of 0 (sigma ~ 1/sqrt(m N))
  double sigma = 1.0 / std::sqrt(static_cast<double>(m) * N);
  for (int j = 0; j < m; ++j) CHECK(std::abs(coord_sum[j] / N) <= 4.5 * sigma);
  // cap frequencies within 4 sigma of the exact measure
  for (int k = 0; k < 3; ++k) {
    double p = cap_measure(m, Angle(radii[k]));
    double freq = static_cast<double>(in_cap[k]) / N;
    double sd = std::sqrt(p * (1.0 - p) / N);
    CHECK(std::abs(freq - p) <= 4.5 * sd);
  }
}

TEST_CASE("run config validation") {
  RunConfig cfg;
  cfg.t_grid = {1.0, 2.0, 2.0};
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg.t_grid = {0.5, 2.0};
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg.t_grid = {1.0, 2.0};
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("tail_experiment: structure and envelope") {
  RunConfig cfg;
  cfg.m = 3;
  cfg.n = 6;
  cfg.trials = 20000;
  cfg.seed = 42;
  cfg.t_grid = {1.0, 2.0, 5.0, 10.0, 20.0, 40.0};
  cfg.workers = 2;
  auto res = tail_experiment(cfg);

  CHECK(res.curve.survival[0] == 1.0);  // C >= 1 always
  for (std::size_t j = 1; j < res.curve.survival.size(); ++j)
    CHECK(res.curve.survival[j] <= res.curve.survival[j - 1]);
  for (std::size_t j = 0; j < res.curve.survival.size(); ++j) {
    CHECK(res.curve.ci_low[j] <= res.curve.survival[j]);
    CHECK(res.curve.survival[j] <= res.curve.ci_high[j]);
    CHECK(res.curve.survival[j] <= res.curve.upper_envelope[j]);
    CHECK(res.curve.t_times_p[j] ==
          res.curve.t_grid[j] * res.curve.survival[j]);
  }
  CHECK(res.aborted == 0);
  CHECK(static_cast<long>(res.log_cond.size()) + res.ill_posed == cfg.trials);
}

TEST_CASE("decay_slope on synthetic exponential curves") {
  TailCurve curve;
  curve.trials = 1000000;
  for (double t = 1.0; t <= 5.0; t += 0.5) {
    curve.t_grid.push_back(std::exp(t));
    curve.survival.push_back(std::exp(-t));
  }
  auto fit = decay_slope(curve, 1.0, 5.0);
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));

  TailCurve steep;
  steep.trials = 100000000;
  for (double t = 1.0; t <= 5.0; t += 0.5) {
    steep.t_grid.push_back(std::exp(t));
    steep.survival.push_back(std::exp(-2.0 * t));
  }
  auto fit2 = decay_slope(steep, 1.0, 5.0);
  CHECK(fit2.slope == doctest::Approx(-2.0).epsilon(1e-12));

  // insufficient exceedances
  TailCurve thin;
  thin.trials = 100;
  for (double t = 1.0; t <= 5.0; t += 0.5) {
    thin.t_grid.push_back(std::exp(t));
    thin.survival.push_back(std::exp(-t));
  }
  CHECK_THROWS_AS(decay_slope(thin, 1.0, 5.0), InsufficientTailData);
}

TEST_CASE("moment_experiment basics") {
  RunConfig cfg;
  cfg.m = 3;
  cfg.n = 6;
  cfg.trials = 4000;
  cfg.seed = 7;
  cfg.workers = 2;

  SUBCASE("log C moments sit below their bounds") {
    cfg.gamma_list = {1.0, 2.0};
    auto rows = moment_experiment(cfg, MomentOf::LogC);
    REQUIRE(rows.size() == 2);
    for (const auto& e : rows) {
      REQUIRE(e.bound_estimates.has_value());
      REQUIRE(e.bound_polycor.has_value());
      CHECK(e.mean < *e.bound_estimates);
      CHECK(e.mean < *e.bound_polycor);
      CHECK(e.stderr_mean >= 0.0);
    }
  }
  SUBCASE("zeroth moment of C is exactly 1") {
    cfg.gamma_list = {0.0};
    auto rows = moment_experiment(cfg, MomentOf::C);
    CHECK(rows[0].mean == 1.0);
    CHECK(rows[0].stderr_mean == 0.0);
  }
  SUBCASE("gamma >= 1 for C refuses") {
    cfg.gamma_list = {0.5, 1.0};
    CHECK_THROWS_AS(moment_experiment(cfg, MomentOf::C), MomentDivergent);
  }
  SUBCASE("fractional moment of C carries the CORI bound") {
    cfg.gamma_list = {0.5};
    auto rows = moment_experiment(cfg, MomentOf::C);
    REQUIRE(rows[0].bound_cori.has_value());
    CHECK(rows[0].mean < *rows[0].bound_cori);
  }
}

TEST_CASE("limit_experiment_n decreases and approaches 1") {
  auto rows = limit_experiment_n(3, {8, 32}, 300, 11, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mean_log_cond > rows[1].mean_log_cond);
  CHECK(rows[1].frac_strictly_feasible < rows[0].frac_strictly_feasible + 0.05);
  CHECK(rows[1].median_cond > 1.0);
  CHECK(rows[1].mean_sqrt_cond > 1.0);
  CHECK_THROWS_AS(limit_experiment_n(3, {32, 8}, 10, 1, 1), InvalidInput);
  CHECK_THROWS_AS(limit_experiment_n(2, {8}, 10, 1, 1), InvalidInput);
}

TEST_CASE("limit_experiment_m: n = 5m lowers the mean and /m stays under log 2") {
  auto equal_m = limit_experiment_m({3, 4}, NRule::EqualM, 400, 3, 2);
  auto five_m = limit_experiment_m({3, 4}, NRule::FiveM, 400, 3, 2);
  for (std::size_t i = 0; i < equal_m.size(); ++i) {
    CHECK(five_m[i].mean_log_cond < equal_m[i].mean_log_cond);
    CHECK(equal_m[i].mean_log_cond_over_m <
          std::log(2.0) + 3.0 * equal_m[i].stderr_over_m);
  }
  CHECK_THROWS_AS(limit_experiment_m({2}, NRule::EqualM, 10, 1, 1), InvalidInput);
  // budget guard: binom(80, 16) is astronomically over 10^7
  CHECK_THROWS_AS(limit_experiment_m({16}, NRule::FiveM, 1, 1, 1), BudgetExceeded);
}

TEST_CASE("lemma_iv_experiment frequencies clear the 2^(-(2+m(m-1))/2) bound") {
  for (int m : {2, 3}) {
    auto res = lemma_iv_experiment(m, 20000, 5, 2);
    double sigma = std::sqrt(res.frequency * (1.0 - res.frequency) / res.trials);
    CHECK(res.frequency >= res.bound - 3.0 * sigma);
    CHECK(res.ci.low <= res.frequency);
    CHECK(res.frequency <= res.ci.high);
  }
  // m = 2 has closed-form frequency 1/2 (independent rows at angle >= pi/2)
  auto r2 = lemma_iv_experiment(2, 50000, 123, 2);
  CHECK(std::abs(r2.frequency - 0.5) <= 0.01);
  CHECK_THROWS_AS(lemma_iv_experiment(1, 100, 1, 1), InvalidInput);
  CHECK_THROWS_AS(lemma_iv_experiment(7, 100, 1, 1), InvalidInput);
}

TEST_CASE("concentration_table: deterministic entries plus one empirical cell") {
  auto table = concentration_table({0.5}, {10, 20}, std::make_pair(10, 0.5), 50000, 9);
  REQUIRE(table.rows.size() == 2);
  const auto& cell = table.rows[0];
  CHECK(cell.ratio == doctest::Approx(0.450827222343903026).epsilon(1e-10));
  REQUIRE(cell.empirical.has_value());
  REQUIRE(cell.empirical_ci.has_value());
  CHECK(cell.empirical_ci->low <= cell.ratio);
  CHECK(cell.ratio <= cell.empirical_ci->high);
  CHECK_FALSE(table.rows[1].empirical.has_value());
  for (const auto& r : table.rows) CHECK(r.ratio < 0.5);
}

TEST_CASE("perceptron_benchmark honours the bound and the budget") {
  auto bench = perceptron_benchmark(3, 5, 400, 77, 2);
  CHECK(bench.violations == 0);
  CHECK(bench.unsolved == 0);
  CHECK(bench.strictness_failures == 0);
  // acceptance rate close to the exact halfspace probability 11/16
  double p = 11.0 / 16.0;
  double sigma = std::sqrt(p * (1 - p) / static_cast<double>(bench.attempts));
  CHECK(std::abs(bench.acceptance_rate - p) <= 5.0 * sigma + 0.01);
  for (long i = 0; i < bench.trials; ++i) {
    CHECK(bench.iterations_first[i] <= static_cast<long>(bench.bound[i]));
    CHECK(bench.iterations_max[i] <= static_cast<long>(bench.bound[i]));
  }
}

TEST_CASE("worker count never changes any output byte") {
  RunConfig cfg;
  cfg.m = 3;
  cfg.n = 5;
  cfg.trials = 3000;
  cfg.seed = 314159;
  cfg.t_grid = {1.0, 2.0, 5.0, 10.0};

  cfg.workers = 1;
  auto res1 = tail_experiment(cfg);
  cfg.workers = 2;
  auto res2 = tail_experiment(cfg);
  cfg.workers = 7;
  auto res7 = tail_experiment(cfg);
  CHECK(tails_to_csv(res1) == tails_to_csv(res2));
  CHECK(tails_to_csv(res1) == tails_to_csv(res7));
  CHECK(tails_to_json(res1).dump() == tails_to_json(res7).dump());

  auto ln1 = limit_experiment_n(3, {4, 8}, 500, 2718, 1);
  auto ln3 = limit_experiment_n(3, {4, 8}, 500, 2718, 3);
  CHECK(limits_n_to_csv(3, 500, 2718, ln1) == limits_n_to_csv(3, 500, 2718, ln3));

  auto b1 = perceptron_benchmark(3, 5, 200, 1, 1);
  auto b4 = perceptron_benchmark(3, 5, 200, 1, 4);
  CHECK(perceptron_bench_to_csv(b1) == perceptron_bench_to_csv(b4));

  auto l1 = lemma_iv_experiment(3, 5000, 99, 1);
  auto l2 = lemma_iv_experiment(3, 5000, 99, 2);
  CHECK(lemma_iv_to_csv(99, l1) == lemma_iv_to_csv(99, l2));
}

TEST_CASE("trial randomness is a pure function of (seed, index)") {
  auto a = trial_stream(42, 17);
  auto b = trial_stream(42, 17);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  auto c = trial_stream(42, 18);
  bool differs = false;
  auto d = trial_stream(42, 17);
  for (int i = 0; i < 4; ++i) differs |= (c.next() != d.next());
  CHECK(differs);
}
