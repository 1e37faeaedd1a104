#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "conic/condition.hpp"
#include "conic/rng.hpp"
#include "conic/stats.hpp"
#include "conic/unit_row_matrix.hpp"

namespace conic {

// Everything that determines an experiment's output.  `workers` only
// controls scheduling: results are bit-identical for any worker count,
// because trial i draws from an independent stream keyed by (seed, i)
// and reductions run sequentially over a pre-indexed buffer.
struct RunConfig {
  int m = 3;
  int n = 6;
  long trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<double> t_grid;
  std::vector<double> gamma_list;
  int workers = 1;

  void validate() const;
};

// n rows of m independent standard normals, each normalised to unit
// length; a zero-norm draw is redrawn.
UnitRowMatrix sample_uniform_rows(int m, int n, Xoshiro256pp& stream);

struct TailCurve {
  std::vector<double> t_grid;
  std::vector<double> survival;
  std::vector<double> ci_low, ci_high;      // Wilson 99%
  std::vector<double> upper_envelope;       // clamped tail bound
  std::vector<double> t_times_p;
  long trials = 0;                          // completed trials
};

struct TailExperimentResult {
  RunConfig cfg;
  TailCurve curve;
  std::vector<double> log_cond;  // finite-condition samples, trial order
  long ill_posed = 0;
  long aborted = 0;
};

// Ill-posed trials count as exceeding every threshold; aborted trials
// above 0.1% fail the run.
TailExperimentResult tail_experiment(const RunConfig& cfg);

// Weighted regression of ln P[log C >= t] against t over grid points
// whose log-threshold lies in [t_min, t_max]; needs >= 4 such points
// with >= 50 exceedances each.
SlopeFit decay_slope(const TailCurve& curve, double t_min, double t_max);

enum class MomentOf { LogC, C };

struct MomentEstimate {
  double gamma = 0.0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::optional<double> bound_estimates;
  std::optional<double> bound_polycor;
  std::optional<double> bound_cori;
};

// Sample moments of (log C)^gamma or C^gamma; ill-posed trials are
// excluded from the means and counted.  For MomentOf::C every gamma
// must be < 1 (the first moment is infinite).
std::vector<MomentEstimate> moment_experiment(const RunConfig& cfg, MomentOf of);

struct LimitNRow {
  int n = 0;
  double mean_log_cond = 0.0;
  double stderr_log_cond = 0.0;
  double mean_sqrt_cond = 0.0;
  double median_cond = 0.0;
  double frac_strictly_feasible = 0.0;
};

// Fixed m, growing n.  Each trial draws max(n_list) rows once and
// classifies every prefix, mirroring the nested sequence A^[n].
std::vector<LimitNRow> limit_experiment_n(int m, const std::vector<int>& n_list,
                                          long trials, std::uint64_t seed, int workers);

enum class NRule { EqualM, FiveM };

struct LimitMRow {
  int m = 0;
  int n = 0;
  double mean_log_cond = 0.0;
  double stderr_log_cond = 0.0;
  double mean_log_cond_over_m = 0.0;
  double stderr_over_m = 0.0;
};

// Growing m with n = m or n = 5m; refuses when the per-trial subset
// enumeration would exceed 10^7 solves.
std::vector<LimitMRow> limit_experiment_m(const std::vector<int>& m_list, NRule rule,
                                          long trials, std::uint64_t seed, int workers);

struct LemmaIvResult {
  int m = 0;
  long trials = 0;
  double frequency = 0.0;
  Interval ci{0.0, 0.0};
  double bound = 0.0;  // 2^(-(2+m(m-1))/2)
};

// Frequency of cone(A_1..A_m) containing its Gram-Schmidt cone: every
// basis vector must be a nonnegative combination of the rows.
LemmaIvResult lemma_iv_experiment(int m, long trials, std::uint64_t seed, int workers);

struct ConcentrationRow {
  double gamma = 0.0;
  int m = 0;
  double ratio = 0.0;
  std::optional<double> empirical;
  std::optional<Interval> empirical_ci;
};

struct ConcentrationTable {
  std::vector<ConcentrationRow> rows;  // ordered by gamma, then m
  long samples = 0;
  std::uint64_t seed = 0;
};

// Deterministic concentration_ratio table; optionally one (m, gamma)
// cell gets an empirical column from sampled rows.
ConcentrationTable concentration_table(const std::vector<double>& gamma_list,
                                       const std::vector<int>& m_list,
                                       std::optional<std::pair<int, double>> empirical = {},
                                       long samples = 100000,
                                       std::uint64_t seed = kDefaultSeed);

struct PerceptronBench {
  int m = 0;
  int n = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  std::vector<long> iterations_first;   // per trial
  std::vector<long> iterations_max;     // per trial, max-violation rule
  std::vector<double> bound;            // ceil(C^2) per trial
  long attempts = 0;                    // rejection-sampling draws
  long violations = 0;                  // iterations above the bound (either rule)
  long unsolved = 0;                    // iteration cap reached
  long strictness_failures = 0;         // solved but some row not strictly negative
  double acceptance_rate = 0.0;
};

// Rejection-samples strictly feasible systems, runs both selection
// rules, and checks iterations <= ceil(C^2).  The total rejection
// budget is 100 * trials.
PerceptronBench perceptron_benchmark(int m, int n, long trials, std::uint64_t seed,
                                     int workers);

}  // namespace conic
