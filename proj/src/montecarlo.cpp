#include "conic/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "conic/bounds.hpp"
#include "conic/linalg.hpp"
#include "conic/perceptron.hpp"
#include "conic/sphere_geometry.hpp"

namespace conic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs fn(lo, hi) over a static partition of [0, trials).  Each chunk
// owns its solver state; exceptions are rethrown after joining.
template <typename Fn>
void parallel_chunks(long trials, int workers, Fn&& fn) {
  int w = std::max(1, workers);
  if (w > trials) w = static_cast<int>(std::max<long>(1, trials));
  if (w == 1) {
    fn(0L, trials);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr first_error;
  std::mutex err_mx;
  threads.reserve(w);
  for (int t = 0; t < w; ++t) {
    long lo = trials * t / w;
    long hi = trials * (t + 1) / w;
    threads.emplace_back([&, lo, hi]() {
      try {
        fn(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mx);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

enum TrialKind : std::uint8_t { kOk = 0, kIllPosed = 1, kAborted = 2 };

struct CondSamples {
  std::vector<double> cond;       // +inf for ill-posed, NaN for aborted
  std::vector<std::uint8_t> kind;
  std::vector<std::uint8_t> feasible;
  long ill_posed = 0;
  long aborted = 0;
};

CondSamples run_condition_trials(int m, int n, long trials, std::uint64_t seed,
                                 int workers) {
  CondSamples out;
  out.cond.resize(trials);
  out.kind.resize(trials);
  out.feasible.resize(trials);
  parallel_chunks(trials, workers, [&](long lo, long hi) {
    ConditionSolver solver;
    for (long i = lo; i < hi; ++i) {
      auto rng = trial_stream(seed, static_cast<std::uint64_t>(i));
      try {
        UnitRowMatrix A = sample_uniform_rows(m, n, rng);
        auto v = solver.condition_value(A);
        out.cond[i] = v.cond;
        out.feasible[i] = v.cls == FeasibilityClass::StrictlyFeasible;
        out.kind[i] = v.cls == FeasibilityClass::IllPosedNumerical ? kIllPosed : kOk;
      } catch (const Error&) {
        out.cond[i] = std::numeric_limits<double>::quiet_NaN();
        out.kind[i] = kAborted;
        out.feasible[i] = 0;
      }
    }
  });
  for (long i = 0; i < trials; ++i) {
    if (out.kind[i] == kIllPosed) ++out.ill_posed;
    if (out.kind[i] == kAborted) ++out.aborted;
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / (static_cast<double>(v.size()) - 1.0) /
                   static_cast<double>(v.size()));
}

}  // namespace

void RunConfig::validate() const {
  if (m < 2) throw InvalidInput("config: m must be >= 2");
  if (n < 1) throw InvalidInput("config: n must be >= 1");
  if (trials < 1) throw InvalidInput("config: trials must be >= 1");
  if (workers < 1) throw InvalidInput("config: workers must be >= 1");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 1.0) throw InvalidInput("config: thresholds must be >= 1");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw InvalidInput("config: t_grid must be strictly ascending");
  }
  for (double g : gamma_list)
    if (!(g >= 0.0)) throw InvalidInput("config: gamma values must be >= 0");
}

UnitRowMatrix sample_uniform_rows(int m, int n, Xoshiro256pp& stream) {
  if (m < 2) throw InvalidInput("sample_uniform_rows: m must be >= 2");
  if (n < 1) throw InvalidInput("sample_uniform_rows: n must be >= 1");
  GaussianSampler g(stream);
  std::vector<double> data(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    double* row = data.data() + static_cast<std::size_t>(i) * m;
    double s = 0.0;
    do {
      s = 0.0;
      for (int j = 0; j < m; ++j) {
        row[j] = g.next();
        s += row[j] * row[j];
      }
    } while (s == 0.0);
    double nrm = std::sqrt(s);
    for (int j = 0; j < m; ++j) row[j] /= nrm;
  }
  return UnitRowMatrix::from_unit_rows(m, n, std::move(data));
}

TailExperimentResult tail_experiment(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.m < 3) throw InvalidInput("tail_experiment: m must be >= 3 (envelope)");
  if (cfg.t_grid.empty()) throw InvalidInput("tail_experiment: empty t_grid");

  TailExperimentResult res;
  res.cfg = cfg;
  CondSamples s = run_condition_trials(cfg.m, cfg.n, cfg.trials, cfg.seed, cfg.workers);
  res.ill_posed = s.ill_posed;
  res.aborted = s.aborted;
  if (10000 * s.aborted > cfg.trials * 10)  // > 0.1%
    throw NoConvergence("tail_experiment: more than 0.1% of trials aborted");

  long completed = cfg.trials - s.aborted;
  res.curve.trials = completed;
  res.curve.t_grid = cfg.t_grid;
  res.log_cond.reserve(completed);
  for (long i = 0; i < cfg.trials; ++i)
    if (s.kind[i] == kOk) res.log_cond.push_back(std::log(s.cond[i]));

  for (double t : cfg.t_grid) {
    long count = 0;
    for (long i = 0; i < cfg.trials; ++i) {
      if (s.kind[i] == kAborted) continue;
      if (s.cond[i] >= t) ++count;  // ill-posed is +inf: exceeds everything
    }
    double p = static_cast<double>(count) / static_cast<double>(completed);
    Interval ci = wilson99(count, completed);
    res.curve.survival.push_back(p);
    res.curve.ci_low.push_back(ci.low);
    res.curve.ci_high.push_back(ci.high);
    res.curve.upper_envelope.push_back(upper_tail_bound(cfg.m, cfg.n, t).value());
    res.curve.t_times_p.push_back(t * p);
  }
  return res;
}

SlopeFit decay_slope(const TailCurve& curve, double t_min, double t_max) {
  std::vector<double> x, y, w;
  for (std::size_t j = 0; j < curve.t_grid.size(); ++j) {
    double lt = std::log(curve.t_grid[j]);
    if (lt < t_min - 1e-12 || lt > t_max + 1e-12) continue;
    double p = curve.survival[j];
    double exceed = p * static_cast<double>(curve.trials);
    if (exceed < 50.0) continue;
    if (p >= 1.0) continue;  // saturated point, no decay information
    x.push_back(lt);
    y.push_back(std::log(p));
    // delta-method weight on the raw proportion, 1/var(p_hat).  Inverse
    // variance of ln p_hat would concentrate all weight at the smallest
    // thresholds, where the curve has not reached its exponential rate.
    w.push_back(static_cast<double>(curve.trials) / (p * (1.0 - p)));
  }
  if (x.size() < 4)
    throw InsufficientTailData(
        "decay_slope: need >= 4 grid points with >= 50 exceedances in range");
  return weighted_slope(x, y, w);
}

std::vector<MomentEstimate> moment_experiment(const RunConfig& cfg, MomentOf of) {
  cfg.validate();
  if (cfg.m < 3) throw InvalidInput("moment_experiment: m must be >= 3");
  if (cfg.gamma_list.empty()) throw InvalidInput("moment_experiment: empty gamma_list");
  if (of == MomentOf::C)
    for (double g : cfg.gamma_list)
      if (g >= 1.0)
        throw MomentDivergent("moment_experiment: E[C^gamma] diverges for gamma >= 1");

  CondSamples s = run_condition_trials(cfg.m, cfg.n, cfg.trials, cfg.seed, cfg.workers);
  if (10000 * s.aborted > cfg.trials * 10)
    throw NoConvergence("moment_experiment: more than 0.1% of trials aborted");

  std::vector<double> base;
  base.reserve(cfg.trials);
  for (long i = 0; i < cfg.trials; ++i)
    if (s.kind[i] == kOk)
      base.push_back(of == MomentOf::LogC ? std::log(s.cond[i]) : s.cond[i]);

  std::vector<MomentEstimate> out;
  std::vector<double> powered(base.size());
  for (double gamma : cfg.gamma_list) {
    MomentEstimate e;
    e.gamma = gamma;
    for (std::size_t i = 0; i < base.size(); ++i) powered[i] = std::pow(base[i], gamma);
    e.mean = mean_of(powered);
    e.stderr_mean = stderr_of(powered, e.mean);
    if (of == MomentOf::LogC) {
      if (gamma > 0.0) e.bound_estimates = moment_bound_estimates(cfg.m, cfg.n, gamma);
      if (gamma >= 1.0) e.bound_polycor = moment_bound_polycor(cfg.m, cfg.n, gamma);
    } else if (gamma > 0.0) {
      e.bound_cori = moment_bound_cori(cfg.m, cfg.n, gamma);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<LimitNRow> limit_experiment_n(int m, const std::vector<int>& n_list,
                                          long trials, std::uint64_t seed, int workers) {
  if (m < 3) throw InvalidInput("limit_experiment_n: m must be >= 3");
  if (n_list.empty()) throw InvalidInput("limit_experiment_n: empty n_list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < m) throw InvalidInput("limit_experiment_n: every n must be >= m");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw InvalidInput("limit_experiment_n: n_list must be ascending");
  }
  if (trials < 1) throw InvalidInput("limit_experiment_n: trials must be >= 1");

  const int n_max = n_list.back();
  const std::size_t cols = n_list.size();
  std::vector<double> cond(static_cast<std::size_t>(trials) * cols);
  std::vector<std::uint8_t> kind(static_cast<std::size_t>(trials) * cols);
  std::vector<std::uint8_t> feas(static_cast<std::size_t>(trials) * cols);

  parallel_chunks(trials, workers, [&](long lo, long hi) {
    ConditionSolver solver;
    for (long i = lo; i < hi; ++i) {
      auto rng = trial_stream(seed, static_cast<std::uint64_t>(i));
      UnitRowMatrix full = sample_uniform_rows(m, n_max, rng);
      for (std::size_t c = 0; c < cols; ++c) {
        int n = n_list[c];
        std::vector<double> head(full.data().begin(),
                                 full.data().begin() + static_cast<std::size_t>(n) * m);
        std::size_t slot = static_cast<std::size_t>(i) * cols + c;
        try {
          UnitRowMatrix A = UnitRowMatrix::from_unit_rows(m, n, std::move(head));
          auto v = solver.condition_value(A);
          cond[slot] = v.cond;
          feas[slot] = v.cls == FeasibilityClass::StrictlyFeasible;
          kind[slot] = v.cls == FeasibilityClass::IllPosedNumerical ? kIllPosed : kOk;
        } catch (const Error&) {
          cond[slot] = std::numeric_limits<double>::quiet_NaN();
          kind[slot] = kAborted;
          feas[slot] = 0;
        }
      }
    }
  });

  std::vector<LimitNRow> rows;
  for (std::size_t c = 0; c < cols; ++c) {
    LimitNRow row;
    row.n = n_list[c];
    std::vector<double> logs, sqrts, all;
    long feas_count = 0, completed = 0, aborted = 0;
    for (long i = 0; i < trials; ++i) {
      std::size_t slot = static_cast<std::size_t>(i) * cols + c;
      if (kind[slot] == kAborted) {
        ++aborted;
        continue;
      }
      ++completed;
      feas_count += feas[slot];
      all.push_back(cond[slot]);
      if (kind[slot] == kOk) {
        logs.push_back(std::log(cond[slot]));
        sqrts.push_back(std::sqrt(cond[slot]));
      }
    }
    if (10000 * aborted > trials * 10)
      throw NoConvergence("limit_experiment_n: more than 0.1% of trials aborted");
    row.mean_log_cond = mean_of(logs);
    row.stderr_log_cond = stderr_of(logs, row.mean_log_cond);
    row.mean_sqrt_cond = mean_of(sqrts);
    std::sort(all.begin(), all.end());
    std::size_t sz = all.size();
    row.median_cond = sz == 0 ? 0.0
                              : (sz % 2 ? all[sz / 2]
                                        : 0.5 * (all[sz / 2 - 1] + all[sz / 2]));
    row.frac_strictly_feasible =
        completed ? static_cast<double>(feas_count) / static_cast<double>(completed) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<LimitMRow> limit_experiment_m(const std::vector<int>& m_list, NRule rule,
                                          long trials, std::uint64_t seed, int workers) {
  if (m_list.empty()) throw InvalidInput("limit_experiment_m: empty m_list");
  if (trials < 1) throw InvalidInput("limit_experiment_m: trials must be >= 1");
  for (int m : m_list)
    if (m < 3) throw InvalidInput("limit_experiment_m: every m must be >= 3");

  std::vector<LimitMRow> rows;
  for (int m : m_list) {
    int n = rule == NRule::EqualM ? m : 5 * m;
    if (std::exp(log_binomial(n, m)) > 1e7)
      throw BudgetExceeded("limit_experiment_m: subset enumeration above 10^7 per trial");
    std::uint64_t sub_seed =
        mix64(seed) ^ mix64((static_cast<std::uint64_t>(m) << 3) | (rule == NRule::FiveM));
    CondSamples s = run_condition_trials(m, n, trials, sub_seed, workers);
    if (10000 * s.aborted > trials * 10)
      throw NoConvergence("limit_experiment_m: more than 0.1% of trials aborted");
    std::vector<double> logs;
    logs.reserve(trials);
    for (long i = 0; i < trials; ++i)
      if (s.kind[i] == kOk) logs.push_back(std::log(s.cond[i]));
    LimitMRow row;
    row.m = m;
    row.n = n;
    row.mean_log_cond = mean_of(logs);
    row.stderr_log_cond = stderr_of(logs, row.mean_log_cond);
    row.mean_log_cond_over_m = row.mean_log_cond / m;
    row.stderr_over_m = row.stderr_log_cond / m;
    rows.push_back(row);
  }
  return rows;
}

LemmaIvResult lemma_iv_experiment(int m, long trials, std::uint64_t seed, int workers) {
  if (m < 2 || m > 6) throw InvalidInput("lemma_iv_experiment: m must be in [2, 6]");
  if (trials < 1) throw InvalidInput("lemma_iv_experiment: trials must be >= 1");

  std::vector<std::uint8_t> hit(trials);
  parallel_chunks(trials, workers, [&](long lo, long hi) {
    std::vector<double> mat(static_cast<std::size_t>(m) * m);
    std::vector<double> mu(m);
    for (long i = lo; i < hi; ++i) {
      auto rng = trial_stream(seed, static_cast<std::uint64_t>(i));
      while (true) {
        UnitRowMatrix A = sample_uniform_rows(m, m, rng);
        std::vector<std::vector<double>> rows(m);
        for (int r = 0; r < m; ++r) {
          auto row = A.row(r);
          rows[r].assign(row.begin(), row.end());
        }
        std::vector<std::vector<double>> basis;
        try {
          basis = gram_schmidt_basis(rows);
        } catch (const DependentSet&) {
          continue;  // null event: redraw
        }
        bool ok = true;
        bool singular = false;
        for (int j = 0; j < m && ok; ++j) {
          // solve sum_i mu_i A_i = E_j, i.e. A^T mu = E_j
          for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
              mat[static_cast<std::size_t>(r) * m + c] = A.row(c)[r];
          for (int r = 0; r < m; ++r) mu[r] = basis[j][r];
          if (!lu_solve_inplace(m, mat.data(), mu.data())) {
            singular = true;  // null event: redraw
            break;
          }
          for (int r = 0; r < m; ++r)
            if (mu[r] < -1e-9) {
              ok = false;
              break;
            }
        }
        if (singular) continue;
        hit[i] = ok;
        break;
      }
    }
  });

  long count = 0;
  for (long i = 0; i < trials; ++i) count += hit[i];
  LemmaIvResult res;
  res.m = m;
  res.trials = trials;
  res.frequency = static_cast<double>(count) / static_cast<double>(trials);
  res.ci = wilson99(count, trials);
  res.bound = std::pow(2.0, -(2.0 + m * (m - 1.0)) / 2.0);
  return res;
}

ConcentrationTable concentration_table(const std::vector<double>& gamma_list,
                                       const std::vector<int>& m_list,
                                       std::optional<std::pair<int, double>> empirical,
                                       long samples, std::uint64_t seed) {
  if (gamma_list.empty() || m_list.empty())
    throw InvalidInput("concentration_table: empty grid");
  ConcentrationTable table;
  table.samples = samples;
  table.seed = seed;
  for (double g : gamma_list) {
    for (int m : m_list) {
      ConcentrationRow row;
      row.gamma = g;
      row.m = m;
      row.ratio = concentration_ratio(m, g);
      if (empirical && empirical->first == m && empirical->second == g) {
        if (samples < 1) throw InvalidInput("concentration_table: samples must be >= 1");
        double threshold = std::exp(-std::pow(static_cast<double>(m), g));
        long inside = 0;
        auto rng = trial_stream(seed, 0);
        GaussianSampler gauss(rng);
        std::vector<double> x(m);
        for (long s = 0; s < samples; ++s) {
          double norm2 = 0.0;
          do {
            norm2 = 0.0;
            for (int j = 0; j < m; ++j) {
              x[j] = gauss.next();
              norm2 += x[j] * x[j];
            }
          } while (norm2 == 0.0);
          // membership in cap(e1, arccos(threshold))
          if (x[0] / std::sqrt(norm2) >= threshold) ++inside;
        }
        row.empirical = static_cast<double>(inside) / static_cast<double>(samples);
        row.empirical_ci = wilson99(inside, samples);
      }
      table.rows.push_back(row);
    }
  }
  return table;
}

PerceptronBench perceptron_benchmark(int m, int n, long trials, std::uint64_t seed,
                                     int workers) {
  if (m < 2) throw InvalidInput("perceptron_benchmark: m must be >= 2");
  if (n < 1) throw InvalidInput("perceptron_benchmark: n must be >= 1");
  if (trials < 1) throw InvalidInput("perceptron_benchmark: trials must be >= 1");

  PerceptronBench bench;
  bench.m = m;
  bench.n = n;
  bench.trials = trials;
  bench.seed = seed;
  bench.iterations_first.resize(trials);
  bench.iterations_max.resize(trials);
  bench.bound.resize(trials);
  std::vector<long> attempts(trials);
  std::vector<std::uint8_t> flags(trials);  // bit0 violation, bit1 unsolved, bit2 strictness

  parallel_chunks(trials, workers, [&](long lo, long hi) {
    ConditionSolver solver;
    for (long i = lo; i < hi; ++i) {
      auto rng = trial_stream(seed, static_cast<std::uint64_t>(i));
      long local_attempts = 0;
      double cond = 0.0;
      std::optional<UnitRowMatrix> accepted;
      while (local_attempts < 100000) {
        ++local_attempts;
        UnitRowMatrix A = sample_uniform_rows(m, n, rng);
        auto v = solver.condition_value(A);
        if (v.cls == FeasibilityClass::StrictlyFeasible) {
          cond = v.cond;
          accepted = std::move(A);
          break;
        }
      }
      attempts[i] = local_attempts;
      if (!accepted) {  // cannot happen for sane (m, n); flagged as unsolved
        flags[i] = 2;
        continue;
      }
      double b = ceil_cond_sq(cond);
      bench.bound[i] = b;
      long cap = perceptron_default_cap(cond);
      std::uint8_t f = 0;
      const SelectionRule rules[2] = {SelectionRule::FirstViolated,
                                      SelectionRule::MaxViolation};
      for (int r = 0; r < 2; ++r) {
        PerceptronTrace tr = perceptron_solve(*accepted, cap, rules[r], cond);
        long& slot = r == 0 ? bench.iterations_first[i] : bench.iterations_max[i];
        slot = tr.iterations;
        if (tr.terminated == PerceptronTermination::IterationCapReached)
          f |= 2;
        else {
          if (tr.iterations > static_cast<long>(b)) f |= 1;
          for (int row = 0; row < n; ++row)
            if (dot(accepted->row(row), *tr.solution) >= 0.0) f |= 4;
        }
      }
      flags[i] = f;
    }
  });

  for (long i = 0; i < trials; ++i) {
    bench.attempts += attempts[i];
    if (flags[i] & 1) ++bench.violations;
    if (flags[i] & 2) ++bench.unsolved;
    if (flags[i] & 4) ++bench.strictness_failures;
  }
  if (bench.attempts > 100 * trials)
    throw BudgetExceeded("perceptron_benchmark: rejection budget of 100 * trials exceeded");
  bench.acceptance_rate =
      static_cast<double>(trials) / static_cast<double>(bench.attempts);
  return bench;
}

}  // namespace conic
