#include "conic/serialize.hpp"

#include <cmath>
#include <sstream>

#include "conic/format.hpp"

namespace conic {

namespace {

using nlohmann::json;

json vec_json(const std::vector<double>& v) { return json(v); }

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

FeasibilityClass class_from_string(const std::string& s) {
  if (s == "StrictlyFeasible") return FeasibilityClass::StrictlyFeasible;
  if (s == "Infeasible") return FeasibilityClass::Infeasible;
  if (s == "IllPosedNumerical") return FeasibilityClass::IllPosedNumerical;
  throw InvalidInput("report: unknown class '" + s + "'");
}

}  // namespace

json report_to_json(const ConditionReport& r) {
  json j;
  j["class"] = to_string(r.cls);
  j["theta"] = r.theta.radians();
  if (r.cond)
    j["cond"] = *r.cond;
  else
    j["cond"] = "inf";
  j["witness"] = {{"center", vec_json(r.witness.center)},
                  {"radius", r.witness.radius.radians()}};
  j["blocking_set"] = r.blocking_set ? json(*r.blocking_set) : json(nullptr);
  j["certificate"] = r.certificate ? json(*r.certificate) : json(nullptr);
  return j;
}

ConditionReport report_from_json(const json& j) {
  ConditionReport r;
  try {
    r.cls = class_from_string(j.at("class").get<std::string>());
    r.theta = Angle(j.at("theta").get<double>());
    const auto& c = j.at("cond");
    if (c.is_string()) {
      if (c.get<std::string>() != "inf") throw InvalidInput("report: bad cond string");
      r.cond = std::nullopt;
    } else {
      r.cond = c.get<double>();
    }
    r.witness.center = j.at("witness").at("center").get<std::vector<double>>();
    r.witness.radius = Angle(j.at("witness").at("radius").get<double>());
    if (!j.at("blocking_set").is_null())
      r.blocking_set = j.at("blocking_set").get<std::vector<int>>();
    if (!j.at("certificate").is_null())
      r.certificate = j.at("certificate").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("report: malformed JSON: ") + e.what());
  }
  return r;
}

json trace_to_json(const PerceptronTrace& t) {
  json j;
  j["iterations"] = t.iterations;
  j["terminated"] =
      t.terminated == PerceptronTermination::Solved ? "Solved" : "IterationCapReached";
  j["solution"] = t.solution ? json(*t.solution) : json(nullptr);
  return j;
}

namespace {

json config_json(const RunConfig& cfg) {
  json j;
  j["m"] = cfg.m;
  j["n"] = cfg.n;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  if (!cfg.t_grid.empty()) j["t_grid"] = cfg.t_grid;
  if (!cfg.gamma_list.empty()) j["gamma_list"] = cfg.gamma_list;
  return j;
}

void config_comment(std::ostringstream& out, const RunConfig& cfg) {
  out << "# m=" << cfg.m << " n=" << cfg.n << " trials=" << cfg.trials
      << " seed=" << cfg.seed << "\n";
  if (!cfg.t_grid.empty()) out << "# t_grid=" << format_list(cfg.t_grid) << "\n";
  if (!cfg.gamma_list.empty()) out << "# gamma_list=" << format_list(cfg.gamma_list) << "\n";
}

}  // namespace

std::string tails_to_csv(const TailExperimentResult& r) {
  std::ostringstream out;
  out << "# tails\n";
  config_comment(out, r.cfg);
  out << "# completed=" << r.curve.trials << " ill_posed=" << r.ill_posed
      << " aborted=" << r.aborted << "\n";
  out << "t,survival,ci_low,ci_high,upper_envelope,t_times_p\n";
  for (std::size_t j = 0; j < r.curve.t_grid.size(); ++j) {
    out << format_double(r.curve.t_grid[j]) << ',' << format_double(r.curve.survival[j])
        << ',' << format_double(r.curve.ci_low[j]) << ','
        << format_double(r.curve.ci_high[j]) << ','
        << format_double(r.curve.upper_envelope[j]) << ','
        << format_double(r.curve.t_times_p[j]) << "\n";
  }
  return out.str();
}

json tails_to_json(const TailExperimentResult& r) {
  json j;
  j["experiment"] = "tails";
  j["config"] = config_json(r.cfg);
  j["completed"] = r.curve.trials;
  j["ill_posed"] = r.ill_posed;
  j["aborted"] = r.aborted;
  j["t"] = r.curve.t_grid;
  j["survival"] = r.curve.survival;
  j["ci_low"] = r.curve.ci_low;
  j["ci_high"] = r.curve.ci_high;
  j["upper_envelope"] = r.curve.upper_envelope;
  j["t_times_p"] = r.curve.t_times_p;
  return j;
}

std::string moments_to_csv(const RunConfig& cfg, MomentOf of,
                           const std::vector<MomentEstimate>& rows) {
  std::ostringstream out;
  out << "# moments of=" << (of == MomentOf::LogC ? "logC" : "C") << "\n";
  config_comment(out, cfg);
  out << "gamma,mean,stderr,bound_estimates,bound_polycor,bound_cori\n";
  for (const auto& e : rows) {
    out << format_double(e.gamma) << ',' << format_double(e.mean) << ','
        << format_double(e.stderr_mean) << ',' << opt_cell(e.bound_estimates) << ','
        << opt_cell(e.bound_polycor) << ',' << opt_cell(e.bound_cori) << "\n";
  }
  return out.str();
}

json moments_to_json(const RunConfig& cfg, MomentOf of,
                     const std::vector<MomentEstimate>& rows) {
  json j;
  j["experiment"] = "moments";
  j["of"] = of == MomentOf::LogC ? "logC" : "C";
  j["config"] = config_json(cfg);
  json arr = json::array();
  for (const auto& e : rows) {
    json row;
    row["gamma"] = e.gamma;
    row["mean"] = e.mean;
    row["stderr"] = e.stderr_mean;
    row["bound_estimates"] = e.bound_estimates ? json(*e.bound_estimates) : json(nullptr);
    row["bound_polycor"] = e.bound_polycor ? json(*e.bound_polycor) : json(nullptr);
    row["bound_cori"] = e.bound_cori ? json(*e.bound_cori) : json(nullptr);
    arr.push_back(row);
  }
  j["rows"] = arr;
  return j;
}

std::string limits_n_to_csv(int m, long trials, std::uint64_t seed,
                            const std::vector<LimitNRow>& rows) {
  std::ostringstream out;
  out << "# limits-n m=" << m << " trials=" << trials << " seed=" << seed << "\n";
  out << "n,mean_log_cond,stderr_log_cond,mean_sqrt_cond,median_cond,frac_strictly_feasible\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.mean_log_cond) << ','
        << format_double(r.stderr_log_cond) << ',' << format_double(r.mean_sqrt_cond)
        << ',' << format_double(r.median_cond) << ','
        << format_double(r.frac_strictly_feasible) << "\n";
  }
  return out.str();
}

json limits_n_to_json(int m, long trials, std::uint64_t seed,
                      const std::vector<LimitNRow>& rows) {
  json j;
  j["experiment"] = "limits-n";
  j["config"] = {{"m", m}, {"trials", trials}, {"seed", seed}};
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"n", r.n},
                   {"mean_log_cond", r.mean_log_cond},
                   {"stderr_log_cond", r.stderr_log_cond},
                   {"mean_sqrt_cond", r.mean_sqrt_cond},
                   {"median_cond", r.median_cond},
                   {"frac_strictly_feasible", r.frac_strictly_feasible}});
  j["rows"] = arr;
  return j;
}

std::string limits_m_to_csv(NRule rule, long trials, std::uint64_t seed,
                            const std::vector<LimitMRow>& rows) {
  std::ostringstream out;
  out << "# limits-m n_rule=" << (rule == NRule::EqualM ? "m" : "5m")
      << " trials=" << trials << " seed=" << seed << "\n";
  out << "m,n,mean_log_cond,stderr_log_cond,mean_log_cond_over_m,stderr_over_m\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.n << ',' << format_double(r.mean_log_cond) << ','
        << format_double(r.stderr_log_cond) << ','
        << format_double(r.mean_log_cond_over_m) << ','
        << format_double(r.stderr_over_m) << "\n";
  }
  return out.str();
}

json limits_m_to_json(NRule rule, long trials, std::uint64_t seed,
                      const std::vector<LimitMRow>& rows) {
  json j;
  j["experiment"] = "limits-m";
  j["config"] = {{"n_rule", rule == NRule::EqualM ? "m" : "5m"},
                 {"trials", trials},
                 {"seed", seed}};
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"m", r.m},
                   {"n", r.n},
                   {"mean_log_cond", r.mean_log_cond},
                   {"stderr_log_cond", r.stderr_log_cond},
                   {"mean_log_cond_over_m", r.mean_log_cond_over_m},
                   {"stderr_over_m", r.stderr_over_m}});
  j["rows"] = arr;
  return j;
}

std::string lemma_iv_to_csv(std::uint64_t seed, const LemmaIvResult& r) {
  std::ostringstream out;
  out << "# lemma-iv seed=" << seed << "\n";
  out << "m,trials,frequency,ci_low,ci_high,bound\n";
  out << r.m << ',' << r.trials << ',' << format_double(r.frequency) << ','
      << format_double(r.ci.low) << ',' << format_double(r.ci.high) << ','
      << format_double(r.bound) << "\n";
  return out.str();
}

json lemma_iv_to_json(std::uint64_t seed, const LemmaIvResult& r) {
  json j;
  j["experiment"] = "lemma-iv";
  j["config"] = {{"m", r.m}, {"trials", r.trials}, {"seed", seed}};
  j["frequency"] = r.frequency;
  j["ci_low"] = r.ci.low;
  j["ci_high"] = r.ci.high;
  j["bound"] = r.bound;
  return j;
}

std::string concentration_to_csv(const ConcentrationTable& t) {
  std::ostringstream out;
  out << "# concentration samples=" << t.samples << " seed=" << t.seed << "\n";
  out << "gamma,m,ratio,empirical,empirical_ci_low,empirical_ci_high\n";
  for (const auto& r : t.rows) {
    out << format_double(r.gamma) << ',' << r.m << ',' << format_double(r.ratio) << ','
        << opt_cell(r.empirical) << ','
        << (r.empirical_ci ? format_double(r.empirical_ci->low) : std::string()) << ','
        << (r.empirical_ci ? format_double(r.empirical_ci->high) : std::string())
        << "\n";
  }
  return out.str();
}

json concentration_to_json(const ConcentrationTable& t) {
  json j;
  j["experiment"] = "concentration";
  j["config"] = {{"samples", t.samples}, {"seed", t.seed}};
  json arr = json::array();
  for (const auto& r : t.rows) {
    json row;
    row["gamma"] = r.gamma;
    row["m"] = r.m;
    row["ratio"] = r.ratio;
    row["empirical"] = r.empirical ? json(*r.empirical) : json(nullptr);
    if (r.empirical_ci) {
      row["empirical_ci_low"] = r.empirical_ci->low;
      row["empirical_ci_high"] = r.empirical_ci->high;
    }
    arr.push_back(row);
  }
  j["rows"] = arr;
  return j;
}

std::string perceptron_bench_to_csv(const PerceptronBench& b) {
  std::ostringstream out;
  out << "# perceptron-bench m=" << b.m << " n=" << b.n << " trials=" << b.trials
      << " seed=" << b.seed << "\n";
  out << "# attempts=" << b.attempts << " acceptance_rate="
      << format_double(b.acceptance_rate) << " violations=" << b.violations
      << " unsolved=" << b.unsolved << " strictness_failures=" << b.strictness_failures
      << "\n";
  out << "trial,iterations_first,iterations_max,bound\n";
  for (long i = 0; i < b.trials; ++i) {
    out << i << ',' << b.iterations_first[i] << ',' << b.iterations_max[i] << ','
        << format_double(b.bound[i]) << "\n";
  }
  return out.str();
}

json perceptron_bench_to_json(const PerceptronBench& b) {
  json j;
  j["experiment"] = "perceptron-bench";
  j["config"] = {{"m", b.m}, {"n", b.n}, {"trials", b.trials}, {"seed", b.seed}};
  j["attempts"] = b.attempts;
  j["acceptance_rate"] = b.acceptance_rate;
  j["violations"] = b.violations;
  j["unsolved"] = b.unsolved;
  j["strictness_failures"] = b.strictness_failures;
  j["iterations_first"] = b.iterations_first;
  j["iterations_max"] = b.iterations_max;
  j["bound"] = b.bound;
  return j;
}

std::string slope_to_csv(const RunConfig& cfg, double t_min, double t_max,
                         const SlopeFit& fit) {
  std::ostringstream out;
  out << "# slope t_min=" << format_double(t_min) << " t_max=" << format_double(t_max)
      << "\n";
  config_comment(out, cfg);
  out << "slope,stderr\n";
  out << format_double(fit.slope) << ',' << format_double(fit.stderr_slope) << "\n";
  return out.str();
}

json slope_to_json(const RunConfig& cfg, double t_min, double t_max,
                   const SlopeFit& fit) {
  json j;
  j["experiment"] = "slope";
  j["config"] = config_json(cfg);
  j["t_min"] = t_min;
  j["t_max"] = t_max;
  j["slope"] = fit.slope;
  j["stderr"] = fit.stderr_slope;
  return j;
}

}  // namespace conic
