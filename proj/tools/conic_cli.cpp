// Command-line front end: condition reports, bound evaluation, and the
// seeded Monte Carlo experiment suite, with CSV/JSON output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "conic/bounds.hpp"
#include "conic/condition.hpp"
#include "conic/format.hpp"
#include "conic/montecarlo.hpp"
#include "conic/oracles.hpp"
#include "conic/perceptron.hpp"
#include "conic/serialize.hpp"
#include "conic/sphere_geometry.hpp"

namespace {

using conic::Error;
using conic::InvalidInput;
using nlohmann::json;

int default_workers() {
  if (const char* env = std::getenv("CONIC_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InvalidInput("cannot open output file: " + out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

void emit_json(const json& j, const std::string& out_path) { emit(j.dump(2), out_path); }

conic::UnitRowMatrix load_input(const std::string& path) {
  return conic::load_matrix_file(path, [](int row, double dev) {
    std::cerr << "warning: row " << row << " norm deviates from 1 by "
              << conic::format_double(dev) << "; normalising\n";
  });
}

struct CommonOpts {
  std::string format = "csv";
  std::string output;
  int workers = default_workers();
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_workers = true) {
  cmd->add_option("--format", o.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output,-o", o.output, "output path (default stdout)");
  if (with_workers)
    cmd->add_option("--workers", o.workers,
                    "worker threads (default $CONIC_WORKERS or 1); results are "
                    "identical for any value");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"condition numbers of random linear conic systems"};
  app.require_subcommand(1);

  // ---- cond ----
  auto* cond_cmd = app.add_subcommand("cond", "classify a system and compute theta, C");
  std::string cond_input, cond_output;
  cond_cmd->add_option("--input,-i", cond_input, "matrix file (CSV or JSON)")->required();
  cond_cmd->add_option("--output,-o", cond_output, "output path (default stdout)");

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "re-check a condition report");
  std::string verify_input, verify_report_path, verify_output;
  verify_cmd->add_option("--input,-i", verify_input, "matrix file")->required();
  verify_cmd->add_option("--report,-r", verify_report_path, "report JSON file")->required();
  verify_cmd->add_option("--output,-o", verify_output, "output path (default stdout)");

  // ---- perceptron ----
  auto* perc_cmd = app.add_subcommand("perceptron", "run the relaxation solver");
  std::string perc_input, perc_rule = "first", perc_output;
  long perc_cap = 0;
  bool perc_classify = false;
  perc_cmd->add_option("--input,-i", perc_input, "matrix file")->required();
  perc_cmd->add_option("--rule", perc_rule, "selection rule: first or max")
      ->check(CLI::IsMember({"first", "max"}));
  perc_cmd->add_option("--cap", perc_cap, "iteration cap (default 10^6)");
  perc_cmd->add_flag("--classify-first", perc_classify,
                     "compute C(A) first; sets the bound field and default cap");
  perc_cmd->add_option("--output,-o", perc_output, "output path (default stdout)");

  // ---- bounds eval ----
  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form bound evaluators");
  bounds_cmd->require_subcommand(1);
  auto* eval_cmd = bounds_cmd->add_subcommand("eval", "evaluate one bound");
  std::string which, bounds_output;
  int b_m = 3;
  long b_n = 3;
  double b_t = 1.0, b_gamma = 1.0, b_c = 1.0, b_p = 0.0, b_t0 = 0.0;
  eval_cmd
      ->add_option("--which", which,
                   "tail|logtail|lower|est|polycor|cori|smalln|tailmean")
      ->required()
      ->check(CLI::IsMember(
          {"tail", "logtail", "lower", "est", "polycor", "cori", "smalln", "tailmean"}));
  eval_cmd->add_option("--m", b_m, "ambient dimension");
  eval_cmd->add_option("--n", b_n, "row count");
  eval_cmd->add_option("--t", b_t, "threshold");
  eval_cmd->add_option("--gamma", b_gamma, "moment order");
  eval_cmd->add_option("--c", b_c, "lower-envelope constant");
  eval_cmd->add_option("--p", b_p, "tailmean: exponent offset p");
  eval_cmd->add_option("--t0", b_t0, "tailmean: threshold t0");
  eval_cmd->add_option("--output,-o", bounds_output, "output path (default stdout)");

  // ---- tails ----
  auto* tails_cmd = app.add_subcommand("tails", "empirical survival curve of C(A)");
  conic::RunConfig tails_cfg;
  std::string tails_grid = "1,2,5,10,20,40,80";
  std::string tails_gnuplot;
  CommonOpts tails_opts;
  tails_cmd->add_option("--m", tails_cfg.m, "ambient dimension")->required();
  tails_cmd->add_option("--n", tails_cfg.n, "row count")->required();
  tails_cmd->add_option("--trials", tails_cfg.trials, "Monte Carlo trials")->required();
  tails_cmd->add_option("--seed", tails_cfg.seed, "RNG seed (default 42)");
  tails_cmd->add_option("--t-grid", tails_grid, "ascending thresholds >= 1");
  tails_cmd->add_option("--gnuplot", tails_gnuplot,
                        "prefix for two-column survival/envelope .dat files");
  add_common(tails_cmd, tails_opts);

  // ---- slope ----
  auto* slope_cmd = app.add_subcommand("slope", "tail decay rate of log C(A)");
  conic::RunConfig slope_cfg;
  double slope_tmin = 1.0, slope_tmax = 5.0;
  int slope_points = 9;
  CommonOpts slope_opts;
  slope_cmd->add_option("--m", slope_cfg.m)->required();
  slope_cmd->add_option("--n", slope_cfg.n)->required();
  slope_cmd->add_option("--trials", slope_cfg.trials)->required();
  slope_cmd->add_option("--seed", slope_cfg.seed, "RNG seed (default 42)");
  slope_cmd->add_option("--t-min", slope_tmin, "lower end on the log C scale");
  slope_cmd->add_option("--t-max", slope_tmax, "upper end on the log C scale");
  slope_cmd->add_option("--points", slope_points, "grid points in [t-min, t-max]");
  add_common(slope_cmd, slope_opts);

  // ---- moments ----
  auto* moments_cmd = app.add_subcommand("moments", "sample moments of log C or C");
  conic::RunConfig mom_cfg;
  std::string mom_gammas = "1,2";
  std::string mom_of = "logC";
  CommonOpts mom_opts;
  moments_cmd->add_option("--m", mom_cfg.m)->required();
  moments_cmd->add_option("--n", mom_cfg.n)->required();
  moments_cmd->add_option("--trials", mom_cfg.trials)->required();
  moments_cmd->add_option("--seed", mom_cfg.seed, "RNG seed (default 42)");
  moments_cmd->add_option("--gamma-list", mom_gammas, "moment orders");
  moments_cmd->add_option("--of", mom_of, "logC or C")
      ->check(CLI::IsMember({"logC", "C"}));
  add_common(moments_cmd, mom_opts);

  // ---- limits-n ----
  auto* limn_cmd = app.add_subcommand("limits-n", "n -> infinity experiment");
  int limn_m = 3;
  std::string limn_list = "8,32,128";
  long limn_trials = 2000;
  std::uint64_t limn_seed = conic::kDefaultSeed;
  CommonOpts limn_opts;
  limn_cmd->add_option("--m", limn_m)->required();
  limn_cmd->add_option("--n-list", limn_list, "ascending row counts");
  limn_cmd->add_option("--trials", limn_trials);
  limn_cmd->add_option("--seed", limn_seed, "RNG seed (default 42)");
  add_common(limn_cmd, limn_opts);

  // ---- limits-m ----
  auto* limm_cmd = app.add_subcommand("limits-m", "m -> infinity experiment");
  std::string limm_list = "3,4,5,6,7";
  std::string limm_rule = "m";
  long limm_trials = 200;
  std::uint64_t limm_seed = conic::kDefaultSeed;
  CommonOpts limm_opts;
  limm_cmd->add_option("--m-list", limm_list, "dimensions");
  limm_cmd->add_option("--n-rule", limm_rule, "row count rule: m or 5m")
      ->check(CLI::IsMember({"m", "5m"}));
  limm_cmd->add_option("--trials", limm_trials);
  limm_cmd->add_option("--seed", limm_seed, "RNG seed (default 42)");
  add_common(limm_cmd, limm_opts);

  // ---- lemma-iv ----
  auto* liv_cmd = app.add_subcommand("lemma-iv", "cone-containment event frequency");
  int liv_m = 3;
  long liv_trials = 100000;
  std::uint64_t liv_seed = conic::kDefaultSeed;
  CommonOpts liv_opts;
  liv_cmd->add_option("--m", liv_m)->required();
  liv_cmd->add_option("--trials", liv_trials);
  liv_cmd->add_option("--seed", liv_seed, "RNG seed (default 42)");
  add_common(liv_cmd, liv_opts);

  // ---- concentration ----
  auto* conc_cmd = app.add_subcommand("concentration", "near-hemisphere cap measures");
  std::string conc_gammas = "0.25,0.5,1";
  std::string conc_ms = "20,50,100,200,400";
  std::string conc_empirical;
  long conc_samples = 100000;
  std::uint64_t conc_seed = conic::kDefaultSeed;
  CommonOpts conc_opts;
  conc_cmd->add_option("--gamma-list", conc_gammas);
  conc_cmd->add_option("--m-list", conc_ms);
  conc_cmd->add_option("--empirical", conc_empirical,
                       "\"m,gamma\" cell to verify by sampling");
  conc_cmd->add_option("--samples", conc_samples, "samples for the empirical column");
  conc_cmd->add_option("--seed", conc_seed, "RNG seed (default 42)");
  add_common(conc_cmd, conc_opts, /*with_workers=*/false);

  // ---- perceptron-bench ----
  auto* bench_cmd = app.add_subcommand("perceptron-bench",
                                       "iteration counts vs the ceil(C^2) bound");
  int bench_m = 3, bench_n = 5;
  long bench_trials = 10000;
  std::uint64_t bench_seed = conic::kDefaultSeed;
  CommonOpts bench_opts;
  bench_cmd->add_option("--m", bench_m)->required();
  bench_cmd->add_option("--n", bench_n)->required();
  bench_cmd->add_option("--trials", bench_trials);
  bench_cmd->add_option("--seed", bench_seed, "RNG seed (default 42)");
  add_common(bench_cmd, bench_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (cond_cmd->parsed()) {
      auto A = load_input(cond_input);
      auto report = conic::classify_and_condition(A);
      emit_json(conic::report_to_json(report), cond_output);
      return 0;
    }

    if (verify_cmd->parsed()) {
      auto A = load_input(verify_input);
      std::ifstream in(verify_report_path);
      if (!in) throw InvalidInput("cannot open report file: " + verify_report_path);
      json j;
      in >> j;
      auto report = conic::report_from_json(j);
      bool ok = conic::verify_report(A, report);
      emit_json(json{{"verified", ok}}, verify_output);
      return ok ? 0 : 2;
    }

    if (perc_cmd->parsed()) {
      auto A = load_input(perc_input);
      auto rule = perc_rule == "max" ? conic::SelectionRule::MaxViolation
                                     : conic::SelectionRule::FirstViolated;
      std::optional<double> known;
      if (perc_classify) {
        auto report = conic::classify_and_condition(A);
        if (report.cond) known = *report.cond;
      }
      long cap = perc_cap > 0 ? perc_cap : conic::perceptron_default_cap(known);
      auto trace = conic::perceptron_solve(A, cap, rule, known);
      emit_json(conic::trace_to_json(trace), perc_output);
      return 0;
    }

    if (eval_cmd->parsed()) {
      json j;
      j["which"] = which;
      if (which == "tail") {
        auto b = conic::upper_tail_bound(b_m, b_n, b_t);
        j["m"] = b_m;
        j["n"] = b_n;
        j["t"] = b_t;
        j["log_value"] = b.log_value;
        j["clamped"] = b.clamped;
        j["value"] = b.value();
      } else if (which == "logtail") {
        auto b = conic::log_tail_bound(b_m, b_n, b_t);
        j["m"] = b_m;
        j["n"] = b_n;
        j["t"] = b_t;
        j["log_value"] = b.log_value;
        j["clamped"] = b.clamped;
        j["value"] = b.value();
      } else if (which == "lower") {
        auto b = conic::lower_tail_envelope(b_m, b_n, b_t, b_c);
        j["m"] = b_m;
        j["n"] = b_n;
        j["t"] = b_t;
        j["c"] = b_c;
        j["log_value"] = b.log_value;
        j["clamped"] = b.clamped;
        j["value"] = b.value();
      } else if (which == "est") {
        j["m"] = b_m;
        j["n"] = b_n;
        j["gamma"] = b_gamma;
        j["value"] = conic::moment_bound_estimates(b_m, b_n, b_gamma);
      } else if (which == "polycor") {
        j["m"] = b_m;
        j["n"] = b_n;
        j["gamma"] = b_gamma;
        j["value"] = conic::moment_bound_polycor(b_m, b_n, b_gamma);
        j["mean_bound"] = conic::polycor_mean_bound(b_m, b_n);
        j["variance_bound"] = conic::polycor_variance_bound(b_m, b_n);
      } else if (which == "cori") {
        j["m"] = b_m;
        j["n"] = b_n;
        j["gamma"] = b_gamma;
        j["value"] = conic::moment_bound_cori(b_m, b_n, b_gamma);
      } else if (which == "smalln") {
        j["n"] = b_n;
        j["value"] = conic::small_n_bound(b_n);
      } else if (which == "tailmean") {
        j["p"] = b_p;
        j["t0"] = b_t0;
        j["gamma"] = b_gamma;
        j["value"] = conic::generic_tail_to_mean(b_p, b_t0, b_gamma);
      }
      emit_json(j, bounds_output);
      return 0;
    }

    if (tails_cmd->parsed()) {
      tails_cfg.t_grid = conic::parse_double_list(tails_grid);
      tails_cfg.workers = tails_opts.workers;
      auto res = conic::tail_experiment(tails_cfg);
      if (!tails_gnuplot.empty()) {
        std::ofstream surv(tails_gnuplot + "_survival.dat");
        std::ofstream env(tails_gnuplot + "_envelope.dat");
        for (std::size_t i = 0; i < res.curve.t_grid.size(); ++i) {
          surv << conic::format_double(res.curve.t_grid[i]) << ' '
               << conic::format_double(res.curve.survival[i]) << '\n';
          env << conic::format_double(res.curve.t_grid[i]) << ' '
              << conic::format_double(res.curve.upper_envelope[i]) << '\n';
        }
      }
      if (tails_opts.format == "json")
        emit_json(conic::tails_to_json(res), tails_opts.output);
      else
        emit(conic::tails_to_csv(res), tails_opts.output);
      return 0;
    }

    if (slope_cmd->parsed()) {
      if (slope_points < 4) throw InvalidInput("slope: need at least 4 grid points");
      slope_cfg.workers = slope_opts.workers;
      slope_cfg.t_grid.clear();
      for (int i = 0; i < slope_points; ++i) {
        double t = slope_tmin + (slope_tmax - slope_tmin) * i / (slope_points - 1);
        slope_cfg.t_grid.push_back(std::exp(t));
      }
      auto res = conic::tail_experiment(slope_cfg);
      auto fit = conic::decay_slope(res.curve, slope_tmin, slope_tmax);
      if (slope_opts.format == "json")
        emit_json(conic::slope_to_json(slope_cfg, slope_tmin, slope_tmax, fit),
                  slope_opts.output);
      else
        emit(conic::slope_to_csv(slope_cfg, slope_tmin, slope_tmax, fit),
             slope_opts.output);
      return 0;
    }

    if (moments_cmd->parsed()) {
      mom_cfg.gamma_list = conic::parse_double_list(mom_gammas);
      mom_cfg.workers = mom_opts.workers;
      auto of = mom_of == "C" ? conic::MomentOf::C : conic::MomentOf::LogC;
      auto rows = conic::moment_experiment(mom_cfg, of);
      if (mom_opts.format == "json")
        emit_json(conic::moments_to_json(mom_cfg, of, rows), mom_opts.output);
      else
        emit(conic::moments_to_csv(mom_cfg, of, rows), mom_opts.output);
      return 0;
    }

    if (limn_cmd->parsed()) {
      auto rows = conic::limit_experiment_n(limn_m, conic::parse_int_list(limn_list),
                                            limn_trials, limn_seed, limn_opts.workers);
      if (limn_opts.format == "json")
        emit_json(conic::limits_n_to_json(limn_m, limn_trials, limn_seed, rows),
                  limn_opts.output);
      else
        emit(conic::limits_n_to_csv(limn_m, limn_trials, limn_seed, rows),
             limn_opts.output);
      return 0;
    }

    if (limm_cmd->parsed()) {
      auto rule = limm_rule == "5m" ? conic::NRule::FiveM : conic::NRule::EqualM;
      auto rows = conic::limit_experiment_m(conic::parse_int_list(limm_list), rule,
                                            limm_trials, limm_seed, limm_opts.workers);
      if (limm_opts.format == "json")
        emit_json(conic::limits_m_to_json(rule, limm_trials, limm_seed, rows),
                  limm_opts.output);
      else
        emit(conic::limits_m_to_csv(rule, limm_trials, limm_seed, rows),
             limm_opts.output);
      return 0;
    }

    if (liv_cmd->parsed()) {
      auto res = conic::lemma_iv_experiment(liv_m, liv_trials, liv_seed, liv_opts.workers);
      if (liv_opts.format == "json")
        emit_json(conic::lemma_iv_to_json(liv_seed, res), liv_opts.output);
      else
        emit(conic::lemma_iv_to_csv(liv_seed, res), liv_opts.output);
      return 0;
    }

    if (conc_cmd->parsed()) {
      std::optional<std::pair<int, double>> emp;
      if (!conc_empirical.empty()) {
        auto parts = conic::parse_double_list(conc_empirical);
        if (parts.size() != 2) throw InvalidInput("--empirical expects \"m,gamma\"");
        emp = std::make_pair(static_cast<int>(parts[0]), parts[1]);
      }
      auto table = conic::concentration_table(conic::parse_double_list(conc_gammas),
                                              conic::parse_int_list(conc_ms), emp,
                                              conc_samples, conc_seed);
      if (conc_opts.format == "json")
        emit_json(conic::concentration_to_json(table), conc_opts.output);
      else
        emit(conic::concentration_to_csv(table), conc_opts.output);
      return 0;
    }

    if (bench_cmd->parsed()) {
      auto bench = conic::perceptron_benchmark(bench_m, bench_n, bench_trials,
                                               bench_seed, bench_opts.workers);
      if (bench_opts.format == "json")
        emit_json(conic::perceptron_bench_to_json(bench), bench_opts.output);
      else
        emit(conic::perceptron_bench_to_csv(bench), bench_opts.output);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
