#pragma once

#include <string>

#include <json.hpp>

#include "conic/condition.hpp"
#include "conic/montecarlo.hpp"
#include "conic/perceptron.hpp"

namespace conic {

// Condition report <-> JSON with the fixed field set
// {"class","theta","cond","witness":{"center","radius"},"blocking_set","certificate"};
// cond is the string "inf" when infinite, absent optionals are null.
nlohmann::json report_to_json(const ConditionReport& r);
ConditionReport report_from_json(const nlohmann::json& j);

nlohmann::json trace_to_json(const PerceptronTrace& t);

// Experiment outputs as CSV (config embedded in leading # comments,
// then a fixed header row) or JSON (config object + data arrays).
// `workers` is deliberately not embedded: outputs are identical for
// any worker count.
std::string tails_to_csv(const TailExperimentResult& r);
nlohmann::json tails_to_json(const TailExperimentResult& r);

std::string moments_to_csv(const RunConfig& cfg, MomentOf of,
                           const std::vector<MomentEstimate>& rows);
nlohmann::json moments_to_json(const RunConfig& cfg, MomentOf of,
                               const std::vector<MomentEstimate>& rows);

std::string limits_n_to_csv(int m, long trials, std::uint64_t seed,
                            const std::vector<LimitNRow>& rows);
nlohmann::json limits_n_to_json(int m, long trials, std::uint64_t seed,
                                const std::vector<LimitNRow>& rows);

std::string limits_m_to_csv(NRule rule, long trials, std::uint64_t seed,
                            const std::vector<LimitMRow>& rows);
nlohmann::json limits_m_to_json(NRule rule, long trials, std::uint64_t seed,
                                const std::vector<LimitMRow>& rows);

std::string lemma_iv_to_csv(std::uint64_t seed, const LemmaIvResult& r);
nlohmann::json lemma_iv_to_json(std::uint64_t seed, const LemmaIvResult& r);

std::string concentration_to_csv(const ConcentrationTable& t);
nlohmann::json concentration_to_json(const ConcentrationTable& t);

std::string perceptron_bench_to_csv(const PerceptronBench& b);
nlohmann::json perceptron_bench_to_json(const PerceptronBench& b);

std::string slope_to_csv(const RunConfig& cfg, double t_min, double t_max,
                         const SlopeFit& fit);
nlohmann::json slope_to_json(const RunConfig& cfg, double t_min, double t_max,
                             const SlopeFit& fit);

}  // namespace conic
