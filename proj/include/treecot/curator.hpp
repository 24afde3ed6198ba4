#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "treecot/policy.hpp"
#include "treecot/types.hpp"

namespace treecot::curator {

struct SftRecord {
    std::string problem_id;
    std::string prompt;
    std::string response;
    std::string source_tag;
    int k_backtracks = 0;
    int n_restarts = 0;
    std::int64_t token_estimate = 0;
};

nlohmann::json to_json(const SftRecord& r);
SftRecord sft_from_json(const nlohmann::json& j);

struct CurateConfig {
    int per_problem_direct = 1;  // max solutions with zero junctions
    int per_problem_search = 3;  // max solutions with >= 1 junction
    std::uint64_t seed = 0;
};

struct CurationStats {
    struct Bucket {
        int problems = 0;
        int trajectories = 0;
        std::int64_t backtracks = 0;
        std::int64_t restarts = 0;
        std::int64_t tokens = 0;
    };
    std::vector<std::pair<std::string, Bucket>> by_tag;  // first-seen tag order
    Bucket total;
};

nlohmann::json to_json(const CurationStats& s);
std::string render_stats_table(const CurationStats& s);

// Per problem: a seeded uniform draw of up to per_problem_direct zero-junction
// and per_problem_search junctioned solutions, emitted in input problem order.
// Every record's problem must appear in `problems` (source tags come from
// there); otherwise InputError.
std::vector<SftRecord> curate_sft(const std::vector<CotRecord>& records,
                                  const std::vector<Problem>& problems,
                                  const CurateConfig& cfg, CurationStats* stats = nullptr);

struct PassRateReport {
    std::string problem_id;
    int n_samples = 0;
    int n_correct = 0;
    double pass_rate = 0.0;
};

nlohmann::json to_json(const PassRateReport& r);
PassRateReport pass_rate_from_json(const nlohmann::json& j);

// Fraction of n_samples whole-solution rollouts (empty prefix) the verifier
// accepts.
PassRateReport pass_rate_for(const Problem& problem, Policy& policy, int n_samples);
std::vector<PassRateReport> compute_pass_rates(const std::vector<Problem>& problems,
                                               Policy& policy, int n_samples);

struct FilterBand {
    double low = 0.01;   // inclusive
    double high = 0.75;  // exclusive
};

// Keeps problems with low <= pass_rate < high: solvable sometimes, not
// saturated. Problems without a report are dropped.
std::vector<Problem> filter_rl_prompts(const std::vector<Problem>& problems,
                                       const std::vector<PassRateReport>& reports,
                                       const FilterBand& band = {});

struct PrefilterResult {
    std::vector<Problem> kept;
    std::vector<std::pair<std::string, std::string>> dropped;  // (problem_id, reason)
};

// Cheap string screens: unusable reference answers and statements that lean
// on figures.
PrefilterResult prefilter_problems(const std::vector<Problem>& problems);

}  // namespace treecot::curator
