#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "treecot/types.hpp"

namespace treecot::grpo {

struct ScoredSolution {
    std::string solution_id;
    double reward = 0.0;  // +1 verifier-correct, -1 otherwise
};

struct RewardGroup {
    std::string problem_id;
    std::vector<ScoredSolution> solutions;
};

struct SolutionText {
    std::string solution_id;
    std::string text;
};

// Verifier-scored ±1 rewards for one prompt's rollouts.
RewardGroup assign_rewards(const Problem& problem,
                           const std::vector<SolutionText>& solutions);

// reward_i - mean(rewards), no deviation scaling, no KL. Integer rewards go
// through integer-numerator arithmetic so group sums cancel exactly.
std::vector<double> advantages(const RewardGroup& group);

struct AdvantageRecord {
    std::string problem_id;
    std::string solution_id;
    double reward = 0.0;
    double advantage = 0.0;
};

nlohmann::json to_json(const AdvantageRecord& r);

struct BatchConfig {
    int rollouts_per_prompt = 4;
    int batch_size = 256;  // downstream records per optimizer batch
};

// Flattens groups into records; complains (without aborting) about groups
// whose size differs from rollouts_per_prompt and totals that don't tile
// batch_size.
std::vector<AdvantageRecord> batch_advantages(const std::vector<RewardGroup>& groups,
                                              const BatchConfig& cfg,
                                              std::vector<std::string>* warnings = nullptr);

}  // namespace treecot::grpo
