#include "treecot/grpo.hpp"

#include <cmath>

#include "treecot/verifier.hpp"

namespace treecot::grpo {

RewardGroup assign_rewards(const Problem& problem,
                           const std::vector<SolutionText>& solutions) {
    RewardGroup g;
    g.problem_id = problem.id;
    g.solutions.reserve(solutions.size());
    for (const SolutionText& s : solutions) {
        auto ans = verifier::extract_answer(s.text);
        bool ok = verifier::score(ans, problem.reference_answer).is_correct;
        g.solutions.push_back({s.solution_id, ok ? 1.0 : -1.0});
    }
    return g;
}

std::vector<double> advantages(const RewardGroup& group) {
    const auto& sols = group.solutions;
    std::vector<double> out(sols.size(), 0.0);
    if (sols.empty()) return out;
    auto n = static_cast<std::int64_t>(sols.size());

    bool integral = true;
    std::int64_t int_sum = 0;
    for (const ScoredSolution& s : sols) {
        double r = s.reward;
        if (std::abs(r) > 1e15 || r != std::floor(r)) {
            integral = false;
            break;
        }
        int_sum += static_cast<std::int64_t>(r);
    }

    if (integral) {
        // a_i = (n*r_i - sum) / n with an integer numerator: the numerators
        // cancel exactly, so group sums stay at literal zero.
        for (std::size_t i = 0; i < sols.size(); ++i) {
            auto num = n * static_cast<std::int64_t>(sols[i].reward) - int_sum;
            out[i] = static_cast<double>(num) / static_cast<double>(n);
        }
    } else {
        double mean = 0.0;
        for (const ScoredSolution& s : sols) mean += s.reward;
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < sols.size(); ++i) out[i] = sols[i].reward - mean;
    }
    return out;
}

nlohmann::json to_json(const AdvantageRecord& r) {
    return {{"problem_id", r.problem_id},
            {"solution_id", r.solution_id},
            {"reward", r.reward},
            {"advantage", r.advantage}};
}

std::vector<AdvantageRecord> batch_advantages(const std::vector<RewardGroup>& groups,
                                              const BatchConfig& cfg,
                                              std::vector<std::string>* warnings) {
    if (cfg.rollouts_per_prompt < 1) throw InputError("rollouts_per_prompt must be >= 1");
    if (cfg.batch_size < 1) throw InputError("batch_size must be >= 1");
    std::vector<AdvantageRecord> out;
    for (const RewardGroup& g : groups) {
        if (warnings && static_cast<int>(g.solutions.size()) != cfg.rollouts_per_prompt)
            warnings->push_back("group " + g.problem_id + " has " +
                                std::to_string(g.solutions.size()) + " rollouts, expected " +
                                std::to_string(cfg.rollouts_per_prompt));
        std::vector<double> adv = advantages(g);
        for (std::size_t i = 0; i < g.solutions.size(); ++i)
            out.push_back({g.problem_id, g.solutions[i].solution_id, g.solutions[i].reward,
                           adv[i]});
    }
    if (warnings && !out.empty() &&
        out.size() % static_cast<std::size_t>(cfg.batch_size) != 0)
        warnings->push_back(std::to_string(out.size()) + " records do not tile batch_size " +
                            std::to_string(cfg.batch_size));
    return out;
}

}  // namespace treecot::grpo
