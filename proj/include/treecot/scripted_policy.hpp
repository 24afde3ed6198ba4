#pragma once

#include "treecot/policy.hpp"

namespace treecot {

// Deterministic toy-task policy: proposals and rollouts are legal Countdown
// moves, except that with probability blunder_rate a combine step states
// (true result + 1). Every call derives its RNG stream from
// (seed, call kind, problem id, prefix, ordinal) alone, so outputs are
// independent of threading and batch composition.
class ScriptedPolicy : public Policy {
public:
    explicit ScriptedPolicy(PolicyConfig cfg) : cfg_(cfg) {}

    std::vector<StepProposal> propose_steps(const Problem& problem,
                                            const std::vector<Step>& prefix, int k) override;
    std::vector<RolloutResult> rollout(const Problem& problem, const std::vector<Step>& prefix,
                                       int m) override;
    double self_evaluate(const Problem& problem, const std::string& solution_text,
                         int n_votes) override;
    std::string rewrite_step(const Problem& problem, const std::string& prior_cot,
                             const Step& step) override;
    std::string write_backtrack_phrase(const Problem& problem, const std::string& prior_cot,
                                       const std::optional<Step>& target_step) override;

    const PolicyConfig& config() const { return cfg_; }

private:
    PolicyConfig cfg_;
};

}  // namespace treecot
