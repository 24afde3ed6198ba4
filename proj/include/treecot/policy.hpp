#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treecot/types.hpp"

namespace treecot {

struct StepProposal {
    Step step;
    double prior_weight = 1.0;  // relative; callers normalize over siblings
};

struct RolloutResult {
    std::string full_solution_text;            // prefix + sampled continuation
    std::optional<std::string> predicted_answer;  // absent when no answer emitted
};

struct PolicyConfig {
    std::uint64_t seed = 0;
    double blunder_rate = 0.3;  // scripted policy: chance a combine step misstates its result
    int max_rollout_steps = 50;
};

// A policy is the text-producing engine behind search, self-evaluation and
// chain-of-thought writing. Implementations must be stateless per call: the
// same (inputs, seed) always produce the same outputs regardless of thread
// count or call order.
class Policy {
public:
    virtual ~Policy() = default;

    // Up to k distinct candidate next steps for the node whose root-to-node
    // steps are `prefix`. Fewer than k (even zero) is legal.
    virtual std::vector<StepProposal> propose_steps(const Problem& problem,
                                                    const std::vector<Step>& prefix,
                                                    int k) = 0;

    // m independent completions of the prefix to a final answer.
    virtual std::vector<RolloutResult> rollout(const Problem& problem,
                                               const std::vector<Step>& prefix,
                                               int m) = 0;

    // Fraction of n_votes "yes" votes on whether the finished solution's
    // reasoning is valid. Always in {0, 1/n, ..., 1}.
    virtual double self_evaluate(const Problem& problem, const std::string& solution_text,
                                 int n_votes) = 0;

    // Rewrite one solution step as flowing chain-of-thought prose that
    // continues `prior_cot`.
    virtual std::string rewrite_step(const Problem& problem, const std::string& prior_cot,
                                     const Step& step) = 0;

    // Backtracking connective. Absent target_step means a restart to the
    // root; the result then begins with a restart formulation. Otherwise a
    // backtrack formulation referencing the target step's content.
    virtual std::string write_backtrack_phrase(const Problem& problem,
                                               const std::string& prior_cot,
                                               const std::optional<Step>& target_step) = 0;
};

}  // namespace treecot
