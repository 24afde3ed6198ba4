#include "treecot/scripted_policy.hpp"

#include <algorithm>

#include "treecot/hash.hpp"
#include "treecot/toy.hpp"

namespace treecot {
namespace {

std::vector<std::string> step_texts(const std::vector<Step>& prefix) {
    std::vector<std::string> out;
    out.reserve(prefix.size());
    for (const auto& s : prefix) out.push_back(s.text);
    return out;
}

std::int64_t maybe_blunder(std::int64_t truth, double rate, SplitMix64& rng) {
    return rng.next_double() < rate ? truth + 1 : truth;
}

}  // namespace

std::vector<StepProposal> ScriptedPolicy::propose_steps(const Problem& problem,
                                                        const std::vector<Step>& prefix, int k) {
    std::vector<StepProposal> out;
    if (k <= 0) return out;
    auto texts = step_texts(prefix);
    auto state = toy::replay(problem, texts, /*check_arithmetic=*/false);
    if (!state || state->answered) return out;  // garbage or finished prefix: dead end

    int index = static_cast<int>(prefix.size());
    if (state->values.size() == 1) {
        out.push_back({{toy::answer_text(state->values[0]), index}, 1.0});
        return out;
    }

    auto moves = toy::legal_moves(*state);
    SplitMix64 rng(derive_seed(cfg_.seed, "propose", problem.id, texts));
    auto picks = sample_indices(moves.size(), static_cast<std::size_t>(k), rng);
    std::sort(picks.begin(), picks.end());  // canonical order regardless of draw order
    for (std::size_t idx : picks) {
        const toy::Move& m = moves[idx];
        std::int64_t stated = maybe_blunder(m.result, cfg_.blunder_rate, rng);
        out.push_back({{toy::combine_text(m.a, m.b, m.op, stated), index}, 1.0});
    }
    return out;
}

std::vector<RolloutResult> ScriptedPolicy::rollout(const Problem& problem,
                                                   const std::vector<Step>& prefix, int m) {
    std::vector<RolloutResult> out;
    out.reserve(static_cast<std::size_t>(std::max(m, 0)));
    auto texts = step_texts(prefix);
    auto base = toy::replay(problem, texts, /*check_arithmetic=*/false);

    for (int j = 0; j < m; ++j) {
        SplitMix64 rng(derive_seed(cfg_.seed, "rollout", problem.id, texts,
                                   static_cast<std::uint64_t>(j)));
        std::vector<std::string> lines = texts;
        RolloutResult r;
        if (base) {
            toy::ToyState st = *base;
            for (int steps = 0; !st.answered && steps < cfg_.max_rollout_steps; ++steps) {
                std::string line;
                if (st.values.size() == 1) {
                    line = toy::answer_text(st.values[0]);
                } else {
                    auto moves = toy::legal_moves(st);
                    if (moves.empty()) break;
                    const toy::Move& mv = moves[rng.next_below(moves.size())];
                    std::int64_t stated = maybe_blunder(mv.result, cfg_.blunder_rate, rng);
                    line = toy::combine_text(mv.a, mv.b, mv.op, stated);
                }
                auto p = toy::parse_step(line);
                toy::apply_step(st, *p, /*check_arithmetic=*/false);
                lines.push_back(std::move(line));
            }
            if (st.answered) r.predicted_answer = std::to_string(*st.stated_answer);
        }
        std::string full;
        for (const auto& l : lines) {
            if (!full.empty()) full += '\n';
            full += l;
        }
        r.full_solution_text = std::move(full);
        out.push_back(std::move(r));
    }
    return out;
}

double ScriptedPolicy::self_evaluate(const Problem& problem, const std::string& solution_text,
                                     int n_votes) {
    (void)n_votes;  // the replay judge is deterministic, so votes are unanimous
    return toy::judge_solution(problem, solution_text) ? 1.0 : 0.0;
}

std::string ScriptedPolicy::rewrite_step(const Problem& problem, const std::string& prior_cot,
                                         const Step& step) {
    (void)problem;
    auto p = toy::parse_step(step.text);
    if (!p) return step.text;
    if (p->kind == toy::ParsedStep::answer)
        return "We are left with the single value " + std::to_string(p->stated) + ".";
    std::string lead = prior_cot.empty() ? "Let's combine " : "Next, let's combine ";
    lead += std::to_string(p->a);
    lead += " and ";
    lead += std::to_string(p->b);
    lead += " using ";
    lead += p->op;
    lead += ", which gives ";
    lead += std::to_string(p->stated);
    lead += '.';
    return lead;
}

std::string ScriptedPolicy::write_backtrack_phrase(const Problem& problem,
                                                   const std::string& prior_cot,
                                                   const std::optional<Step>& target_step) {
    (void)problem;
    (void)prior_cot;
    if (!target_step) return "Let's restart from the beginning and try a different approach.";
    auto p = toy::parse_step(target_step->text);
    if (p && p->kind == toy::ParsedStep::combine)
        return "Let's go back to where we combined " + std::to_string(p->a) + " and " +
               std::to_string(p->b) + " using " + std::string(1, p->op) + " to get " +
               std::to_string(p->stated) + ", and take a different path from there.";
    return "Let's go back to the step \"" + target_step->text + "\" and continue differently.";
}

}  // namespace treecot
