#include "treecot/linearizer.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "treecot/hash.hpp"
#include "treecot/verifier.hpp"

namespace treecot::linearizer {
namespace {

int common_ancestor(const SearchTree& tree, int a, int b) {
    auto pa = tree.path_from_root(a);
    auto pb = tree.path_from_root(b);
    int dca = tree.root_id;
    for (std::size_t i = 0; i < pa.size() && i < pb.size() && pa[i] == pb[i]; ++i) dca = pa[i];
    return dca;
}

std::string canon_answer(const SearchTree& tree, int id) {
    const auto& ans = tree.at(id).predicted_answer;
    return ans ? verifier::canonical_answer(*ans) : std::string{};
}

// Ordered k-arrangements of `incorrect` with pairwise-distinct canonical
// answers, visited in lexicographic index order; emit() returns false to
// stop early.
void for_each_arrangement(const SearchTree& tree, const std::vector<int>& incorrect, int k,
                          const std::function<bool(const std::vector<int>&)>& emit) {
    std::vector<int> picked;
    std::vector<bool> used(incorrect.size(), false);
    std::set<std::string> answers;
    bool stop = false;
    std::function<void()> rec = [&] {
        if (stop) return;
        if (static_cast<int>(picked.size()) == k) {
            if (!emit(picked)) stop = true;
            return;
        }
        for (std::size_t i = 0; i < incorrect.size() && !stop; ++i) {
            if (used[i]) continue;
            std::string a = canon_answer(tree, incorrect[i]);
            if (!answers.insert(a).second) continue;
            used[i] = true;
            picked.push_back(incorrect[i]);
            rec();
            picked.pop_back();
            used[i] = false;
            answers.erase(a);
        }
    };
    rec();
}

}  // namespace

TerminalHarvest harvest_terminals(const SearchTree& tree, const Problem& problem,
                                  Policy& policy, int n_votes) {
    if (n_votes < 1) throw InputError("n_votes must be >= 1");
    TerminalHarvest h;
    std::vector<int> stack{tree.root_id};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        const TreeNode& n = tree.at(id);
        if (n.terminal_verdict == TerminalVerdict::correct)
            h.correct.push_back(id);
        else if (n.terminal_verdict == TerminalVerdict::incorrect)
            h.incorrect.push_back(id);
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
    for (int id : h.correct) {
        double score = policy.self_evaluate(problem, tree.solution_text(id), n_votes);
        h.eval_scores.emplace_back(id, score);
        if (score == 1.0) h.high_quality.push_back(id);
    }
    return h;
}

LinearSequence build_sequence(const SearchTree& tree, const std::vector<int>& targets) {
    if (targets.empty()) throw InputError("build_sequence needs at least one target");
    LinearSequence seq;
    seq.problem_id = tree.problem_id;

    auto advance_from = [&](int from, int to) {
        // Append the path below `from` down to `to` as advance entries.
        auto path = tree.path_from_root(to);
        auto it = std::find(path.begin(), path.end(), from);
        for (++it; it != path.end(); ++it) seq.entries.push_back({*it, JunctionKind::advance});
    };

    seq.entries.push_back({tree.root_id, JunctionKind::advance});
    advance_from(tree.root_id, targets.front());
    for (std::size_t i = 1; i < targets.size(); ++i) {
        int dca = common_ancestor(tree, targets[i - 1], targets[i]);
        seq.entries.push_back({dca, dca == tree.root_id ? JunctionKind::restart
                                                        : JunctionKind::backtrack});
        ++seq.k_backtracks;
        advance_from(dca, targets[i]);
    }
    return seq;
}

LinearSequence linearize(const SearchTree& tree, const TerminalHarvest& harvest,
                         const LinearizeRequest& request) {
    if (request.k < 0) throw InputError("k must be >= 0");
    if (harvest.high_quality.empty())
        throw LinearizeError("no high-quality correct terminal in tree for problem " +
                             tree.problem_id);

    std::set<std::string> distinct;
    for (int id : harvest.incorrect) distinct.insert(canon_answer(tree, id));
    if (static_cast<int>(distinct.size()) < request.k)
        throw LinearizeError("need " + std::to_string(request.k) +
                             " distinct incorrect answers, tree for problem " + tree.problem_id +
                             " has " + std::to_string(distinct.size()));

    SplitMix64 rng(derive_seed(request.seed, "linearize", tree.problem_id, {},
                               static_cast<std::uint64_t>(request.k)));
    std::vector<int> targets;
    if (request.k > 0) {
        auto order = sample_indices(harvest.incorrect.size(), harvest.incorrect.size(), rng);
        std::set<std::string> seen;
        for (std::size_t idx : order) {
            if (static_cast<int>(targets.size()) == request.k) break;
            int id = harvest.incorrect[idx];
            if (seen.insert(canon_answer(tree, id)).second) targets.push_back(id);
        }
    }
    targets.push_back(
        harvest.high_quality[rng.next_below(harvest.high_quality.size())]);
    return build_sequence(tree, targets);
}

std::vector<LinearSequence> enumerate_sequences(const SearchTree& tree,
                                                const TerminalHarvest& harvest, int k_min,
                                                int k_max, std::size_t max_per_tree,
                                                std::uint64_t seed) {
    if (k_min < 0 || k_max < k_min) throw InputError("bad k range");

    // Pass 1: count keys. Pass 2: build the wanted ordinals only.
    std::uint64_t total = 0;
    auto sweep = [&](const std::function<bool(const std::vector<int>&, int)>& take) {
        for (int k = k_min; k <= k_max; ++k) {
            bool go = true;
            for_each_arrangement(tree, harvest.incorrect, k,
                                 [&](const std::vector<int>& lambda) {
                                     for (int psi : harvest.high_quality)
                                         if (!take(lambda, psi)) return go = false;
                                     return true;
                                 });
            if (!go) break;
        }
    };
    sweep([&](const std::vector<int>&, int) {
        ++total;
        return true;
    });

    std::vector<std::uint64_t> wanted;  // ordinals, ascending
    bool sample = total > max_per_tree;
    if (sample) {
        SplitMix64 rng(derive_seed(seed, "enumerate", tree.problem_id, {}));
        auto picks = sample_indices(static_cast<std::size_t>(total), max_per_tree, rng);
        wanted.assign(picks.begin(), picks.end());
        std::sort(wanted.begin(), wanted.end());
    }

    std::vector<LinearSequence> out;
    std::uint64_t ordinal = 0;
    std::size_t cursor = 0;
    sweep([&](const std::vector<int>& lambda, int psi) {
        bool take = !sample || (cursor < wanted.size() && wanted[cursor] == ordinal);
        if (take) {
            if (sample) ++cursor;
            std::vector<int> targets = lambda;
            targets.push_back(psi);
            out.push_back(build_sequence(tree, targets));
        }
        ++ordinal;
        return !sample || cursor < wanted.size();
    });
    return out;
}

}  // namespace treecot::linearizer
