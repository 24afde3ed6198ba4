#include "treecot/validate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "treecot/verifier.hpp"

namespace treecot {
namespace {

std::string node_tag(int id) { return "node " + std::to_string(id); }

bool in_unit(double v) { return v >= 0.0 && v <= 1.0 && !std::isnan(v); }

}  // namespace

std::vector<std::string> validate_tree(const SearchTree& tree) {
    std::vector<std::string> out;
    if (tree.nodes.empty()) {
        out.push_back("tree has no nodes");
        return out;
    }
    if (tree.root_id != 0) out.push_back("root_id must be 0");

    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& n = tree.nodes[i];
        if (n.node_id != static_cast<int>(i)) {
            out.push_back(node_tag(n.node_id) + ": node_id must equal its index " +
                          std::to_string(i));
            continue;  // ids are broken; positional checks below would mislead
        }
        bool is_root = i == 0;
        if (is_root) {
            if (n.parent) out.push_back("node 0: root must have no parent");
            if (n.step) out.push_back("node 0: root must have no step");
        } else {
            if (!n.parent)
                out.push_back(node_tag(n.node_id) + ": missing parent");
            else if (*n.parent < 0 || *n.parent >= n.node_id)
                out.push_back(node_tag(n.node_id) +
                              ": parent must precede the node in creation order");
            if (!n.step) out.push_back(node_tag(n.node_id) + ": missing step");
        }
        if (!in_unit(n.q_value))
            out.push_back(node_tag(n.node_id) + ": q_value outside [0, 1]");
        if (!in_unit(n.prior))
            out.push_back(node_tag(n.node_id) + ": prior outside [0, 1]");
        if (n.visit_count < 0)
            out.push_back(node_tag(n.node_id) + ": negative visit_count");
        if (n.rollout_reward && !in_unit(*n.rollout_reward))
            out.push_back(node_tag(n.node_id) + ": rollout_reward outside [0, 1]");

        bool terminal = n.terminal_verdict != TerminalVerdict::nonterminal;
        if (terminal != n.predicted_answer.has_value())
            out.push_back(node_tag(n.node_id) +
                          ": predicted_answer must be present exactly for terminal nodes");
        if (terminal && (n.expanded || !n.children.empty()))
            out.push_back(node_tag(n.node_id) + ": terminal nodes are never expanded");
        if (!n.step && terminal)
            out.push_back(node_tag(n.node_id) + ": root cannot be terminal");
    }

    // Parent/child symmetry and depth-consistent step indices. Depths come
    // from one ascending pass instead of depth_of so a malformed parent
    // chain cannot send the walk in circles; nodes past a break just skip
    // the depth check (the break itself was flagged above).
    std::vector<std::optional<int>> depth(tree.nodes.size());
    if (!tree.nodes[0].parent) depth[0] = 0;
    for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
        const TreeNode& n = tree.nodes[i];
        if (n.node_id != static_cast<int>(i) || !n.parent) continue;
        int p = *n.parent;
        if (p < 0 || p >= static_cast<int>(i)) continue;
        const auto& sib = tree.nodes[static_cast<std::size_t>(p)].children;
        if (std::find(sib.begin(), sib.end(), n.node_id) == sib.end())
            out.push_back(node_tag(n.node_id) + ": not registered in parent's children");
        if (depth[static_cast<std::size_t>(p)])
            depth[i] = *depth[static_cast<std::size_t>(p)] + 1;
        if (n.step && depth[i] && n.step->index != *depth[i] - 1)
            out.push_back(node_tag(n.node_id) + ": step index disagrees with depth");
    }

    for (const TreeNode& n : tree.nodes) {
        if (!n.expanded || n.children.empty()) continue;
        double prior_sum = 0.0;
        for (int c : n.children) prior_sum += tree.at(c).prior;
        if (std::abs(prior_sum - 1.0) > 1e-6)
            out.push_back(node_tag(n.node_id) + ": child priors sum to " +
                          std::to_string(prior_sum) + ", expected 1");
        if (n.visit_count >= 1) {
            std::int64_t child_sum = 0;
            for (int c : n.children) child_sum += tree.at(c).visit_count;
            if (n.visit_count != 1 + child_sum)
                out.push_back(node_tag(n.node_id) + ": visit_count " +
                              std::to_string(n.visit_count) + " != 1 + children sum " +
                              std::to_string(child_sum));
        }
    }
    return out;
}

std::vector<std::string> validate_sequence(const LinearSequence& sequence,
                                           const SearchTree& tree) {
    if (sequence.problem_id != tree.problem_id)
        throw InputError("sequence problem_id '" + sequence.problem_id +
                         "' does not match tree problem_id '" + tree.problem_id + "'");
    std::vector<std::string> out;
    if (sequence.entries.empty()) {
        out.push_back("sequence has no entries");
        return out;
    }
    auto valid_id = [&](int id) {
        return id >= 0 && id < static_cast<int>(tree.nodes.size());
    };

    int junctions = 0;
    for (std::size_t i = 0; i < sequence.entries.size(); ++i) {
        const SequenceEntry& e = sequence.entries[i];
        std::string tag = "entry " + std::to_string(i);
        if (!valid_id(e.node)) {
            out.push_back(tag + ": node " + std::to_string(e.node) + " not in tree");
            continue;
        }
        if (i == 0) {
            if (e.node != tree.root_id || e.kind != JunctionKind::advance)
                out.push_back(tag + ": sequence must start at the root with an advance");
            continue;
        }
        int prev = sequence.entries[i - 1].node;
        if (!valid_id(prev)) continue;
        switch (e.kind) {
            case JunctionKind::advance:
                if (!tree.at(e.node).parent || *tree.at(e.node).parent != prev)
                    out.push_back(tag + ": advance node " + std::to_string(e.node) +
                                  " is not a child of " + std::to_string(prev));
                break;
            case JunctionKind::backtrack:
                ++junctions;
                if (e.node == tree.root_id)
                    out.push_back(tag + ": backtrack to the root must use kind restart");
                else if (e.node == prev || !tree.is_ancestor(e.node, prev))
                    out.push_back(tag + ": backtrack node " + std::to_string(e.node) +
                                  " is not a proper ancestor of " + std::to_string(prev));
                break;
            case JunctionKind::restart:
                ++junctions;
                if (e.node != tree.root_id)
                    out.push_back(tag + ": restart must target the root");
                break;
        }
    }

    int last = sequence.entries.back().node;
    if (valid_id(last) && tree.at(last).terminal_verdict != TerminalVerdict::correct)
        out.push_back("sequence must end at a correct terminal");
    if (sequence.k_backtracks != junctions)
        out.push_back("k_backtracks " + std::to_string(sequence.k_backtracks) +
                      " != junction count " + std::to_string(junctions));

    std::set<std::string> incorrect_answers;
    for (const SequenceEntry& e : sequence.entries) {
        if (!valid_id(e.node)) continue;
        const TreeNode& n = tree.at(e.node);
        if (n.terminal_verdict != TerminalVerdict::incorrect || !n.predicted_answer) continue;
        std::string canon = verifier::canonical_answer(*n.predicted_answer);
        if (!incorrect_answers.insert(canon).second)
            out.push_back("duplicate incorrect answer '" + canon + "' in sequence");
    }
    return out;
}

}  // namespace treecot
