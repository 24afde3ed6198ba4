#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treecot {

struct Problem {
    std::string id;
    std::string statement;
    std::string reference_answer;
    std::string source_tag;  // corpus label, e.g. "toy" or "math"
};

struct Step {
    std::string text;
    int index = 0;  // 0-based depth of the step below the root
};

enum class TerminalVerdict { nonterminal, correct, incorrect };

struct TreeNode {
    int node_id = 0;
    std::optional<int> parent;           // absent only at the root
    std::optional<Step> step;            // absent only at the root
    double q_value = 0.0;                // Q(parent, this); stays 0 at the root
    std::int64_t visit_count = 0;        // N(this) == N(parent, this) in a tree
    double prior = 1.0;                  // normalized over siblings at expansion
    std::optional<double> rollout_reward;  // R(this), set once when created
    TerminalVerdict terminal_verdict = TerminalVerdict::nonterminal;
    std::optional<std::string> predicted_answer;  // set iff terminal
    bool expanded = false;
    std::vector<int> children;           // creation order == ascending node_id
};

struct SearchTree {
    std::string problem_id;
    std::vector<TreeNode> nodes;  // node_id is the index; root is nodes[0]
    int root_id = 0;

    const TreeNode& at(int id) const { return nodes.at(static_cast<std::size_t>(id)); }
    TreeNode& at(int id) { return nodes.at(static_cast<std::size_t>(id)); }

    int depth_of(int id) const {
        int d = 0;
        for (const TreeNode* n = &at(id); n->parent; n = &at(*n->parent)) ++d;
        return d;
    }

    // Path root -> id, inclusive.
    std::vector<int> path_from_root(int id) const {
        std::vector<int> path;
        for (int cur = id;;) {
            path.push_back(cur);
            const auto& p = at(cur).parent;
            if (!p) break;
            cur = *p;
        }
        return {path.rbegin(), path.rend()};
    }

    bool is_ancestor(int anc, int id) const {
        for (std::optional<int> cur = id; cur; cur = at(*cur).parent)
            if (*cur == anc) return true;
        return false;
    }

    // Expanded, childless, nonterminal: nothing can ever be selected below it.
    bool is_dead_end(int id) const {
        const TreeNode& n = at(id);
        return n.expanded && n.children.empty() &&
               n.terminal_verdict == TerminalVerdict::nonterminal;
    }

    // Step texts along root -> id, joined with newlines (the root has no step).
    std::string solution_text(int id) const {
        std::string out;
        for (int n : path_from_root(id)) {
            const auto& step = at(n).step;
            if (!step) continue;
            if (!out.empty()) out += '\n';
            out += step->text;
        }
        return out;
    }
};

enum class JunctionKind { advance, backtrack, restart };

struct SequenceEntry {
    int node = 0;
    JunctionKind kind = JunctionKind::advance;
};

struct LinearSequence {
    std::string problem_id;
    std::vector<SequenceEntry> entries;
    int k_backtracks = 0;  // junction entries of either non-advance kind
};

enum class SegmentKind {
    step,
    reflection,
    continue_affirmation,
    backtrack_phrase,
    restart_phrase,
    final_answer,
};

struct CotSegment {
    SegmentKind kind = SegmentKind::step;
    std::string text;
};

struct CotDocument {
    std::string problem_id;
    std::vector<CotSegment> segments;
    std::string final_answer;
    int n_backtracks = 0;
    int n_restarts = 0;
};

// Flat record shape shared by cot.jsonl and downstream curation.
struct CotRecord {
    std::string problem_id;
    std::string prompt;
    std::string response;
    int k_backtracks = 0;
    int n_restarts = 0;
    std::int64_t token_estimate = 0;
};

struct Verdict {
    bool is_correct = false;
    std::string canonical_predicted;
    std::string canonical_reference;
};

// Thrown for malformed inputs that a caller could not have validated cheaply.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace treecot
