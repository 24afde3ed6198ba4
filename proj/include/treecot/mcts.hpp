#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "treecot/policy.hpp"
#include "treecot/types.hpp"

namespace treecot::mcts {

struct MctsConfig {
    int n_iterations = 32;
    int k_actions = 8;    // candidate steps per expansion
    int m_rollouts = 16;  // reward rollouts per new nonterminal node
    double c_puct = 1.0;
    int max_depth = 50;
};

// One record per select->expand->backpropagate cycle; enough to replay the
// whole value flow without rerunning the policy.
struct TraceChild {
    int node_id = 0;
    double reward = 0.0;
    std::string verdict;
};

struct TraceIteration {
    int iteration = 0;
    std::vector<int> path;  // root -> frontier
    int expanded = -1;      // frontier id when an expansion happened
    std::vector<TraceChild> children;
    int backprop_leaf = 0;
};

struct SearchTrace {
    std::vector<TraceIteration> iterations;
};

nlohmann::json to_json(const TraceIteration& it);

// PUCT selection score of `child` under `parent`; dead ends score
// -infinity.
double puct_score(const SearchTree& tree, int parent, int child, double c_puct);

// Argmax of puct_score over children; ties broken by lowest node_id.
// Requires a non-empty child list.
int select_child(const SearchTree& tree, int node_id, double c_puct);

// Creates up to k_actions children, scoring each nonterminal one by
// m_rollouts verifier-checked rollouts. Requires an unexpanded nonterminal
// node above max_depth. Returns new node ids.
std::vector<int> expand(SearchTree& tree, const Problem& problem, int node_id, Policy& policy,
                        const MctsConfig& cfg);

// Visit counts +1 along root->leaf; Q recomputed bottom-up from children
// values plus the node's own expansion reward. Root Q stays untouched.
void backpropagate(SearchTree& tree, int leaf_id);

SearchTree run_search(const Problem& problem, Policy& policy, const MctsConfig& cfg,
                      SearchTrace* trace = nullptr);

}  // namespace treecot::mcts
