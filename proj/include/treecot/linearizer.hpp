#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treecot/policy.hpp"
#include "treecot/types.hpp"

namespace treecot::linearizer {

// Raised when a tree cannot yield the requested sequence (no unanimous
// correct terminal, or fewer distinct incorrect answers than k). Callers
// treat this as "skip the tree", not as corrupt input.
struct LinearizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TerminalHarvest {
    std::vector<int> correct;        // DFS preorder
    std::vector<int> incorrect;      // DFS preorder
    std::vector<int> high_quality;   // subset of correct: unanimous self-eval
    std::vector<std::pair<int, double>> eval_scores;  // (correct terminal, score)
};

TerminalHarvest harvest_terminals(const SearchTree& tree, const Problem& problem,
                                  Policy& policy, int n_votes = 8);

struct LinearizeRequest {
    int k = 0;  // incorrect terminals to walk before the correct one
    std::uint64_t seed = 0;
};

// The walk for an ordered target list: advance along the tree path to each
// terminal; between consecutive terminals emit one junction to the deepest
// common ancestor (a restart entry when that ancestor is the root), then
// re-descend. Exposed for enumeration and tests.
LinearSequence build_sequence(const SearchTree& tree, const std::vector<int>& targets);

// Seeded draw: one uniform high-quality correct terminal (walked last) plus
// k incorrect terminals with pairwise-distinct answers.
LinearSequence linearize(const SearchTree& tree, const TerminalHarvest& harvest,
                         const LinearizeRequest& request);

// Every sequence for k in [k_min, k_max]: ordered arrangements of
// distinct-answer incorrect terminals crossed with every high-quality
// correct terminal, in canonical order. When the total exceeds max_per_tree
// a seeded subset is drawn (distinct, canonical order preserved).
std::vector<LinearSequence> enumerate_sequences(const SearchTree& tree,
                                                const TerminalHarvest& harvest, int k_min,
                                                int k_max, std::size_t max_per_tree,
                                                std::uint64_t seed);

}  // namespace treecot::linearizer
