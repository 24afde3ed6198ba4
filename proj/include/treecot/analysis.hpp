#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "treecot/types.hpp"

namespace treecot::analysis {

struct BacktrackMarkers {
    std::vector<std::string> backtrack{"let's go back", "let's backtrack"};
    std::vector<std::string> restart{"let's restart", "let's start over"};
};

// Case-insensitive substring occurrence counts: (backtracks, restarts).
std::pair<int, int> count_text_backtracks(const std::string& text,
                                          const BacktrackMarkers& markers = {});

// Sample Pearson correlation; throws InputError for mismatched/short inputs
// or zero variance (undefined correlation).
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Graphviz source for a tree, optionally overlaying a sequence's junction
// jumps as dashed edges. Byte-stable for identical inputs.
std::string export_tree_dot(const SearchTree& tree,
                            const std::optional<LinearSequence>& overlay = std::nullopt);

struct LengthStats {
    std::size_t count = 0;
    double token_mean = 0.0;
    double token_median = 0.0;
    std::int64_t token_max = 0;
    std::int64_t token_total = 0;
};

// Whitespace-token stats over record responses (recomputed, not trusted from
// token_estimate).
LengthStats length_stats(const std::vector<CotRecord>& records);

struct CorpusMetrics {
    LengthStats lengths;
    std::int64_t backtracks = 0;  // marker occurrences summed over responses
    std::int64_t restarts = 0;
};

CorpusMetrics corpus_metrics(const std::vector<CotRecord>& records,
                             const BacktrackMarkers& markers = {});

nlohmann::json to_json(const CorpusMetrics& m);

}  // namespace treecot::analysis
