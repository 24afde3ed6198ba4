#pragma once

#include <utility>

#include "treecot/policy.hpp"
#include "treecot/types.hpp"

namespace treecot::cloner {

// Hard-coded connective phrases injected verbatim into every document.
inline constexpr const char* kReflection =
    "But wait, are we solving the problem correctly so far? Hmm...";
inline constexpr const char* kUnsure =
    "I'm not sure if we're solving the problem correctly so far.";
inline constexpr const char* kAffirm = "Our solution seems to be correct so far.";

struct CloneConfig {
    double q_reflect_threshold = 0.75;  // advance nodes at or above this reflect mid-stream
};

// Replays a linearized sequence into chain-of-thought segments: advances are
// policy-rewritten steps, junctions become reflection + uncertainty + a
// backtrack/restart phrase, high-Q advances and the final node get
// reflection + affirmation, and a single final-answer segment closes the
// document.
CotDocument clone_to_cot(const SearchTree& tree, const LinearSequence& sequence,
                         const Problem& problem, Policy& policy, const CloneConfig& cfg = {});

// (backtracks, restarts) among a document's phrase segments.
std::pair<int, int> count_backtracks(const CotDocument& doc);

// Flattens a document for cot.jsonl: segments joined with single spaces,
// a blank line before the final answer, token_estimate = whitespace-token
// count of the response.
CotRecord to_cot_record(const CotDocument& doc, const Problem& problem);

}  // namespace treecot::cloner
