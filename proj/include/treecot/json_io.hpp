#pragma once

#include <json.hpp>

#include "treecot/types.hpp"

namespace treecot {

using nlohmann::json;

// JSONL line shapes. Trees serialize parent links only; children lists are
// rebuilt on load (creation order == ascending node_id).

json to_json(const Problem& p);
Problem problem_from_json(const json& j);

json to_json(const SearchTree& t);
SearchTree tree_from_json(const json& j);

json to_json(const LinearSequence& s);
LinearSequence sequence_from_json(const json& j);

json to_json(const CotDocument& d);
CotDocument document_from_json(const json& j);

json to_json(const CotRecord& r);
CotRecord record_from_json(const json& j);

std::string verdict_name(TerminalVerdict v);
TerminalVerdict verdict_from_name(const std::string& s);
std::string junction_name(JunctionKind k);
JunctionKind junction_from_name(const std::string& s);
std::string segment_name(SegmentKind k);
SegmentKind segment_from_name(const std::string& s);

}  // namespace treecot
