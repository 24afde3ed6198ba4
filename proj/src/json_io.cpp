#include "treecot/json_io.hpp"

#include <algorithm>

namespace treecot {
namespace {

// Pulls a required field, rethrowing with the key name on any shape error.
const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field: ") + key);
    return *it;
}

template <typename T>
T need_as(const json& j, const char* key) {
    try {
        return need(j, key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace

std::string verdict_name(TerminalVerdict v) {
    switch (v) {
        case TerminalVerdict::correct: return "correct";
        case TerminalVerdict::incorrect: return "incorrect";
        default: return "nonterminal";
    }
}

TerminalVerdict verdict_from_name(const std::string& s) {
    if (s == "correct") return TerminalVerdict::correct;
    if (s == "incorrect") return TerminalVerdict::incorrect;
    if (s == "nonterminal") return TerminalVerdict::nonterminal;
    throw InputError("unknown terminal_verdict: " + s);
}

std::string junction_name(JunctionKind k) {
    switch (k) {
        case JunctionKind::backtrack: return "backtrack";
        case JunctionKind::restart: return "restart";
        default: return "advance";
    }
}

JunctionKind junction_from_name(const std::string& s) {
    if (s == "advance") return JunctionKind::advance;
    if (s == "backtrack") return JunctionKind::backtrack;
    if (s == "restart") return JunctionKind::restart;
    throw InputError("unknown junction kind: " + s);
}

std::string segment_name(SegmentKind k) {
    switch (k) {
        case SegmentKind::step: return "step";
        case SegmentKind::reflection: return "reflection";
        case SegmentKind::continue_affirmation: return "continue_affirmation";
        case SegmentKind::backtrack_phrase: return "backtrack_phrase";
        case SegmentKind::restart_phrase: return "restart_phrase";
        default: return "final_answer";
    }
}

SegmentKind segment_from_name(const std::string& s) {
    if (s == "step") return SegmentKind::step;
    if (s == "reflection") return SegmentKind::reflection;
    if (s == "continue_affirmation") return SegmentKind::continue_affirmation;
    if (s == "backtrack_phrase") return SegmentKind::backtrack_phrase;
    if (s == "restart_phrase") return SegmentKind::restart_phrase;
    if (s == "final_answer") return SegmentKind::final_answer;
    throw InputError("unknown segment kind: " + s);
}

json to_json(const Problem& p) {
    return {{"id", p.id},
            {"statement", p.statement},
            {"reference_answer", p.reference_answer},
            {"source_tag", p.source_tag}};
}

Problem problem_from_json(const json& j) {
    Problem p;
    p.id = need_as<std::string>(j, "id");
    p.statement = need_as<std::string>(j, "statement");
    p.reference_answer = need_as<std::string>(j, "reference_answer");
    p.source_tag = j.value("source_tag", std::string{});
    return p;
}

json to_json(const SearchTree& t) {
    json nodes = json::array();
    for (const TreeNode& n : t.nodes) {
        json jn{{"node_id", n.node_id},
                {"parent", n.parent ? json(*n.parent) : json(nullptr)},
                {"q_value", n.q_value},
                {"visit_count", n.visit_count},
                {"prior", n.prior},
                {"rollout_reward", n.rollout_reward ? json(*n.rollout_reward) : json(nullptr)},
                {"terminal_verdict", verdict_name(n.terminal_verdict)},
                {"predicted_answer",
                 n.predicted_answer ? json(*n.predicted_answer) : json(nullptr)},
                {"expanded", n.expanded}};
        jn["step"] = n.step ? json{{"text", n.step->text}, {"index", n.step->index}}
                            : json(nullptr);
        nodes.push_back(std::move(jn));
    }
    return {{"problem_id", t.problem_id}, {"root_id", t.root_id}, {"nodes", std::move(nodes)}};
}

SearchTree tree_from_json(const json& j) {
    SearchTree t;
    t.problem_id = need_as<std::string>(j, "problem_id");
    t.root_id = need_as<int>(j, "root_id");
    const json& nodes = need(j, "nodes");
    if (!nodes.is_array() || nodes.empty()) throw InputError("tree needs a non-empty node array");
    t.nodes.reserve(nodes.size());
    for (const json& jn : nodes) {
        TreeNode n;
        n.node_id = need_as<int>(jn, "node_id");
        if (!need(jn, "parent").is_null()) n.parent = need_as<int>(jn, "parent");
        if (!need(jn, "step").is_null()) {
            const json& js = jn["step"];
            n.step = Step{need_as<std::string>(js, "text"), need_as<int>(js, "index")};
        }
        n.q_value = need_as<double>(jn, "q_value");
        n.visit_count = need_as<std::int64_t>(jn, "visit_count");
        n.prior = need_as<double>(jn, "prior");
        if (!need(jn, "rollout_reward").is_null())
            n.rollout_reward = need_as<double>(jn, "rollout_reward");
        n.terminal_verdict = verdict_from_name(need_as<std::string>(jn, "terminal_verdict"));
        if (!need(jn, "predicted_answer").is_null())
            n.predicted_answer = need_as<std::string>(jn, "predicted_answer");
        n.expanded = need_as<bool>(jn, "expanded");
        t.nodes.push_back(std::move(n));
    }
    for (const TreeNode& n : t.nodes) {
        if (!n.parent) continue;
        if (*n.parent < 0 || static_cast<std::size_t>(*n.parent) >= t.nodes.size())
            throw InputError("node " + std::to_string(n.node_id) + " has out-of-range parent");
        t.nodes[static_cast<std::size_t>(*n.parent)].children.push_back(n.node_id);
    }
    for (TreeNode& n : t.nodes) std::sort(n.children.begin(), n.children.end());
    return t;
}

json to_json(const LinearSequence& s) {
    json entries = json::array();
    for (const SequenceEntry& e : s.entries)
        entries.push_back({{"node", e.node}, {"kind", junction_name(e.kind)}});
    return {{"problem_id", s.problem_id},
            {"k_backtracks", s.k_backtracks},
            {"entries", std::move(entries)}};
}

LinearSequence sequence_from_json(const json& j) {
    LinearSequence s;
    s.problem_id = need_as<std::string>(j, "problem_id");
    s.k_backtracks = need_as<int>(j, "k_backtracks");
    for (const json& je : need(j, "entries"))
        s.entries.push_back(
            {need_as<int>(je, "node"), junction_from_name(need_as<std::string>(je, "kind"))});
    return s;
}

json to_json(const CotDocument& d) {
    json segs = json::array();
    for (const CotSegment& s : d.segments)
        segs.push_back({{"kind", segment_name(s.kind)}, {"text", s.text}});
    return {{"problem_id", d.problem_id},
            {"segments", std::move(segs)},
            {"final_answer", d.final_answer},
            {"n_backtracks", d.n_backtracks},
            {"n_restarts", d.n_restarts}};
}

CotDocument document_from_json(const json& j) {
    CotDocument d;
    d.problem_id = need_as<std::string>(j, "problem_id");
    for (const json& js : need(j, "segments"))
        d.segments.push_back(
            {segment_from_name(need_as<std::string>(js, "kind")),
             need_as<std::string>(js, "text")});
    d.final_answer = need_as<std::string>(j, "final_answer");
    d.n_backtracks = need_as<int>(j, "n_backtracks");
    d.n_restarts = need_as<int>(j, "n_restarts");
    return d;
}

json to_json(const CotRecord& r) {
    return {{"problem_id", r.problem_id},
            {"prompt", r.prompt},
            {"response", r.response},
            {"k_backtracks", r.k_backtracks},
            {"n_restarts", r.n_restarts},
            {"token_estimate", r.token_estimate}};
}

CotRecord record_from_json(const json& j) {
    CotRecord r;
    r.problem_id = need_as<std::string>(j, "problem_id");
    r.prompt = need_as<std::string>(j, "prompt");
    r.response = need_as<std::string>(j, "response");
    r.k_backtracks = need_as<int>(j, "k_backtracks");
    r.n_restarts = need_as<int>(j, "n_restarts");
    r.token_estimate = need_as<std::int64_t>(j, "token_estimate");
    return r;
}

}  // namespace treecot
