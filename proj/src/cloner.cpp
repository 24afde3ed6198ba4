#include "treecot/cloner.hpp"

#include <cctype>

#include "treecot/validate.hpp"

namespace treecot::cloner {
namespace {

std::int64_t whitespace_tokens(const std::string& text) {
    std::int64_t count = 0;
    bool in_token = false;
    for (char c : text) {
        bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!space && !in_token) ++count;
        in_token = !space;
    }
    return count;
}

}  // namespace

CotDocument clone_to_cot(const SearchTree& tree, const LinearSequence& sequence,
                         const Problem& problem, Policy& policy, const CloneConfig& cfg) {
    if (sequence.problem_id != tree.problem_id)
        throw InputError("clone_to_cot: sequence/tree problem ids differ");
    if (sequence.entries.empty()) throw InputError("clone_to_cot: empty sequence");

    CotDocument doc;
    doc.problem_id = tree.problem_id;
    std::string prior_cot;

    auto push = [&](SegmentKind kind, std::string text) {
        if (!prior_cot.empty()) prior_cot += ' ';
        prior_cot += text;
        doc.segments.push_back({kind, std::move(text)});
    };

    for (std::size_t i = 0; i < sequence.entries.size(); ++i) {
        const SequenceEntry& e = sequence.entries[i];
        const TreeNode& node = tree.at(e.node);
        bool last = i + 1 == sequence.entries.size();

        if (e.kind == JunctionKind::advance) {
            if (node.step) push(SegmentKind::step, policy.rewrite_step(problem, prior_cot, *node.step));
            if (last || (node.step && node.q_value >= cfg.q_reflect_threshold)) {
                push(SegmentKind::reflection, kReflection);
                push(SegmentKind::continue_affirmation, kAffirm);
            }
        } else {
            push(SegmentKind::reflection, std::string(kReflection) + " " + kUnsure);
            std::optional<Step> target = node.step;  // absent at the root => restart
            std::string phrase = policy.write_backtrack_phrase(problem, prior_cot, target);
            if (e.kind == JunctionKind::restart) {
                push(SegmentKind::restart_phrase, std::move(phrase));
                ++doc.n_restarts;
            } else {
                push(SegmentKind::backtrack_phrase, std::move(phrase));
                ++doc.n_backtracks;
            }
        }
    }

    const TreeNode& final_node = tree.at(sequence.entries.back().node);
    if (final_node.terminal_verdict != TerminalVerdict::correct || !final_node.predicted_answer)
        throw InputError("clone_to_cot: sequence does not end at a correct terminal");
    doc.final_answer = *final_node.predicted_answer;
    doc.segments.push_back({SegmentKind::final_answer, "The final answer is $\\boxed{" +
                                                           doc.final_answer +
                                                           "}$. I hope it is correct."});
    return doc;
}

std::pair<int, int> count_backtracks(const CotDocument& doc) {
    int backtracks = 0, restarts = 0;
    for (const CotSegment& s : doc.segments) {
        if (s.kind == SegmentKind::backtrack_phrase) ++backtracks;
        if (s.kind == SegmentKind::restart_phrase) ++restarts;
    }
    return {backtracks, restarts};
}

CotRecord to_cot_record(const CotDocument& doc, const Problem& problem) {
    if (doc.problem_id != problem.id)
        throw InputError("to_cot_record: document/problem ids differ");
    CotRecord r;
    r.problem_id = doc.problem_id;
    r.prompt = problem.statement;
    std::string body;
    for (const CotSegment& s : doc.segments) {
        if (s.kind == SegmentKind::final_answer) {
            body += body.empty() ? "" : "\n\n";
            body += s.text;
        } else {
            if (!body.empty()) body += ' ';
            body += s.text;
        }
    }
    r.response = std::move(body);
    r.k_backtracks = doc.n_backtracks + doc.n_restarts;
    r.n_restarts = doc.n_restarts;
    r.token_estimate = whitespace_tokens(r.response);
    return r;
}

}  // namespace treecot::cloner
