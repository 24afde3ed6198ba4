#include <doctest.h>

#include <string>
#include <vector>

#include "treecot/cloner.hpp"
#include "treecot/linearizer.hpp"
#include "treecot/mcts.hpp"
#include "treecot/scripted_policy.hpp"
#include "treecot/toy.hpp"
#include "treecot/validate.hpp"
#include "treecot/verifier.hpp"

using namespace treecot;
using cloner::CloneConfig;
using cloner::kAffirm;
using cloner::kReflection;
using cloner::kUnsure;

namespace {

// Deterministic rewrites ("R1", "R2", ...) that record what the cloner
// passed in, so segment lists can be asserted exactly.
struct RecordingPolicy : Policy {
    std::vector<std::string> rewrite_priors;
    std::vector<std::string> phrase_targets;
    int rewrites = 0;

    std::vector<StepProposal> propose_steps(const Problem&, const std::vector<Step>&,
                                            int) override {
        return {};
    }
    std::vector<RolloutResult> rollout(const Problem&, const std::vector<Step>&, int) override {
        return {};
    }
    double self_evaluate(const Problem&, const std::string&, int) override { return 1.0; }
    std::string rewrite_step(const Problem&, const std::string& prior_cot,
                             const Step&) override {
        rewrite_priors.push_back(prior_cot);
        return "R" + std::to_string(++rewrites);
    }
    std::string write_backtrack_phrase(const Problem&, const std::string&,
                                       const std::optional<Step>& target) override {
        phrase_targets.push_back(target ? target->text : "RESTART");
        return target ? "BACK" : "START-OVER";
    }
};

// root -> 1 -> {2: correct 40, 4: incorrect 41}; root -> 3: incorrect 41.
SearchTree fixture() {
    SearchTree t;
    t.problem_id = "p-c";
    t.nodes.push_back(TreeNode{});
    auto add = [&](int parent, TerminalVerdict v, std::string answer) {
        TreeNode n;
        n.node_id = static_cast<int>(t.nodes.size());
        n.parent = parent;
        n.step = Step{"n" + std::to_string(n.node_id), t.depth_of(parent)};
        n.terminal_verdict = v;
        if (v != TerminalVerdict::nonterminal) {
            n.predicted_answer = std::move(answer);
            n.rollout_reward = v == TerminalVerdict::correct ? 1.0 : 0.0;
            n.q_value = *n.rollout_reward;
        }
        t.at(parent).expanded = true;
        t.at(parent).children.push_back(n.node_id);
        t.nodes.push_back(std::move(n));
        return t.nodes.back().node_id;
    };
    add(0, TerminalVerdict::nonterminal, "");  // 1
    add(1, TerminalVerdict::correct, "40");    // 2
    add(0, TerminalVerdict::incorrect, "41");  // 3
    add(1, TerminalVerdict::incorrect, "41");  // 4
    return t;
}

LinearSequence seq_of(std::string pid, std::vector<SequenceEntry> entries, int k) {
    LinearSequence s;
    s.problem_id = std::move(pid);
    s.entries = std::move(entries);
    s.k_backtracks = k;
    return s;
}

std::vector<SegmentKind> kinds_of(const CotDocument& doc) {
    std::vector<SegmentKind> out;
    for (const auto& s : doc.segments) out.push_back(s.kind);
    return out;
}

const Problem kProblem{"p-c", "statement text", "40", "t"};

}  // namespace

TEST_CASE("connective phrases are the exact scripted wordings") {
    CHECK(std::string(kReflection) ==
          "But wait, are we solving the problem correctly so far? Hmm...");
    CHECK(std::string(kUnsure) ==
          "I'm not sure if we're solving the problem correctly so far.");
    CHECK(std::string(kAffirm) == "Our solution seems to be correct so far.");
}

TEST_CASE("direct sequence becomes step segments plus one closing reflection") {
    SearchTree t = fixture();
    RecordingPolicy policy;
    auto s = seq_of("p-c", {{0, JunctionKind::advance}, {1, JunctionKind::advance},
                            {2, JunctionKind::advance}}, 0);
    CotDocument doc = cloner::clone_to_cot(t, s, kProblem, policy);

    CHECK(kinds_of(doc) == std::vector<SegmentKind>{
                               SegmentKind::step, SegmentKind::step, SegmentKind::reflection,
                               SegmentKind::continue_affirmation, SegmentKind::final_answer});
    CHECK(doc.segments[0].text == "R1");
    CHECK(doc.segments[1].text == "R2");
    CHECK(doc.segments[2].text == kReflection);
    CHECK(doc.segments[3].text == kAffirm);
    CHECK(doc.segments[4].text ==
          "The final answer is $\\boxed{40}$. I hope it is correct.");
    CHECK(doc.final_answer == "40");
    CHECK(doc.n_backtracks == 0);
    CHECK(doc.n_restarts == 0);
    CHECK(cloner::count_backtracks(doc) == std::pair<int, int>{0, 0});

    // The rewrite prompt accumulates every prior segment, space-joined.
    REQUIRE(policy.rewrite_priors.size() == 2);
    CHECK(policy.rewrite_priors[0] == "");
    CHECK(policy.rewrite_priors[1] == "R1");
}

TEST_CASE("confident intermediate steps reflect mid-stream at the threshold") {
    SearchTree t = fixture();
    auto s = seq_of("p-c", {{0, JunctionKind::advance}, {1, JunctionKind::advance},
                            {2, JunctionKind::advance}}, 0);
    SUBCASE("q at the threshold reflects") {
        t.at(1).q_value = 0.75;
        RecordingPolicy policy;
        CotDocument doc = cloner::clone_to_cot(t, s, kProblem, policy);
        CHECK(kinds_of(doc) == std::vector<SegmentKind>{
                                   SegmentKind::step, SegmentKind::reflection,
                                   SegmentKind::continue_affirmation, SegmentKind::step,
                                   SegmentKind::reflection, SegmentKind::continue_affirmation,
                                   SegmentKind::final_answer});
        REQUIRE(policy.rewrite_priors.size() == 2);
        CHECK(policy.rewrite_priors[1] ==
              std::string("R1 ") + kReflection + " " + kAffirm);
    }
    SUBCASE("q just below the threshold does not") {
        t.at(1).q_value = 0.7499;
        RecordingPolicy policy;
        CotDocument doc = cloner::clone_to_cot(t, s, kProblem, policy);
        CHECK(kinds_of(doc).size() == 5);
    }
    SUBCASE("the threshold itself is configurable") {
        t.at(1).q_value = 0.5;
        RecordingPolicy policy;
        CloneConfig cfg;
        cfg.q_reflect_threshold = 0.5;
        CotDocument doc = cloner::clone_to_cot(t, s, kProblem, policy, cfg);
        CHECK(kinds_of(doc).size() == 7);
    }
}

TEST_CASE("restart junctions inject doubt plus a restart phrase") {
    SearchTree t = fixture();
    RecordingPolicy policy;
    auto s = seq_of("p-c", {{0, JunctionKind::advance}, {3, JunctionKind::advance},
                            {0, JunctionKind::restart}, {1, JunctionKind::advance},
                            {2, JunctionKind::advance}}, 1);
    REQUIRE(validate_sequence(s, t).empty());
    CotDocument doc = cloner::clone_to_cot(t, s, kProblem, policy);

    CHECK(kinds_of(doc) == std::vector<SegmentKind>{
                               SegmentKind::step, SegmentKind::reflection,
                               SegmentKind::restart_phrase, SegmentKind::step,
                               SegmentKind::step, SegmentKind::reflection,
                               SegmentKind::continue_affirmation, SegmentKind::final_answer});
    CHECK(doc.segments[1].text == std::string(kReflection) + " " + kUnsure);
    CHECK(doc.segments[2].text == "START-OVER");
    CHECK(doc.n_restarts == 1);
    CHECK(doc.n_backtracks == 0);
    REQUIRE(policy.phrase_targets.size() == 1);
    CHECK(policy.phrase_targets[0] == "RESTART");  // root junction has no step
    CHECK(cloner::count_backtracks(doc) == std::pair<int, int>{0, 1});
}

TEST_CASE("backtrack junctions hand the policy the junction step") {
    SearchTree t = fixture();
    RecordingPolicy policy;
    auto s = seq_of("p-c", {{0, JunctionKind::advance}, {1, JunctionKind::advance},
                            {4, JunctionKind::advance}, {1, JunctionKind::backtrack},
                            {2, JunctionKind::advance}}, 1);
    REQUIRE(validate_sequence(s, t).empty());
    CotDocument doc = cloner::clone_to_cot(t, s, kProblem, policy);

    CHECK(kinds_of(doc) == std::vector<SegmentKind>{
                               SegmentKind::step, SegmentKind::step, SegmentKind::reflection,
                               SegmentKind::backtrack_phrase, SegmentKind::step,
                               SegmentKind::reflection, SegmentKind::continue_affirmation,
                               SegmentKind::final_answer});
    CHECK(doc.segments[3].text == "BACK");
    CHECK(doc.n_backtracks == 1);
    CHECK(doc.n_restarts == 0);
    REQUIRE(policy.phrase_targets.size() == 1);
    CHECK(policy.phrase_targets[0] == "n1");
    CHECK(cloner::count_backtracks(doc) == std::pair<int, int>{1, 0});
}

TEST_CASE("clone_to_cot rejects malformed requests") {
    SearchTree t = fixture();
    RecordingPolicy policy;
    CHECK_THROWS_AS(
        cloner::clone_to_cot(t, seq_of("other", {{0, JunctionKind::advance}}, 0), kProblem,
                             policy),
        InputError);
    CHECK_THROWS_AS(cloner::clone_to_cot(t, seq_of("p-c", {}, 0), kProblem, policy),
                    InputError);
    // Ends at an incorrect terminal.
    CHECK_THROWS_AS(
        cloner::clone_to_cot(
            t, seq_of("p-c", {{0, JunctionKind::advance}, {3, JunctionKind::advance}}, 0),
            kProblem, policy),
        InputError);
    // Ends at a nonterminal.
    CHECK_THROWS_AS(
        cloner::clone_to_cot(
            t, seq_of("p-c", {{0, JunctionKind::advance}, {1, JunctionKind::advance}}, 0),
            kProblem, policy),
        InputError);
}

TEST_CASE("to_cot_record flattens with spaces and a blank line before the answer") {
    SearchTree t = fixture();
    RecordingPolicy policy;
    auto s = seq_of("p-c", {{0, JunctionKind::advance}, {1, JunctionKind::advance},
                            {2, JunctionKind::advance}}, 0);
    CotDocument doc = cloner::clone_to_cot(t, s, kProblem, policy);
    CotRecord r = cloner::to_cot_record(doc, kProblem);

    CHECK(r.problem_id == "p-c");
    CHECK(r.prompt == "statement text");
    CHECK(r.response ==
          std::string("R1 R2 ") + kReflection + " " + kAffirm +
              "\n\nThe final answer is $\\boxed{40}$. I hope it is correct.");
    CHECK(r.k_backtracks == 0);
    CHECK(r.n_restarts == 0);
    // 2 rewrites + 11 reflection words + 8 affirmation words + 10 answer words
    CHECK(r.token_estimate == 31);

    Problem other = kProblem;
    other.id = "different";
    CHECK_THROWS_AS(cloner::to_cot_record(doc, other), InputError);
}

TEST_CASE("record backtrack counts merge junction kinds") {
    SearchTree t = fixture();
    RecordingPolicy policy;
    auto s = seq_of("p-c", {{0, JunctionKind::advance}, {1, JunctionKind::advance},
                            {4, JunctionKind::advance}, {1, JunctionKind::backtrack},
                            {2, JunctionKind::advance}}, 1);
    CotRecord r = cloner::to_cot_record(cloner::clone_to_cot(t, s, kProblem, policy), kProblem);
    CHECK(r.k_backtracks == 1);
    CHECK(r.n_restarts == 0);
    CHECK(r.response.find("\n\n") != std::string::npos);
    CHECK(r.response.find("\n\n") == r.response.rfind("\n\n"));
}

TEST_CASE("searched toy trees clone into records with exactly one boxed answer") {
    Problem p = toy::make_problem("t-int", {2, 3}, 5);
    PolicyConfig pc;
    pc.seed = 2;
    pc.blunder_rate = 0.0;
    ScriptedPolicy policy(pc);
    mcts::MctsConfig cfg;
    cfg.n_iterations = 12;
    cfg.k_actions = 3;
    cfg.m_rollouts = 4;
    cfg.c_puct = 4.0;  // push selection into the losing branches too
    SearchTree tree = mcts::run_search(p, policy, cfg);
    REQUIRE(validate_tree(tree).empty());

    auto harvest = linearizer::harvest_terminals(tree, p, policy, 8);
    REQUIRE(!harvest.high_quality.empty());
    REQUIRE(!harvest.incorrect.empty());

    for (int k = 0; k <= 1; ++k) {
        LinearSequence s = linearizer::linearize(tree, harvest, {k, 11});
        REQUIRE(validate_sequence(s, tree).empty());
        CotDocument doc = cloner::clone_to_cot(tree, s, p, policy);
        CotRecord r = cloner::to_cot_record(doc, p);

        CHECK(r.k_backtracks == k);
        std::size_t boxed = 0;
        for (std::size_t at = r.response.find("\\boxed");
             at != std::string::npos; at = r.response.find("\\boxed", at + 1))
            ++boxed;
        CHECK(boxed == 1);  // rewritten steps never leak their own boxed text
        auto extracted = verifier::extract_answer(r.response);
        REQUIRE(extracted.has_value());
        CHECK(verifier::score(extracted, p.reference_answer).is_correct);
        CHECK(r.response.find(kReflection) != std::string::npos);
        bool ends_with_hope =
            r.response.size() > 20 &&
            r.response.rfind("I hope it is correct.") == r.response.size() - 21;
        CHECK(ends_with_hope);
    }
}
