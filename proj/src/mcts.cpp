#include "treecot/mcts.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "treecot/json_io.hpp"
#include "treecot/verifier.hpp"

namespace treecot::mcts {
namespace {

void check_config(const MctsConfig& cfg) {
    if (cfg.n_iterations < 0) throw InputError("n_iterations must be >= 0");
    if (cfg.k_actions < 1) throw InputError("k_actions must be >= 1");
    if (cfg.m_rollouts < 1) throw InputError("m_rollouts must be >= 1");
    if (cfg.max_depth < 1) throw InputError("max_depth must be >= 1");
    if (!(cfg.c_puct >= 0.0)) throw InputError("c_puct must be >= 0");
}

std::vector<Step> steps_to(const SearchTree& tree, int id) {
    std::vector<Step> steps;
    for (int n : tree.path_from_root(id))
        if (tree.at(n).step) steps.push_back(*tree.at(n).step);
    return steps;
}

}  // namespace

nlohmann::json to_json(const TraceIteration& it) {
    nlohmann::json children = nlohmann::json::array();
    for (const TraceChild& c : it.children)
        children.push_back(
            {{"node_id", c.node_id}, {"reward", c.reward}, {"verdict", c.verdict}});
    return {{"iteration", it.iteration},
            {"path", it.path},
            {"expanded", it.expanded},
            {"children", std::move(children)},
            {"backprop_leaf", it.backprop_leaf}};
}

double puct_score(const SearchTree& tree, int parent, int child, double c_puct) {
    if (tree.is_dead_end(child)) return -std::numeric_limits<double>::infinity();
    const TreeNode& p = tree.at(parent);
    const TreeNode& c = tree.at(child);
    double explore = c_puct * c.prior * std::sqrt(static_cast<double>(p.visit_count)) /
                     (1.0 + static_cast<double>(c.visit_count));
    return c.q_value + explore;
}

int select_child(const SearchTree& tree, int node_id, double c_puct) {
    const TreeNode& n = tree.at(node_id);
    if (n.children.empty()) throw InputError("select_child on a childless node");
    int best = n.children.front();
    double best_score = puct_score(tree, node_id, best, c_puct);
    for (std::size_t i = 1; i < n.children.size(); ++i) {
        int c = n.children[i];
        double s = puct_score(tree, node_id, c, c_puct);
        if (s > best_score) {  // strict: ties keep the lowest node_id
            best = c;
            best_score = s;
        }
    }
    return best;
}

std::vector<int> expand(SearchTree& tree, const Problem& problem, int node_id, Policy& policy,
                        const MctsConfig& cfg) {
    check_config(cfg);
    if (tree.at(node_id).expanded) throw InputError("expand: node already expanded");
    if (tree.at(node_id).terminal_verdict != TerminalVerdict::nonterminal)
        throw InputError("expand: node is terminal");
    int depth = tree.depth_of(node_id);
    if (depth >= cfg.max_depth) throw InputError("expand: node at max_depth");

    std::vector<Step> prefix = steps_to(tree, node_id);
    std::vector<StepProposal> proposals = policy.propose_steps(problem, prefix, cfg.k_actions);

    std::vector<int> created;
    std::set<std::string> seen;
    double weight_sum = 0.0;
    for (StepProposal& prop : proposals) {
        if (static_cast<int>(created.size()) >= cfg.k_actions) break;
        if (!seen.insert(prop.step.text).second) continue;

        TreeNode child;
        child.node_id = static_cast<int>(tree.nodes.size());
        child.parent = node_id;
        child.step = Step{prop.step.text, depth};
        child.prior = prop.prior_weight > 0.0 ? prop.prior_weight : 0.0;
        weight_sum += child.prior;

        if (auto ans = verifier::extract_answer(prop.step.text)) {
            Verdict v = verifier::score(ans, problem.reference_answer);
            child.terminal_verdict =
                v.is_correct ? TerminalVerdict::correct : TerminalVerdict::incorrect;
            child.predicted_answer = *ans;
            child.rollout_reward = v.is_correct ? 1.0 : 0.0;
        } else {
            std::vector<Step> cont = prefix;
            cont.push_back(*child.step);
            auto rollouts = policy.rollout(problem, cont, cfg.m_rollouts);
            int n_correct = 0;
            for (const RolloutResult& r : rollouts)
                if (verifier::score(r.predicted_answer, problem.reference_answer).is_correct)
                    ++n_correct;
            child.rollout_reward =
                rollouts.empty() ? 0.0
                                 : static_cast<double>(n_correct) /
                                       static_cast<double>(rollouts.size());
        }
        child.q_value = *child.rollout_reward;

        created.push_back(child.node_id);
        tree.nodes.push_back(std::move(child));
        tree.at(node_id).children.push_back(created.back());
    }
    // Normalize sibling priors; degenerate weights fall back to uniform.
    if (!created.empty()) {
        for (int id : created) {
            TreeNode& c = tree.at(id);
            c.prior = weight_sum > 0.0 ? c.prior / weight_sum
                                       : 1.0 / static_cast<double>(created.size());
        }
    }
    tree.at(node_id).expanded = true;
    return created;
}

void backpropagate(SearchTree& tree, int leaf_id) {
    for (std::optional<int> cur = leaf_id; cur;) {
        TreeNode& n = tree.at(*cur);
        n.visit_count += 1;
        if (n.parent) {
            double num = n.rollout_reward.value_or(0.0);
            double den = 1.0;
            for (int c : n.children) {
                const TreeNode& ch = tree.at(c);
                num += ch.q_value * static_cast<double>(ch.visit_count);
                den += static_cast<double>(ch.visit_count);
            }
            n.q_value = num / den;
        }
        cur = n.parent;
    }
}

SearchTree run_search(const Problem& problem, Policy& policy, const MctsConfig& cfg,
                      SearchTrace* trace) {
    check_config(cfg);
    SearchTree tree;
    tree.problem_id = problem.id;
    TreeNode root;
    root.node_id = 0;
    root.prior = 1.0;
    tree.nodes.push_back(std::move(root));

    for (int it = 0; it < cfg.n_iterations; ++it) {
        TraceIteration rec;
        rec.iteration = it;
        int cur = tree.root_id;
        rec.path.push_back(cur);
        while (true) {
            const TreeNode& n = tree.at(cur);
            if (n.terminal_verdict != TerminalVerdict::nonterminal) break;
            if (!n.expanded || n.children.empty()) break;
            cur = select_child(tree, cur, cfg.c_puct);
            rec.path.push_back(cur);
        }

        const TreeNode& frontier = tree.at(cur);
        bool expandable = frontier.terminal_verdict == TerminalVerdict::nonterminal &&
                          !frontier.expanded && tree.depth_of(cur) < cfg.max_depth;
        if (expandable) {
            rec.expanded = cur;
            for (int id : expand(tree, problem, cur, policy, cfg)) {
                const TreeNode& c = tree.at(id);
                rec.children.push_back(
                    {id, c.rollout_reward.value_or(0.0), verdict_name(c.terminal_verdict)});
            }
        }
        backpropagate(tree, cur);
        rec.backprop_leaf = cur;
        if (trace) trace->iterations.push_back(std::move(rec));
    }
    return tree;
}

}  // namespace treecot::mcts
