#include "treecot/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include "treecot/analysis.hpp"
#include "treecot/cloner.hpp"
#include "treecot/curator.hpp"
#include "treecot/grpo.hpp"
#include "treecot/json_io.hpp"
#include "treecot/jsonl.hpp"
#include "treecot/linearizer.hpp"
#include "treecot/mcts.hpp"
#include "treecot/remote_policy.hpp"
#include "treecot/scripted_policy.hpp"
#include "treecot/toy.hpp"
#include "treecot/validate.hpp"
#include "treecot/worker_pool.hpp"

namespace treecot::cli {
namespace {

namespace fs = std::filesystem;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every tunable, layered defaults < env < config file < flags. CLI11 only
// assigns bound variables when a flag is actually present, which gives the
// flag layer for free.
struct Settings {
    std::uint64_t seed = 0;
    std::string policy = "scripted";
    int jobs = 1;
    double blunder_rate = 0.3;

    mcts::MctsConfig mcts;
    int k_min = 0;
    int k_max = 2;
    std::size_t max_per_tree = 4;
    int self_eval_votes = 8;
    double q_reflect = 0.75;
    int per_direct = 1;
    int per_search = 3;
    int n_samples = 64;
    curator::FilterBand band;
    grpo::BatchConfig grpo;
    toy::CorpusConfig gen;

    RemoteConfig remote;
    bool audit = false;
};

void apply_env(Settings& s) {
    auto get = [](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (v && *v) return std::string(v);
        return std::nullopt;
    };
    try {
        if (auto v = get("TREECOT_SEED")) s.seed = std::stoull(*v);
        if (auto v = get("TREECOT_POLICY")) s.policy = *v;
        if (auto v = get("TREECOT_JOBS")) s.jobs = std::stoi(*v);
        if (auto v = get("TREECOT_BLUNDER_RATE")) s.blunder_rate = std::stod(*v);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad TREECOT_* environment value: ") + e.what());
    }
}

void apply_config(Settings& s, const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }
    try {
        s.seed = j.value("seed", s.seed);
        s.policy = j.value("policy", s.policy);
        s.jobs = j.value("jobs", s.jobs);
        s.blunder_rate = j.value("blunder_rate", s.blunder_rate);
        if (j.contains("mcts")) {
            const json& m = j["mcts"];
            s.mcts.n_iterations = m.value("iterations", s.mcts.n_iterations);
            s.mcts.k_actions = m.value("k_actions", s.mcts.k_actions);
            s.mcts.m_rollouts = m.value("m_rollouts", s.mcts.m_rollouts);
            s.mcts.c_puct = m.value("c_puct", s.mcts.c_puct);
            s.mcts.max_depth = m.value("max_depth", s.mcts.max_depth);
        }
        if (j.contains("linearize")) {
            const json& l = j["linearize"];
            s.k_min = l.value("k_min", s.k_min);
            s.k_max = l.value("k_max", s.k_max);
            s.max_per_tree = l.value("max_per_tree", s.max_per_tree);
            s.self_eval_votes = l.value("self_eval_votes", s.self_eval_votes);
        }
        if (j.contains("clone")) s.q_reflect = j["clone"].value("q_reflect_threshold", s.q_reflect);
        if (j.contains("curate")) {
            s.per_direct = j["curate"].value("per_direct", s.per_direct);
            s.per_search = j["curate"].value("per_search", s.per_search);
        }
        if (j.contains("pass_rates")) {
            const json& p = j["pass_rates"];
            s.n_samples = p.value("n_samples", s.n_samples);
            s.band.low = p.value("low", s.band.low);
            s.band.high = p.value("high", s.band.high);
        }
        if (j.contains("grpo")) {
            s.grpo.rollouts_per_prompt =
                j["grpo"].value("rollouts_per_prompt", s.grpo.rollouts_per_prompt);
            s.grpo.batch_size = j["grpo"].value("batch_size", s.grpo.batch_size);
        }
        if (j.contains("remote")) {
            const json& r = j["remote"];
            s.remote.endpoint_url = r.value("endpoint_url", s.remote.endpoint_url);
            s.remote.api_key_env = r.value("api_key_env", s.remote.api_key_env);
            s.remote.model = r.value("model", s.remote.model);
            s.remote.temperature = r.value("temperature", s.remote.temperature);
            s.remote.max_tokens = r.value("max_tokens", s.remote.max_tokens);
            s.remote.max_retries = r.value("max_retries", s.remote.max_retries);
            s.remote.timeout_seconds = r.value("timeout_seconds", s.remote.timeout_seconds);
            s.remote.prompt_dir = r.value("prompt_dir", s.remote.prompt_dir);
        }
    } catch (const json::exception& e) {
        throw ConfigError("config field error in " + path.string() + ": " + e.what());
    }
}

std::unique_ptr<Policy> make_policy(const Settings& s) {
    PolicyConfig pc;
    pc.seed = s.seed;
    pc.blunder_rate = s.blunder_rate;
    if (s.policy == "scripted") return std::make_unique<ScriptedPolicy>(pc);
    if (s.policy == "remote") {
        RemoteConfig rc = s.remote;
        rc.audit = s.audit;
        return std::make_unique<RemotePolicy>(rc, pc);
    }
    throw ConfigError("unknown policy '" + s.policy + "' (expected scripted or remote)");
}

std::vector<Problem> load_problems(const fs::path& path) {
    std::vector<Problem> out;
    for (const json& j : read_jsonl(path)) out.push_back(problem_from_json(j));
    return out;
}

std::map<std::string, Problem> problem_index(const std::vector<Problem>& problems) {
    std::map<std::string, Problem> idx;
    for (const Problem& p : problems) {
        if (!idx.emplace(p.id, p).second)
            throw InputError("duplicate problem id " + p.id);
    }
    return idx;
}

struct StageError {
    std::string problem_id;
    std::string stage;
    std::string message;
};

json to_json(const StageError& e) {
    return {{"problem_id", e.problem_id}, {"stage", e.stage}, {"message", e.message}};
}

void write_errors(const fs::path& out_file, const std::vector<StageError>& errors) {
    if (errors.empty()) return;
    std::vector<json> rows;
    rows.reserve(errors.size());
    for (const StageError& e : errors) rows.push_back(to_json(e));
    fs::path dir = out_file.has_parent_path() ? out_file.parent_path() : fs::path(".");
    write_jsonl_atomic(dir / "errors.jsonl", rows);
    std::cerr << errors.size() << " problem(s) failed; see "
              << (dir / "errors.jsonl").string() << "\n";
}

// Shared "map over items, collect successes in input order" harness.
template <typename In, typename Out, typename Fn>
std::vector<Out> run_stage(const std::vector<In>& items, int jobs, const std::string& stage,
                           std::vector<StageError>& errors, const Fn& fn,
                           const std::function<std::string(const In&)>& id_of) {
    std::vector<std::optional<Out>> slots(items.size());
    std::vector<std::optional<StageError>> errs(items.size());
    parallel_for(items.size(), jobs, [&](std::size_t i) {
        try {
            slots[i] = fn(items[i]);
        } catch (const std::exception& e) {
            errs[i] = StageError{id_of(items[i]), stage, e.what()};
        }
    });
    std::vector<Out> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (slots[i]) out.push_back(std::move(*slots[i]));
        if (errs[i]) errors.push_back(std::move(*errs[i]));
    }
    return out;
}

int finish_stage(const std::string& stage, std::size_t inputs, std::size_t outputs,
                 const std::string& why_empty) {
    if (inputs > 0 && outputs == 0) {
        std::cerr << stage << ": " << why_empty << "\n";
        return 1;
    }
    return 0;
}

// ---- stage bodies (shared between single-stage commands and pipeline) ----

struct TreeBundle {
    SearchTree tree;
    std::vector<mcts::TraceIteration> trace;
};

int do_search(const Settings& s, const std::vector<Problem>& problems, const fs::path& out,
              const fs::path& trace_path, std::vector<StageError>& errors) {
    auto policy = make_policy(s);
    auto bundles = run_stage<Problem, TreeBundle>(
        problems, s.jobs, "search", errors,
        [&](const Problem& p) {
            TreeBundle b;
            mcts::SearchTrace trace;
            b.tree = mcts::run_search(p, *policy, s.mcts,
                                      trace_path.empty() ? nullptr : &trace);
            b.trace = std::move(trace.iterations);
            auto violations = validate_tree(b.tree);
            if (!violations.empty())
                throw InputError("tree failed validation: " + violations.front());
            return b;
        },
        [](const Problem& p) { return p.id; });

    std::vector<json> rows;
    std::vector<json> trace_rows;
    for (const TreeBundle& b : bundles) {
        rows.push_back(to_json(b.tree));
        for (const mcts::TraceIteration& it : b.trace) {
            json row = mcts::to_json(it);
            row["problem_id"] = b.tree.problem_id;
            trace_rows.push_back(std::move(row));
        }
    }
    write_jsonl_atomic(out, rows);
    if (!trace_path.empty()) write_jsonl_atomic(trace_path, trace_rows);
    write_errors(out, errors);
    return finish_stage("search", problems.size(), rows.size(), "no trees produced");
}

int do_linearize(const Settings& s, const std::vector<SearchTree>& trees,
                 const std::map<std::string, Problem>& problems, const fs::path& out,
                 const fs::path& stats_path, std::vector<StageError>& errors) {
    auto policy = make_policy(s);
    struct Result {
        std::vector<LinearSequence> sequences;
        bool valid = false;
    };
    auto results = run_stage<SearchTree, Result>(
        trees, s.jobs, "linearize", errors,
        [&](const SearchTree& tree) {
            auto it = problems.find(tree.problem_id);
            if (it == problems.end())
                throw InputError("no problem with id " + tree.problem_id);
            auto harvest =
                linearizer::harvest_terminals(tree, it->second, *policy, s.self_eval_votes);
            Result r;
            r.valid = !harvest.high_quality.empty();
            if (r.valid)
                r.sequences = linearizer::enumerate_sequences(tree, harvest, s.k_min, s.k_max,
                                                              s.max_per_tree, s.seed);
            for (const LinearSequence& seq : r.sequences) {
                auto violations = validate_sequence(seq, tree);
                if (!violations.empty())
                    throw InputError("sequence failed validation: " + violations.front());
            }
            return r;
        },
        [](const SearchTree& t) { return t.problem_id; });

    std::size_t valid_trees = 0;
    std::vector<json> rows;
    std::map<int, int> by_k;
    for (const Result& r : results) {
        valid_trees += r.valid ? 1 : 0;
        for (const LinearSequence& seq : r.sequences) {
            by_k[seq.k_backtracks] += 1;
            rows.push_back(to_json(seq));
        }
    }
    write_jsonl_atomic(out, rows);
    if (!stats_path.empty()) {
        json by_k_json = json::object();
        for (const auto& [k, n] : by_k) by_k_json[std::to_string(k)] = n;
        write_text_atomic(stats_path, json{{"trees", trees.size()},
                                           {"valid_trees", valid_trees},
                                           {"sequences", rows.size()},
                                           {"by_k", by_k_json}}
                                          .dump(2) +
                                          "\n");
    }
    write_errors(out, errors);
    return finish_stage("linearize", trees.size(), rows.size(),
                        "no sequences produced (no high-quality correct terminal in any tree)");
}

int do_clone(const Settings& s, const std::vector<LinearSequence>& sequences,
             const std::map<std::string, SearchTree>& trees,
             const std::map<std::string, Problem>& problems, const fs::path& out,
             std::vector<StageError>& errors) {
    auto policy = make_policy(s);
    cloner::CloneConfig cc{s.q_reflect};
    auto records = run_stage<LinearSequence, CotRecord>(
        sequences, s.jobs, "clone", errors,
        [&](const LinearSequence& seq) {
            auto tree_it = trees.find(seq.problem_id);
            if (tree_it == trees.end()) throw InputError("no tree for " + seq.problem_id);
            auto prob_it = problems.find(seq.problem_id);
            if (prob_it == problems.end()) throw InputError("no problem " + seq.problem_id);
            CotDocument doc =
                cloner::clone_to_cot(tree_it->second, seq, prob_it->second, *policy, cc);
            return cloner::to_cot_record(doc, prob_it->second);
        },
        [](const LinearSequence& q) { return q.problem_id; });

    std::vector<json> rows;
    for (const CotRecord& r : records) rows.push_back(to_json(r));
    write_jsonl_atomic(out, rows);
    write_errors(out, errors);
    return finish_stage("clone", sequences.size(), rows.size(), "no documents produced");
}

int do_curate_sft(const Settings& s, const std::vector<CotRecord>& records,
                  const std::vector<Problem>& problems, const fs::path& out,
                  const fs::path& stats_path) {
    curator::CurateConfig cc;
    cc.per_problem_direct = s.per_direct;
    cc.per_problem_search = s.per_search;
    cc.seed = s.seed;
    curator::CurationStats stats;
    auto selected = curator::curate_sft(records, problems, cc, &stats);
    std::vector<json> rows;
    for (const auto& r : selected) rows.push_back(curator::to_json(r));
    write_jsonl_atomic(out, rows);
    std::cout << curator::render_stats_table(stats);
    if (!stats_path.empty())
        write_text_atomic(stats_path, curator::to_json(stats).dump(2) + "\n");
    return finish_stage("curate-sft", records.size(), rows.size(), "no records selected");
}

int do_pass_rates(const Settings& s, const std::vector<Problem>& problems, const fs::path& out,
                  std::vector<StageError>& errors) {
    auto policy = make_policy(s);
    auto reports = run_stage<Problem, curator::PassRateReport>(
        problems, s.jobs, "pass-rates", errors,
        [&](const Problem& p) { return curator::pass_rate_for(p, *policy, s.n_samples); },
        [](const Problem& p) { return p.id; });
    std::vector<json> rows;
    for (const auto& r : reports) rows.push_back(curator::to_json(r));
    write_jsonl_atomic(out, rows);
    write_errors(out, errors);
    return finish_stage("pass-rates", problems.size(), rows.size(), "no reports produced");
}

int do_curate_rl(const Settings& s, const std::vector<Problem>& problems,
                 const std::vector<curator::PassRateReport>& reports, const fs::path& out) {
    auto pre = curator::prefilter_problems(problems);
    auto kept = curator::filter_rl_prompts(pre.kept, reports, s.band);
    std::vector<json> rows;
    for (const Problem& p : kept) rows.push_back(to_json(p));
    write_jsonl_atomic(out, rows);
    for (const auto& [id, reason] : pre.dropped)
        std::cerr << "prefiltered " << id << ": " << reason << "\n";
    return finish_stage("curate-rl", problems.size(), rows.size(),
                        "no prompts inside the pass-rate band");
}

int do_grpo(const Settings& s, const std::vector<grpo::RewardGroup>& groups,
            const fs::path& out) {
    std::vector<std::string> warnings;
    auto records = grpo::batch_advantages(groups, s.grpo, &warnings);
    for (const std::string& w : warnings) std::cerr << "grpo: " << w << "\n";
    std::vector<json> rows;
    for (const auto& r : records) rows.push_back(grpo::to_json(r));
    write_jsonl_atomic(out, rows);
    return finish_stage("grpo-advantages", groups.size(), rows.size(), "no records produced");
}

std::vector<grpo::RewardGroup> generate_groups(const Settings& s,
                                               const std::vector<Problem>& prompts,
                                               std::vector<StageError>& errors) {
    auto policy = make_policy(s);
    return run_stage<Problem, grpo::RewardGroup>(
        prompts, s.jobs, "grpo-rollouts", errors,
        [&](const Problem& p) {
            std::vector<grpo::SolutionText> sols;
            auto rollouts = policy->rollout(p, {}, s.grpo.rollouts_per_prompt);
            for (std::size_t j = 0; j < rollouts.size(); ++j)
                sols.push_back({p.id + "#" + std::to_string(j),
                                rollouts[j].full_solution_text});
            return grpo::assign_rewards(p, sols);
        },
        [](const Problem& p) { return p.id; });
}

int do_analyze(const std::vector<CotRecord>& records, const fs::path& out) {
    auto metrics = analysis::corpus_metrics(records);
    write_text_atomic(out, analysis::to_json(metrics).dump(2) + "\n");
    std::cout << analysis::to_json(metrics).dump(2) << "\n";
    return 0;
}

int do_export_dot(const std::vector<SearchTree>& trees,
                  const std::map<std::string, LinearSequence>& overlays,
                  const fs::path& out_dir) {
    fs::create_directories(out_dir);
    for (const SearchTree& t : trees) {
        std::optional<LinearSequence> overlay;
        if (auto it = overlays.find(t.problem_id); it != overlays.end()) overlay = it->second;
        write_text_atomic(out_dir / (t.problem_id + ".dot"),
                          analysis::export_tree_dot(t, overlay));
    }
    return finish_stage("export-dot", trees.size(), trees.size(), "no trees to export");
}

}  // namespace

int run(int argc, const char* const* argv) {
    Settings s;
    try {
        apply_env(s);
        // --config is honored before flag parsing so flags can override it.
        std::string config_path;
        if (const char* env = std::getenv("TREECOT_CONFIG"); env && *env) config_path = env;
        for (int i = 1; i < argc; ++i) {
            std::string_view a = argv[i];
            if (a == "--config" && i + 1 < argc)
                config_path = argv[i + 1];
            else if (a.rfind("--config=", 0) == 0)
                config_path = std::string(a.substr(9));
        }
        if (!config_path.empty()) apply_config(s, config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"search-tree chain-of-thought data pipeline"};
    app.require_subcommand(1);
    std::string config_dummy;
    app.add_option("--config", config_dummy, "JSON config file");
    app.add_option("--seed", s.seed, "global RNG seed");
    app.add_option("--policy", s.policy, "scripted | remote");
    app.add_option("--jobs", s.jobs, "worker threads across problems")
        ->check(CLI::PositiveNumber);
    app.add_option("--blunder-rate", s.blunder_rate, "scripted policy mis-statement rate")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--endpoint", s.remote.endpoint_url, "remote policy endpoint URL");
    app.add_flag("--audit", s.audit, "log remote request/response bodies");

    // gen-toy
    auto* gen = app.add_subcommand("gen-toy", "emit a seeded toy-problem corpus");
    std::string gen_out;
    gen->add_option("--n", s.gen.count, "number of problems");
    gen->add_option("--min-numbers", s.gen.min_numbers);
    gen->add_option("--max-numbers", s.gen.max_numbers);
    gen->add_option("--value-lo", s.gen.value_lo);
    gen->add_option("--value-hi", s.gen.value_hi);
    gen->add_option("--out", gen_out, "problems.jsonl")->required();

    // search
    auto* search = app.add_subcommand("search", "run tree search per problem");
    std::string search_in, search_out, search_trace;
    search->add_option("--in", search_in, "problems.jsonl")->required();
    search->add_option("--out", search_out, "trees.jsonl")->required();
    search->add_option("--iterations", s.mcts.n_iterations);
    search->add_option("--k-actions", s.mcts.k_actions);
    search->add_option("--m-rollouts", s.mcts.m_rollouts);
    search->add_option("--c-puct", s.mcts.c_puct);
    search->add_option("--max-depth", s.mcts.max_depth);
    search->add_option("--trace", search_trace, "per-iteration event log (jsonl)");

    // linearize
    auto* lin = app.add_subcommand("linearize", "trees -> backtracking sequences");
    std::string lin_in, lin_problems, lin_out, lin_stats;
    lin->add_option("--in", lin_in, "trees.jsonl")->required();
    lin->add_option("--problems", lin_problems, "problems.jsonl")->required();
    lin->add_option("--out", lin_out, "sequences.jsonl")->required();
    lin->add_option("--k-min", s.k_min);
    lin->add_option("--k-max", s.k_max);
    lin->add_option("--max-per-tree", s.max_per_tree);
    lin->add_option("--self-eval-votes", s.self_eval_votes);
    lin->add_option("--stats", lin_stats, "summary json");

    // clone
    auto* clone = app.add_subcommand("clone", "sequences -> chain-of-thought records");
    std::string clone_in, clone_trees, clone_problems, clone_out;
    clone->add_option("--in", clone_in, "sequences.jsonl")->required();
    clone->add_option("--trees", clone_trees, "trees.jsonl")->required();
    clone->add_option("--problems", clone_problems, "problems.jsonl")->required();
    clone->add_option("--out", clone_out, "cot.jsonl")->required();
    clone->add_option("--q-reflect", s.q_reflect, "mid-stream reflection threshold");

    // curate-sft
    auto* sft = app.add_subcommand("curate-sft", "select per-problem SFT solutions");
    std::string sft_in, sft_problems, sft_out, sft_stats;
    sft->add_option("--in", sft_in, "cot.jsonl")->required();
    sft->add_option("--problems", sft_problems, "problems.jsonl")->required();
    sft->add_option("--out", sft_out, "sft.jsonl")->required();
    sft->add_option("--per-direct", s.per_direct);
    sft->add_option("--per-search", s.per_search);
    sft->add_option("--stats", sft_stats, "stats json");

    // pass-rates
    auto* rates = app.add_subcommand("pass-rates", "sample whole-solution pass rates");
    std::string rates_in, rates_out;
    rates->add_option("--in", rates_in, "problems.jsonl")->required();
    rates->add_option("--out", rates_out, "pass_rates.jsonl")->required();
    rates->add_option("--n-samples", s.n_samples);

    // curate-rl
    auto* rl = app.add_subcommand("curate-rl", "filter RL prompts by pass-rate band");
    std::string rl_in, rl_problems, rl_out;
    rl->add_option("--in", rl_in, "pass_rates.jsonl")->required();
    rl->add_option("--problems", rl_problems, "problems.jsonl")->required();
    rl->add_option("--out", rl_out, "rl_prompts.jsonl")->required();
    rl->add_option("--low", s.band.low);
    rl->add_option("--high", s.band.high);

    // grpo-advantages
    auto* adv = app.add_subcommand("grpo-advantages", "group-relative advantages");
    std::string adv_solutions, adv_prompts, adv_problems, adv_out;
    bool adv_generate = false;
    adv->add_option("--solutions", adv_solutions,
                    "solutions.jsonl (problem_id, solution_id, text)");
    adv->add_option("--prompts", adv_prompts, "rl_prompts.jsonl (with --generate)");
    adv->add_option("--problems", adv_problems, "problems.jsonl (reference answers)");
    adv->add_flag("--generate", adv_generate, "roll out solutions with the policy");
    adv->add_option("--out", adv_out, "advantages.jsonl")->required();
    adv->add_option("--rollouts-per-prompt", s.grpo.rollouts_per_prompt);
    adv->add_option("--batch-size", s.grpo.batch_size);

    // analyze
    auto* ana = app.add_subcommand("analyze", "corpus length/backtrack metrics");
    std::string ana_in, ana_out;
    ana->add_option("--in", ana_in, "cot.jsonl or sft.jsonl")->required();
    ana->add_option("--out", ana_out, "metrics.json")->required();

    // export-dot
    auto* dot = app.add_subcommand("export-dot", "Graphviz per search tree");
    std::string dot_in, dot_sequences, dot_dir;
    dot->add_option("--in", dot_in, "trees.jsonl")->required();
    dot->add_option("--sequences", dot_sequences, "overlay first sequence per problem");
    dot->add_option("--out-dir", dot_dir, "directory for .dot files")->required();

    // pipeline
    auto* pipe = app.add_subcommand("pipeline", "run every stage in order");
    std::string pipe_in, pipe_dir;
    pipe->add_option("--in", pipe_in, "problems.jsonl")->required();
    pipe->add_option("--out-dir", pipe_dir, "output directory")->required();
    pipe->add_option("--iterations", s.mcts.n_iterations);
    pipe->add_option("--k-actions", s.mcts.k_actions);
    pipe->add_option("--m-rollouts", s.mcts.m_rollouts);
    pipe->add_option("--c-puct", s.mcts.c_puct);
    pipe->add_option("--max-depth", s.mcts.max_depth);
    pipe->add_option("--k-min", s.k_min);
    pipe->add_option("--k-max", s.k_max);
    pipe->add_option("--max-per-tree", s.max_per_tree);
    pipe->add_option("--self-eval-votes", s.self_eval_votes);
    pipe->add_option("--q-reflect", s.q_reflect);
    pipe->add_option("--per-direct", s.per_direct);
    pipe->add_option("--per-search", s.per_search);
    pipe->add_option("--n-samples", s.n_samples);
    pipe->add_option("--low", s.band.low);
    pipe->add_option("--high", s.band.high);
    pipe->add_option("--rollouts-per-prompt", s.grpo.rollouts_per_prompt);
    pipe->add_option("--batch-size", s.grpo.batch_size);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        s.gen.seed = s.seed;

        if (gen->parsed()) {
            std::vector<json> rows;
            for (const Problem& p : toy::gen_corpus(s.gen)) rows.push_back(to_json(p));
            write_jsonl_atomic(gen_out, rows);
            return 0;
        }

        if (search->parsed()) {
            std::vector<StageError> errors;
            return do_search(s, load_problems(search_in), search_out, search_trace, errors);
        }

        if (lin->parsed()) {
            std::vector<SearchTree> trees;
            for (const json& j : read_jsonl(lin_in)) trees.push_back(tree_from_json(j));
            auto problems = problem_index(load_problems(lin_problems));
            std::vector<StageError> errors;
            return do_linearize(s, trees, problems, lin_out, lin_stats, errors);
        }

        if (clone->parsed()) {
            std::vector<LinearSequence> seqs;
            for (const json& j : read_jsonl(clone_in)) seqs.push_back(sequence_from_json(j));
            std::map<std::string, SearchTree> trees;
            for (const json& j : read_jsonl(clone_trees)) {
                SearchTree t = tree_from_json(j);
                std::string id = t.problem_id;
                if (!trees.emplace(id, std::move(t)).second)
                    throw InputError("duplicate tree for problem " + id);
            }
            auto problems = problem_index(load_problems(clone_problems));
            std::vector<StageError> errors;
            return do_clone(s, seqs, trees, problems, clone_out, errors);
        }

        if (sft->parsed()) {
            std::vector<CotRecord> records;
            for (const json& j : read_jsonl(sft_in)) records.push_back(record_from_json(j));
            return do_curate_sft(s, records, load_problems(sft_problems), sft_out, sft_stats);
        }

        if (rates->parsed()) {
            std::vector<StageError> errors;
            return do_pass_rates(s, load_problems(rates_in), rates_out, errors);
        }

        if (rl->parsed()) {
            std::vector<curator::PassRateReport> reports;
            for (const json& j : read_jsonl(rl_in))
                reports.push_back(curator::pass_rate_from_json(j));
            return do_curate_rl(s, load_problems(rl_problems), reports, rl_out);
        }

        if (adv->parsed()) {
            std::vector<grpo::RewardGroup> groups;
            std::vector<StageError> errors;
            if (adv_generate) {
                if (adv_prompts.empty())
                    throw ConfigError("--generate needs --prompts rl_prompts.jsonl");
                groups = generate_groups(s, load_problems(adv_prompts), errors);
            } else {
                if (adv_solutions.empty() || adv_problems.empty())
                    throw ConfigError(
                        "grpo-advantages needs --solutions and --problems, or --generate");
                auto problems = problem_index(load_problems(adv_problems));
                std::vector<std::string> order;
                std::map<std::string, std::vector<grpo::SolutionText>> by_problem;
                for (const json& j : read_jsonl(adv_solutions)) {
                    std::string pid = j.at("problem_id").get<std::string>();
                    if (!by_problem.count(pid)) order.push_back(pid);
                    by_problem[pid].push_back({j.at("solution_id").get<std::string>(),
                                               j.at("text").get<std::string>()});
                }
                for (const std::string& pid : order) {
                    auto it = problems.find(pid);
                    if (it == problems.end()) throw InputError("no problem " + pid);
                    groups.push_back(grpo::assign_rewards(it->second, by_problem[pid]));
                }
            }
            int rc = do_grpo(s, groups, adv_out);
            write_errors(adv_out, errors);
            return rc;
        }

        if (ana->parsed()) {
            std::vector<CotRecord> records;
            for (const json& j : read_jsonl(ana_in)) records.push_back(record_from_json(j));
            return do_analyze(records, ana_out);
        }

        if (dot->parsed()) {
            std::vector<SearchTree> trees;
            for (const json& j : read_jsonl(dot_in)) trees.push_back(tree_from_json(j));
            std::map<std::string, LinearSequence> overlays;
            if (!dot_sequences.empty())
                for (const json& j : read_jsonl(dot_sequences)) {
                    LinearSequence q = sequence_from_json(j);
                    overlays.emplace(q.problem_id, std::move(q));  // first one wins
                }
            return do_export_dot(trees, overlays, dot_dir);
        }

        if (pipe->parsed()) {
            fs::path dir(pipe_dir);
            fs::create_directories(dir);
            auto problems = load_problems(pipe_in);
            std::vector<StageError> all_errors;

            int rc = do_search(s, problems, dir / "trees.jsonl", "", all_errors);
            if (rc != 0) return rc;
            std::vector<SearchTree> trees;
            for (const json& j : read_jsonl(dir / "trees.jsonl"))
                trees.push_back(tree_from_json(j));

            auto index = problem_index(problems);
            rc = do_linearize(s, trees, index, dir / "sequences.jsonl",
                              dir / "linearize_stats.json", all_errors);
            if (rc != 0) return rc;
            std::vector<LinearSequence> seqs;
            for (const json& j : read_jsonl(dir / "sequences.jsonl"))
                seqs.push_back(sequence_from_json(j));

            std::map<std::string, SearchTree> tree_map;
            for (SearchTree& t : trees) {
                std::string id = t.problem_id;
                tree_map.emplace(id, std::move(t));
            }
            rc = do_clone(s, seqs, tree_map, index, dir / "cot.jsonl", all_errors);
            if (rc != 0) return rc;
            std::vector<CotRecord> records;
            for (const json& j : read_jsonl(dir / "cot.jsonl"))
                records.push_back(record_from_json(j));

            rc = do_curate_sft(s, records, problems, dir / "sft.jsonl",
                               dir / "sft_stats.json");
            if (rc != 0) return rc;

            rc = do_pass_rates(s, problems, dir / "pass_rates.jsonl", all_errors);
            if (rc != 0) return rc;
            std::vector<curator::PassRateReport> reports;
            for (const json& j : read_jsonl(dir / "pass_rates.jsonl"))
                reports.push_back(curator::pass_rate_from_json(j));

            rc = do_curate_rl(s, problems, reports, dir / "rl_prompts.jsonl");
            if (rc != 0) return rc;
            auto prompts = load_problems(dir / "rl_prompts.jsonl");

            auto groups = generate_groups(s, prompts, all_errors);
            rc = do_grpo(s, groups, dir / "advantages.jsonl");
            if (rc != 0) return rc;

            std::vector<CotRecord> sft_records;
            for (const json& j : read_jsonl(dir / "sft.jsonl")) {
                CotRecord r;
                r.problem_id = j.at("problem_id").get<std::string>();
                r.prompt = j.at("prompt").get<std::string>();
                r.response = j.at("response").get<std::string>();
                r.k_backtracks = j.at("k_backtracks").get<int>();
                r.n_restarts = j.at("n_restarts").get<int>();
                r.token_estimate = j.at("token_estimate").get<std::int64_t>();
                sft_records.push_back(std::move(r));
            }
            rc = do_analyze(sft_records, dir / "metrics.json");
            write_errors(dir / "pipeline.jsonl", all_errors);
            return rc;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;  // no subcommand matched (require_subcommand should prevent this)
}

}  // namespace treecot::cli
