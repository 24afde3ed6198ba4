#include "treecot/curator.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

#include "treecot/hash.hpp"
#include "treecot/verifier.hpp"

namespace treecot::curator {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field: ") + key);
    return *it;
}

}  // namespace

json to_json(const SftRecord& r) {
    return {{"problem_id", r.problem_id},
            {"prompt", r.prompt},
            {"response", r.response},
            {"source_tag", r.source_tag},
            {"k_backtracks", r.k_backtracks},
            {"n_restarts", r.n_restarts},
            {"token_estimate", r.token_estimate}};
}

SftRecord sft_from_json(const json& j) {
    SftRecord r;
    r.problem_id = need(j, "problem_id").get<std::string>();
    r.prompt = need(j, "prompt").get<std::string>();
    r.response = need(j, "response").get<std::string>();
    r.source_tag = j.value("source_tag", std::string{});
    r.k_backtracks = need(j, "k_backtracks").get<int>();
    r.n_restarts = need(j, "n_restarts").get<int>();
    r.token_estimate = need(j, "token_estimate").get<std::int64_t>();
    return r;
}

json to_json(const CurationStats& s) {
    auto bucket = [](const CurationStats::Bucket& b) {
        return json{{"problems", b.problems},
                    {"trajectories", b.trajectories},
                    {"backtracks", b.backtracks},
                    {"restarts", b.restarts},
                    {"tokens", b.tokens}};
    };
    json tags = json::array();
    for (const auto& [tag, b] : s.by_tag) {
        json jb = bucket(b);
        jb["source_tag"] = tag;
        tags.push_back(std::move(jb));
    }
    return {{"by_tag", std::move(tags)}, {"total", bucket(s.total)}};
}

std::string render_stats_table(const CurationStats& s) {
    char line[160];
    std::string out;
    std::snprintf(line, sizeof line, "%-12s %9s %12s %10s %8s %12s\n", "source", "problems",
                  "trajectories", "backtracks", "restarts", "tokens");
    out += line;
    auto row = [&](const std::string& tag, const CurationStats::Bucket& b) {
        std::snprintf(line, sizeof line, "%-12s %9d %12d %10lld %8lld %12lld\n", tag.c_str(),
                      b.problems, b.trajectories, static_cast<long long>(b.backtracks),
                      static_cast<long long>(b.restarts), static_cast<long long>(b.tokens));
        out += line;
    };
    for (const auto& [tag, b] : s.by_tag) row(tag, b);
    row("total", s.total);
    return out;
}

std::vector<SftRecord> curate_sft(const std::vector<CotRecord>& records,
                                  const std::vector<Problem>& problems,
                                  const CurateConfig& cfg, CurationStats* stats) {
    if (cfg.per_problem_direct < 0 || cfg.per_problem_search < 0)
        throw InputError("per-problem quotas must be >= 0");
    std::map<std::string, const Problem*> by_id;
    for (const Problem& p : problems) by_id[p.id] = &p;

    // Group record indices by problem, preserving first-seen problem order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::size_t>> grouped;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const std::string& id = records[i].problem_id;
        if (!by_id.count(id)) throw InputError("cot record for unknown problem " + id);
        if (!grouped.count(id)) order.push_back(id);
        grouped[id].push_back(i);
    }

    std::vector<SftRecord> out;
    std::map<std::string, std::size_t> tag_slot;
    CurationStats local;
    CurationStats& st = stats ? *stats : local;
    st = {};

    for (const std::string& id : order) {
        std::vector<std::size_t> direct, search;
        for (std::size_t i : grouped[id])
            (records[i].k_backtracks == 0 ? direct : search).push_back(i);

        SplitMix64 rng(derive_seed(cfg.seed, "curate", id, {}));
        auto draw = [&](std::vector<std::size_t>& pool, int quota) {
            auto picks = sample_indices(pool.size(), static_cast<std::size_t>(quota), rng);
            std::sort(picks.begin(), picks.end());  // keep input order inside the pool
            std::vector<std::size_t> chosen;
            for (std::size_t p : picks) chosen.push_back(pool[p]);
            return chosen;
        };
        std::vector<std::size_t> chosen = draw(direct, cfg.per_problem_direct);
        for (std::size_t i : draw(search, cfg.per_problem_search)) chosen.push_back(i);
        if (chosen.empty()) continue;

        const Problem& prob = *by_id[id];
        if (!tag_slot.count(prob.source_tag)) {
            tag_slot[prob.source_tag] = st.by_tag.size();
            st.by_tag.emplace_back(prob.source_tag, CurationStats::Bucket{});
        }
        CurationStats::Bucket& b = st.by_tag[tag_slot[prob.source_tag]].second;
        b.problems += 1;
        st.total.problems += 1;

        for (std::size_t i : chosen) {
            const CotRecord& r = records[i];
            SftRecord s;
            s.problem_id = r.problem_id;
            s.prompt = r.prompt;
            s.response = r.response;
            s.source_tag = prob.source_tag;
            s.k_backtracks = r.k_backtracks;
            s.n_restarts = r.n_restarts;
            s.token_estimate = r.token_estimate;
            out.push_back(std::move(s));

            int backs = r.k_backtracks - r.n_restarts;
            b.trajectories += 1;
            b.backtracks += backs;
            b.restarts += r.n_restarts;
            b.tokens += r.token_estimate;
            st.total.trajectories += 1;
            st.total.backtracks += backs;
            st.total.restarts += r.n_restarts;
            st.total.tokens += r.token_estimate;
        }
    }
    return out;
}

json to_json(const PassRateReport& r) {
    return {{"problem_id", r.problem_id},
            {"n_samples", r.n_samples},
            {"n_correct", r.n_correct},
            {"pass_rate", r.pass_rate}};
}

PassRateReport pass_rate_from_json(const json& j) {
    PassRateReport r;
    r.problem_id = need(j, "problem_id").get<std::string>();
    r.n_samples = need(j, "n_samples").get<int>();
    r.n_correct = need(j, "n_correct").get<int>();
    r.pass_rate = need(j, "pass_rate").get<double>();
    return r;
}

PassRateReport pass_rate_for(const Problem& problem, Policy& policy, int n_samples) {
    if (n_samples < 1) throw InputError("n_samples must be >= 1");
    PassRateReport rep;
    rep.problem_id = problem.id;
    rep.n_samples = n_samples;
    for (const RolloutResult& r : policy.rollout(problem, {}, n_samples))
        if (verifier::score(r.predicted_answer, problem.reference_answer).is_correct)
            ++rep.n_correct;
    rep.pass_rate = static_cast<double>(rep.n_correct) / static_cast<double>(n_samples);
    return rep;
}

std::vector<PassRateReport> compute_pass_rates(const std::vector<Problem>& problems,
                                               Policy& policy, int n_samples) {
    std::vector<PassRateReport> out;
    out.reserve(problems.size());
    for (const Problem& p : problems) out.push_back(pass_rate_for(p, policy, n_samples));
    return out;
}

std::vector<Problem> filter_rl_prompts(const std::vector<Problem>& problems,
                                       const std::vector<PassRateReport>& reports,
                                       const FilterBand& band) {
    if (!(band.low <= band.high)) throw InputError("filter band low must be <= high");
    std::map<std::string, double> rate;
    for (const PassRateReport& r : reports) rate[r.problem_id] = r.pass_rate;
    std::vector<Problem> kept;
    for (const Problem& p : problems) {
        auto it = rate.find(p.id);
        if (it == rate.end()) continue;
        if (it->second >= band.low && it->second < band.high) kept.push_back(p);
    }
    return kept;
}

PrefilterResult prefilter_problems(const std::vector<Problem>& problems) {
    PrefilterResult res;
    for (const Problem& p : problems) {
        std::string canon_ref = verifier::canonical_answer(p.reference_answer);
        std::string stmt = lower(p.statement);
        if (canon_ref.empty()) {
            res.dropped.emplace_back(p.id, "empty or non-canonicalizable reference answer");
        } else if (stmt.find("[asy]") != std::string::npos ||
                   stmt.find("figure") != std::string::npos ||
                   stmt.find("diagram") != std::string::npos) {
            res.dropped.emplace_back(p.id, "statement references a figure");
        } else {
            res.kept.push_back(p);
        }
    }
    return res;
}

}  // namespace treecot::curator
