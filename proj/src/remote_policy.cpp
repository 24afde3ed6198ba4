#include "treecot/remote_policy.hpp"

#include <httplib.h>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include <json.hpp>

#include "treecot/prompts.hpp"
#include "treecot/verifier.hpp"

namespace treecot {
namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string joined_steps(const std::vector<Step>& prefix) {
    if (prefix.empty()) return "None";
    std::string out;
    for (const Step& s : prefix) {
        if (!out.empty()) out += '\n';
        out += s.text;
    }
    return out;
}

}  // namespace

RemotePolicy::RemotePolicy(RemoteConfig cfg, PolicyConfig pcfg)
    : cfg_(std::move(cfg)), pcfg_(pcfg) {
    const std::string& url = cfg_.endpoint_url;
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos) throw InputError("endpoint_url needs a scheme: " + url);
    std::size_t slash = url.find('/', scheme + 3);
    host_base_ = slash == std::string::npos ? url : url.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : url.substr(slash);
}

void RemotePolicy::audit_line(const std::string& kind, const std::string& prompt, int status,
                              const std::string& body) {
    if (!cfg_.audit) return;
    std::lock_guard<std::mutex> lock(audit_mutex_);
    std::ofstream out(cfg_.audit_path, std::ios::app);
    out << json{{"kind", kind}, {"prompt", prompt}, {"status", status}, {"response", body}}
               .dump()
        << '\n';
}

std::optional<std::string> RemotePolicy::complete(const std::string& prompt) {
    json body{{"model", cfg_.model},
              {"temperature", cfg_.temperature},
              {"max_tokens", cfg_.max_tokens},
              {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})}};
    httplib::Headers headers;
    if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key && *key)
        headers.emplace("Authorization", std::string("Bearer ") + key);

    for (int attempt = 0; attempt < std::max(cfg_.max_retries, 1); ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
        httplib::Client client(host_base_);
        client.set_connection_timeout(cfg_.timeout_seconds, 0);
        client.set_read_timeout(cfg_.timeout_seconds, 0);
        auto res = client.Post(path_, headers, body.dump(), "application/json");
        if (!res) {
            audit_line("transport_error", prompt, -1, "");
            continue;
        }
        audit_line("response", prompt, res->status, res->body);
        if (res->status != 200) continue;
        try {
            json parsed = json::parse(res->body);
            return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception&) {
            continue;  // malformed payload: retry like a transport failure
        }
    }
    return std::nullopt;
}

std::vector<StepProposal> RemotePolicy::propose_steps(const Problem& problem,
                                                      const std::vector<Step>& prefix, int k) {
    std::string prompt =
        "You are solving a math problem one step at a time.\n\nProblem: " + problem.statement +
        "\n\nSolution steps so far:\n" + joined_steps(prefix) +
        "\n\nWrite the next single step of the solution and nothing else. If the solution is "
        "finished, write the final answer step in the form: The final answer is "
        "$\\boxed{...}$.";
    std::vector<StepProposal> out;
    std::set<std::string> seen;
    int index = static_cast<int>(prefix.size());
    for (int i = 0; i < k; ++i) {
        auto reply = complete(prompt);
        if (!reply) continue;
        std::string text = trim(*reply);
        if (text.empty() || !seen.insert(text).second) continue;
        out.push_back({{text, index}, 1.0});
    }
    return out;
}

std::vector<RolloutResult> RemotePolicy::rollout(const Problem& problem,
                                                 const std::vector<Step>& prefix, int m) {
    std::string prompt =
        "Complete the solution to the math problem.\n\nProblem: " + problem.statement +
        "\n\nSolution steps so far:\n" + joined_steps(prefix) +
        "\n\nContinue from here and finish the solution, ending with a line of the form: The "
        "final answer is $\\boxed{...}$.";
    std::string prefix_text = prefix.empty() ? "" : joined_steps(prefix);
    std::vector<RolloutResult> out;
    for (int j = 0; j < m; ++j) {
        RolloutResult r;
        r.full_solution_text = prefix_text;
        if (auto reply = complete(prompt)) {
            std::string cont = trim(*reply);
            if (!r.full_solution_text.empty() && !cont.empty()) r.full_solution_text += '\n';
            r.full_solution_text += cont;
            r.predicted_answer = verifier::extract_answer(r.full_solution_text);
        }
        out.push_back(std::move(r));
    }
    return out;
}

double RemotePolicy::self_evaluate(const Problem& problem, const std::string& solution_text,
                                   int n_votes) {
    std::string base = prompts::load_prompt(cfg_.prompt_dir, "self_eval");
    std::string prompt = prompts::fill_slots(
        std::move(base),
        {{"Problem: ", problem.statement}, {"Solution: ", "\n" + solution_text}});
    int yes = 0;
    for (int i = 0; i < std::max(n_votes, 1); ++i) {
        auto reply = complete(prompt);
        if (!reply) continue;  // failed vote counts as "no"
        std::string hay = lower(*reply);
        std::size_t pos = hay.rfind("is correct reasoning:");
        if (pos == std::string::npos) continue;
        std::string tail = trim(hay.substr(pos + std::string("is correct reasoning:").size()));
        if (tail.rfind("yes", 0) == 0) ++yes;
    }
    return static_cast<double>(yes) / static_cast<double>(std::max(n_votes, 1));
}

std::string RemotePolicy::rewrite_step(const Problem& problem, const std::string& prior_cot,
                                       const Step& step) {
    (void)problem;
    std::string base = prompts::load_prompt(cfg_.prompt_dir, "rewrite_step");
    std::string prompt = prompts::fill_slots(
        std::move(base), {{"Previous solution thoughts: ", prior_cot.empty() ? "None" : prior_cot},
                          {"Current solution step:", "\n" + step.text}});
    if (auto reply = complete(prompt)) {
        std::string text = trim(*reply);
        if (!text.empty()) return text;
    }
    ++fallbacks_;  // deterministic degradation: keep the raw step text
    return step.text;
}

std::string RemotePolicy::write_backtrack_phrase(const Problem& problem,
                                                 const std::string& prior_cot,
                                                 const std::optional<Step>& target_step) {
    (void)problem;
    std::string base = prompts::load_prompt(cfg_.prompt_dir, "backtrack");
    std::string prompt = prompts::fill_slots(
        std::move(base),
        {{"Previous solution thoughts: ", prior_cot.empty() ? "None" : prior_cot},
         {"Backtrack step: ", target_step ? target_step->text : std::string("RESTART")}});

    if (auto reply = complete(prompt)) {
        std::string text = trim(*reply);
        std::string hay = lower(text);
        bool ok = target_step
                      ? hay.find("back") != std::string::npos
                      : (hay.rfind("let's restart", 0) == 0 || hay.rfind("let's start over", 0) == 0);
        if (!text.empty() && ok) return text;
    }
    ++fallbacks_;
    if (!target_step) return "Let's restart from the beginning and try a different approach.";
    std::string head = target_step->text.substr(0, target_step->text.find('\n'));
    return "Let's go back to the step \"" + head + "\" and continue from there.";
}

}  // namespace treecot
