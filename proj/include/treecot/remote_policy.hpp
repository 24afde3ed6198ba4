#pragma once

#include <atomic>
#include <mutex>
#include <string>

#include "treecot/policy.hpp"

namespace treecot {

struct RemoteConfig {
    std::string endpoint_url = "http://127.0.0.1:8080/v1/chat/completions";
    std::string api_key_env = "TREECOT_API_KEY";  // header omitted when unset
    std::string model = "default";
    double temperature = 0.7;
    int max_tokens = 1024;
    int max_retries = 3;
    int timeout_seconds = 30;
    std::string prompt_dir = "assets/prompts";
    bool audit = false;  // append request/response bodies to audit_path
    std::string audit_path = "remote_audit.jsonl";
};

// Chat-completions-backed policy. Per-sample transport failures degrade
// gracefully: proposals are skipped, rollouts come back answerless (scored
// incorrect), self-eval votes count as "no", and rewrite/backtrack fall back
// to deterministic templates (counted via fallback_count).
class RemotePolicy : public Policy {
public:
    RemotePolicy(RemoteConfig cfg, PolicyConfig pcfg);

    std::vector<StepProposal> propose_steps(const Problem& problem,
                                            const std::vector<Step>& prefix, int k) override;
    std::vector<RolloutResult> rollout(const Problem& problem, const std::vector<Step>& prefix,
                                       int m) override;
    double self_evaluate(const Problem& problem, const std::string& solution_text,
                         int n_votes) override;
    std::string rewrite_step(const Problem& problem, const std::string& prior_cot,
                             const Step& step) override;
    std::string write_backtrack_phrase(const Problem& problem, const std::string& prior_cot,
                                       const std::optional<Step>& target_step) override;

    int fallback_count() const { return fallbacks_; }

private:
    std::optional<std::string> complete(const std::string& prompt);
    void audit_line(const std::string& kind, const std::string& prompt, int status,
                    const std::string& body);

    RemoteConfig cfg_;
    PolicyConfig pcfg_;
    std::string host_base_;  // scheme://host:port
    std::string path_;
    std::atomic<int> fallbacks_{0};
    std::mutex audit_mutex_;
};

}  // namespace treecot
