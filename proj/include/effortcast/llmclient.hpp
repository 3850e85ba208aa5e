#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "effortcast/dataset.hpp"

namespace effortcast {

struct RetryPolicy {
    unsigned max_attempts = 3;
    std::chrono::milliseconds base_backoff{250};
};

struct ProviderConfig {
    std::string base_url;  // http provider only
    std::string model_name = "gpt-3.5-turbo";
    /// Name of the environment variable holding the API key. Only the name
    /// is ever persisted or logged; the value is read at call time.
    std::string api_key_env_var = "EFFORTCAST_API_KEY";
    std::chrono::milliseconds timeout{30000};
    unsigned max_concurrent_requests = 4;
    RetryPolicy retry;
    double temperature = 0.0;  // deterministic decoding
};

enum class JobStatus { Pending, Running, Succeeded, Failed };
const char* to_string(JobStatus status);

struct FineTuneJob {
    std::string job_id;
    JobStatus status = JobStatus::Pending;
    std::optional<std::string> result_model;  // present iff Succeeded
    std::string corpus_digest;
};

struct Estimate {
    std::string source_id;
    std::optional<double> predicted_hours;  // present iff parse_ok
    std::string raw_completion;
    bool parse_ok = false;
    std::string note;  // failure / exclusion reason
};

struct CompletionRequest {
    std::string source_id;
    std::string prompt;
    std::string model;
};

/// Transport interface. Implementations must be safe to call from multiple
/// threads at once.
class Provider {
  public:
    virtual ~Provider() = default;
    virtual std::string name() const = 0;
    virtual FineTuneJob submit_finetune(const std::string& corpus_path,
                                        const ProviderConfig& cfg) = 0;
    virtual FineTuneJob poll_job(const std::string& job_id, const ProviderConfig& cfg) = 0;
    virtual std::string complete(const CompletionRequest& request, const ProviderConfig& cfg) = 0;
};

/// Shared mock behaviour: fine-tune submissions validate the corpus and
/// succeed immediately; jobs are tracked for idempotent polling.
class MockProvider : public Provider {
  public:
    FineTuneJob submit_finetune(const std::string& corpus_path, const ProviderConfig& cfg) override;
    FineTuneJob poll_job(const std::string& job_id, const ProviderConfig& cfg) override;

  private:
    mutable std::mutex mutex_;
    std::map<std::string, FineTuneJob> jobs_;
};

/// Answers with the true target of the requested source id, closing the
/// pipeline loop with zero error.
class EchoOracleProvider final : public MockProvider {
  public:
    explicit EchoOracleProvider(std::unordered_map<std::string, double> truth_by_id);
    explicit EchoOracleProvider(const Dataset& truth);

    std::string name() const override { return "mock-oracle"; }
    std::string complete(const CompletionRequest& request, const ProviderConfig& cfg) override;

  private:
    std::unordered_map<std::string, double> truth_;
};

class ConstantProvider final : public MockProvider {
  public:
    explicit ConstantProvider(std::string completion = "Estimated cost is: 100.0 hours");

    std::string name() const override { return "mock-constant"; }
    std::string complete(const CompletionRequest& request, const ProviderConfig& cfg) override;

  private:
    std::string completion_;
};

/// Per-id scripted responses with a fallback; ids listed in `garbage_ids`
/// answer with non-numeric text.
class ScriptedProvider final : public MockProvider {
  public:
    ScriptedProvider(std::unordered_map<std::string, std::string> by_id, std::string fallback);

    std::string name() const override { return "mock-scripted"; }
    std::string complete(const CompletionRequest& request, const ProviderConfig& cfg) override;

  private:
    std::unordered_map<std::string, std::string> by_id_;
    std::string fallback_;
};

/// Generic completions-style HTTP JSON provider:
///   POST {base_url}/v1/finetunes    {"model", "corpus"}    -> job JSON
///   GET  {base_url}/v1/finetunes/id                        -> job JSON
///   POST {base_url}/v1/completions  {"model", "prompt", "temperature"}
///        -> {"completion": "..."} or {"choices": [{"text": "..."}]}
/// Authorization: Bearer <value of the configured env var>.
class HttpProvider final : public Provider {
  public:
    std::string name() const override { return "http"; }
    FineTuneJob submit_finetune(const std::string& corpus_path, const ProviderConfig& cfg) override;
    FineTuneJob poll_job(const std::string& job_id, const ProviderConfig& cfg) override;
    std::string complete(const CompletionRequest& request, const ProviderConfig& cfg) override;
};

/// Builds a provider by name: "http", "mock-constant", "mock-oracle" /
/// "mock-scripted" (the latter two need `truth` for targets / garbage ids).
std::unique_ptr<Provider> make_provider(const std::string& name, const Dataset* truth = nullptr);

// --- module operations (retry, backoff, parsing, bounded concurrency) ---

/// Digest-stamps and submits a corpus. The corpus must exist; mock providers
/// re-validate it line by line.
FineTuneJob submit_finetune(Provider& provider, const std::string& corpus_path,
                            const ProviderConfig& cfg);

FineTuneJob poll_job(Provider& provider, const FineTuneJob& job, const ProviderConfig& cfg);

/// One completion with retry/backoff; unparsable outputs come back as
/// parse_ok = false rather than an exception.
Estimate predict(Provider& provider, const std::string& prompt, const std::string& model,
                 const ProviderConfig& cfg, const std::string& source_id = {});

/// Order-stable map over prompts with at most cfg.max_concurrent_requests in
/// flight; per-item failures are isolated into their Estimate.
std::vector<Estimate> batch_predict(Provider& provider,
                                    const std::vector<std::pair<std::string, std::string>>& id_prompts,
                                    const std::string& model, const ProviderConfig& cfg);

/// Replaces any occurrence of the configured API key value with "[redacted]".
std::string redact_secrets(std::string text, const ProviderConfig& cfg);

/// FNV-1a hex digest of a file's bytes; used for corpus/job provenance.
std::string file_digest_hex(const std::string& path);

}  // namespace effortcast
