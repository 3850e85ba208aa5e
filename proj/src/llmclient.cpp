#include "effortcast/llmclient.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "effortcast/promptgen.hpp"
#include "effortcast/strutil.hpp"

namespace effortcast {

const char* to_string(JobStatus status) {
    switch (status) {
        case JobStatus::Pending: return "pending";
        case JobStatus::Running: return "running";
        case JobStatus::Succeeded: return "succeeded";
        case JobStatus::Failed: return "failed";
    }
    return "unknown";
}

namespace {

JobStatus status_from_string(const std::string& s) {
    if (s == "pending") return JobStatus::Pending;
    if (s == "running") return JobStatus::Running;
    if (s == "succeeded") return JobStatus::Succeeded;
    if (s == "failed") return JobStatus::Failed;
    return JobStatus::Failed;
}

std::string api_key(const ProviderConfig& cfg) {
    const char* value = std::getenv(cfg.api_key_env_var.c_str());
    return value ? std::string(value) : std::string();
}

/// Debug log to stderr, active only when EFFORTCAST_DEBUG is set. Every line
/// passes through secret redaction first.
void log_debug(const ProviderConfig& cfg, const std::string& line) {
    if (!std::getenv("EFFORTCAST_DEBUG")) return;
    std::fputs((redact_secrets("[llm] " + line, cfg) + "\n").c_str(), stderr);
}

}  // namespace

std::string redact_secrets(std::string text, const ProviderConfig& cfg) {
    const std::string key = api_key(cfg);
    if (key.empty()) return text;
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
        text.replace(pos, key.size(), "[redacted]");
        pos += 10;
    }
    return text;
}

std::string file_digest_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for digest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return hex64(fnv1a64(buf.str()));
}

// ---------------------------------------------------------------------------
// Mocks

FineTuneJob MockProvider::submit_finetune(const std::string& corpus_path,
                                          const ProviderConfig& cfg) {
    (void)cfg;
    try {
        validate_corpus(corpus_path);
    } catch (const InvalidArgumentError& e) {
        throw ProviderRejectedCorpusError(std::string("mock provider rejected corpus: ") +
                                          e.what());
    }
    const std::string digest = file_digest_hex(corpus_path);
    FineTuneJob job;
    job.job_id = "mockft-" + digest.substr(0, 8);
    job.status = JobStatus::Succeeded;
    job.result_model = "mock-model-" + digest.substr(0, 8);
    job.corpus_digest = digest;

    std::lock_guard lock(mutex_);
    jobs_[job.job_id] = job;
    return job;
}

FineTuneJob MockProvider::poll_job(const std::string& job_id, const ProviderConfig& cfg) {
    (void)cfg;
    std::lock_guard lock(mutex_);
    const auto it = jobs_.find(job_id);
    if (it == jobs_.end()) throw UnknownJobError("unknown fine-tune job id: " + job_id);
    return it->second;
}

EchoOracleProvider::EchoOracleProvider(std::unordered_map<std::string, double> truth_by_id)
    : truth_(std::move(truth_by_id)) {}

EchoOracleProvider::EchoOracleProvider(const Dataset& truth) {
    for (const auto& record : truth.records) {
        if (record.target_hours) truth_.emplace(record.id, *record.target_hours);
    }
}

std::string EchoOracleProvider::complete(const CompletionRequest& request,
                                         const ProviderConfig& cfg) {
    (void)cfg;
    const auto it = truth_.find(request.source_id);
    if (it == truth_.end()) {
        throw InvalidArgumentError("echo-oracle has no truth for source id '" + request.source_id +
                                   "'");
    }
    return "Estimated cost is: " + format_hours(it->second) + " hours";
}

ConstantProvider::ConstantProvider(std::string completion) : completion_(std::move(completion)) {}

std::string ConstantProvider::complete(const CompletionRequest& request,
                                       const ProviderConfig& cfg) {
    (void)request;
    (void)cfg;
    return completion_;
}

ScriptedProvider::ScriptedProvider(std::unordered_map<std::string, std::string> by_id,
                                   std::string fallback)
    : by_id_(std::move(by_id)), fallback_(std::move(fallback)) {}

std::string ScriptedProvider::complete(const CompletionRequest& request,
                                       const ProviderConfig& cfg) {
    (void)cfg;
    const auto it = by_id_.find(request.source_id);
    return it == by_id_.end() ? fallback_ : it->second;
}

std::unique_ptr<Provider> make_provider(const std::string& name, const Dataset* truth) {
    if (name == "http") return std::make_unique<HttpProvider>();
    if (name == "mock-constant") return std::make_unique<ConstantProvider>();
    if (name == "mock-oracle") {
        if (!truth) throw InvalidArgumentError("mock-oracle needs a dataset with true targets");
        return std::make_unique<EchoOracleProvider>(*truth);
    }
    if (name == "mock-scripted") {
        // Every tenth record (by dataset order) answers with non-numeric text.
        if (!truth) throw InvalidArgumentError("mock-scripted needs a dataset for its script");
        std::unordered_map<std::string, std::string> by_id;
        std::size_t i = 0;
        for (const auto& record : truth->records) {
            if (i % 10 == 9) {
                by_id.emplace(record.id, "I cannot give a numeric answer for this project.");
            } else if (record.target_hours) {
                by_id.emplace(record.id,
                              "Estimated cost is: " + format_hours(*record.target_hours) +
                                  " hours");
            }
            ++i;
        }
        return std::make_unique<ScriptedProvider>(std::move(by_id),
                                                  "Estimated cost is: 100.0 hours");
    }
    throw InvalidArgumentError("unknown provider '" + name +
                               "' (expected http, mock-oracle, mock-constant or mock-scripted)");
}

// ---------------------------------------------------------------------------
// HTTP provider

namespace {

httplib::Headers auth_headers(const ProviderConfig& cfg) {
    const std::string key = api_key(cfg);
    if (key.empty()) {
        throw AuthFailureError("environment variable " + cfg.api_key_env_var +
                               " is not set; no API key available");
    }
    return {{"Authorization", "Bearer " + key}};
}

httplib::Client make_client(const ProviderConfig& cfg) {
    if (cfg.base_url.empty()) throw InvalidArgumentError("http provider needs a base_url");
    httplib::Client client(cfg.base_url);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg.timeout);
    const time_t t = std::max<time_t>(1, secs.count());
    client.set_connection_timeout(t, 0);
    client.set_read_timeout(t, 0);
    client.set_write_timeout(t, 0);
    return client;
}

FineTuneJob job_from_json(const std::string& body) {
    const auto parsed = nlohmann::json::parse(body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("job_id")) {
        throw NetworkFailureError("provider returned an unexpected fine-tune response: " + body);
    }
    FineTuneJob job;
    job.job_id = parsed["job_id"].get<std::string>();
    job.status = status_from_string(parsed.value("status", "failed"));
    if (parsed.contains("model") && parsed["model"].is_string()) {
        job.result_model = parsed["model"].get<std::string>();
    }
    if (job.status != JobStatus::Succeeded) job.result_model.reset();
    return job;
}

[[noreturn]] void raise_http_error(int status, const std::string& body, const char* what) {
    if (status == 401 || status == 403) {
        throw AuthFailureError(std::string("provider refused credentials during ") + what);
    }
    if (status == 429) throw RateLimitedError(std::string("provider rate-limited ") + what);
    throw NetworkFailureError(std::string(what) + " failed with HTTP " + std::to_string(status) +
                              ": " + body);
}

}  // namespace

FineTuneJob HttpProvider::submit_finetune(const std::string& corpus_path,
                                          const ProviderConfig& cfg) {
    std::ifstream in(corpus_path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus: " + corpus_path);
    std::ostringstream corpus;
    corpus << in.rdbuf();

    nlohmann::json body;
    body["model"] = cfg.model_name;
    body["corpus"] = corpus.str();

    auto client = make_client(cfg);
    log_debug(cfg, "POST /v1/finetunes model=" + cfg.model_name);
    const auto res = client.Post("/v1/finetunes", auth_headers(cfg), body.dump(),
                                 "application/json");
    if (!res) throw NetworkFailureError("cannot reach provider at " + cfg.base_url);
    log_debug(cfg, "finetune response " + std::to_string(res->status) + ": " + res->body);
    if (res->status == 400 || res->status == 422) {
        throw ProviderRejectedCorpusError("provider rejected corpus: " + res->body);
    }
    if (res->status != 200) raise_http_error(res->status, res->body, "fine-tune submission");
    return job_from_json(res->body);
}

FineTuneJob HttpProvider::poll_job(const std::string& job_id, const ProviderConfig& cfg) {
    auto client = make_client(cfg);
    log_debug(cfg, "GET /v1/finetunes/" + job_id);
    const auto res = client.Get("/v1/finetunes/" + job_id, auth_headers(cfg));
    if (!res) throw NetworkFailureError("cannot reach provider at " + cfg.base_url);
    log_debug(cfg, "poll response " + std::to_string(res->status) + ": " + res->body);
    if (res->status == 404) throw UnknownJobError("unknown fine-tune job id: " + job_id);
    if (res->status != 200) raise_http_error(res->status, res->body, "job poll");
    return job_from_json(res->body);
}

std::string HttpProvider::complete(const CompletionRequest& request, const ProviderConfig& cfg) {
    nlohmann::json body;
    body["model"] = request.model.empty() ? cfg.model_name : request.model;
    body["prompt"] = request.prompt;
    body["temperature"] = cfg.temperature;

    auto client = make_client(cfg);
    log_debug(cfg, "POST /v1/completions id=" + request.source_id);
    const auto res = client.Post("/v1/completions", auth_headers(cfg), body.dump(),
                                 "application/json");
    if (!res) throw NetworkFailureError("cannot reach provider at " + cfg.base_url);
    log_debug(cfg, "completion response " + std::to_string(res->status) + ": " + res->body);
    if (res->status != 200) raise_http_error(res->status, res->body, "completion");

    const auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (!parsed.is_discarded() && parsed.is_object()) {
        if (parsed.contains("completion") && parsed["completion"].is_string()) {
            return parsed["completion"].get<std::string>();
        }
        if (parsed.contains("choices") && parsed["choices"].is_array() &&
            !parsed["choices"].empty() && parsed["choices"][0].contains("text")) {
            return parsed["choices"][0]["text"].get<std::string>();
        }
    }
    throw NetworkFailureError("provider returned an unexpected completion response: " + res->body);
}

// ---------------------------------------------------------------------------
// Module operations

namespace {

/// Runs `action` up to cfg.retry.max_attempts times with exponential backoff
/// on NetworkFailure / RateLimited; auth and corpus errors surface at once.
template <typename F>
auto with_retries(const ProviderConfig& cfg, F&& action) {
    const unsigned attempts = std::max(1u, cfg.retry.max_attempts);
    std::chrono::milliseconds backoff = cfg.retry.base_backoff;
    for (unsigned attempt = 1;; ++attempt) {
        try {
            return action();
        } catch (const RateLimitedError&) {
            if (attempt >= attempts) throw;
        } catch (const NetworkFailureError&) {
            if (attempt >= attempts) throw;
        }
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
    }
}

}  // namespace

FineTuneJob submit_finetune(Provider& provider, const std::string& corpus_path,
                            const ProviderConfig& cfg) {
    const std::string digest = file_digest_hex(corpus_path);  // also checks existence
    FineTuneJob job = with_retries(cfg, [&] { return provider.submit_finetune(corpus_path, cfg); });
    job.corpus_digest = digest;
    return job;
}

FineTuneJob poll_job(Provider& provider, const FineTuneJob& job, const ProviderConfig& cfg) {
    if (job.job_id.empty()) throw InvalidArgumentError("cannot poll a job without an id");
    FineTuneJob refreshed = with_retries(cfg, [&] { return provider.poll_job(job.job_id, cfg); });
    if (refreshed.corpus_digest.empty()) refreshed.corpus_digest = job.corpus_digest;
    return refreshed;
}

Estimate predict(Provider& provider, const std::string& prompt, const std::string& model,
                 const ProviderConfig& cfg, const std::string& source_id) {
    if (model.empty()) throw InvalidArgumentError("predict needs a non-empty model name");
    Estimate estimate;
    estimate.source_id = source_id;
    estimate.raw_completion =
        with_retries(cfg, [&] { return provider.complete({source_id, prompt, model}, cfg); });
    try {
        estimate.predicted_hours = parse_completion(estimate.raw_completion);
        estimate.parse_ok = true;
    } catch (const UnparsableCompletionError& e) {
        estimate.parse_ok = false;
        estimate.note = e.what();
    }
    return estimate;
}

std::vector<Estimate> batch_predict(Provider& provider,
                                    const std::vector<std::pair<std::string, std::string>>& id_prompts,
                                    const std::string& model, const ProviderConfig& cfg) {
    std::vector<Estimate> results(id_prompts.size());
    if (id_prompts.empty()) return results;

    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, cfg.max_concurrent_requests), id_prompts.size());
    std::atomic<std::size_t> next{0};

    const auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= id_prompts.size()) return;
            const auto& [id, prompt] = id_prompts[i];
            try {
                results[i] = predict(provider, prompt, model, cfg, id);
            } catch (const std::exception& e) {
                results[i] = Estimate{id, std::nullopt, "", false, e.what()};
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return results;
}

}  // namespace effortcast
