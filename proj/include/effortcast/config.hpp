#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "effortcast/baselines.hpp"
#include "effortcast/dataset.hpp"
#include "effortcast/llmclient.hpp"
#include "effortcast/promptgen.hpp"

namespace effortcast {

/// Flat key-value configuration with INI-style sections. Keys are addressed
/// as "section.key". Values may be double-quoted to keep surrounding
/// whitespace; full-line comments start with '#' or ';'.
class Config {
  public:
    Config() = default;

    static Config load(const std::string& path);
    static Config parse(std::istream& in, const std::string& origin = "<config>");

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    /// Overlays another config; its values win on key collisions.
    void merge(const Config& other) {
        for (const auto& [key, value] : other.values_) values_[key] = value;
    }

    const std::map<std::string, std::string>& values() const { return values_; }

    /// Digest over the canonical "key=value" serialization.
    std::string digest() const;

  private:
    std::map<std::string, std::string> values_;
};

/// Schema from [schema] features = a, b, ... plus one [feature.<name>]
/// section per feature (kind, column, clause, joiner). Without a [schema]
/// section the built-in ISBSG schema is returned.
std::vector<FeatureSpec> schema_from_config(const Config& config);

/// Template for the given schema with [template] preamble / separator /
/// completion_prefix / completion_suffix / corpus_suffix overrides.
PromptTemplate template_from_config(const Config& config, const std::vector<FeatureSpec>& schema);

CsvLoadOptions load_options_from_config(const Config& config);
SplitSpec split_from_config(const Config& config);
ProviderConfig provider_from_config(const Config& config);
baselines::Hyperparams hyperparams_from_config(const Config& config,
                                               baselines::EstimatorKind kind);

}  // namespace effortcast
