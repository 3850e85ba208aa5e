#include "effortcast/config.hpp"

#include <fstream>
#include <sstream>

#include "effortcast/strutil.hpp"

namespace effortcast {

Config Config::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse(in, path);
}

Config Config::parse(std::istream& in, const std::string& origin) {
    Config config;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']') {
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": unterminated section header");
            }
            section = trim(stripped.substr(1, stripped.size() - 2));
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);  // quoted to keep whitespace
        }
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        }
        config.values_[section.empty() ? key : section + "." + key] = value;
    }
    return config;
}

std::optional<std::string> Config::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
    const auto v = get(key);
    return v ? *v : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    const auto parsed = parse_double(*v);
    if (!parsed) throw ConfigError("config key '" + key + "' is not a number: " + *v);
    return *parsed;
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
    const double v = get_double(key, static_cast<double>(fallback));
    if (v < 0.0) throw ConfigError("config key '" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    try {
        return std::stoull(*v);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not an unsigned integer: " + *v);
    }
}

std::string Config::digest() const {
    std::ostringstream canonical;
    for (const auto& [key, value] : values_) canonical << key << '=' << value << '\n';
    return hex64(fnv1a64(canonical.str()));
}

std::vector<FeatureSpec> schema_from_config(const Config& config) {
    const auto listed = config.get("schema.features");
    if (!listed) return isbsg_schema();

    std::vector<FeatureSpec> schema;
    for (const auto& raw : split(*listed, ',')) {
        const std::string name = trim(raw);
        if (name.empty()) continue;
        FeatureSpec spec;
        spec.name = name;
        const std::string prefix = "feature." + name + ".";
        const std::string kind = to_lower(config.get_or(prefix + "kind", "numeric"));
        if (kind == "numeric") spec.kind = FeatureKind::Numeric;
        else if (kind == "categorical") spec.kind = FeatureKind::Categorical;
        else throw ConfigError("feature '" + name + "' has unknown kind '" + kind + "'");
        spec.csv_column = config.get_or(prefix + "column", name);
        spec.clause_template = config.get_or(prefix + "clause", "");
        spec.clause_joiner = config.get_or(prefix + "joiner", "");
        schema.push_back(std::move(spec));
    }
    if (schema.empty()) throw ConfigError("[schema] features lists no feature names");
    return schema;
}

PromptTemplate template_from_config(const Config& config,
                                    const std::vector<FeatureSpec>& schema) {
    PromptTemplate tmpl = prompt_template_from_schema(schema);
    if (const auto v = config.get("template.preamble")) tmpl.preamble = *v;
    if (const auto v = config.get("template.separator")) tmpl.separator = *v;
    if (const auto v = config.get("template.completion_prefix")) tmpl.completion_prefix = *v;
    if (const auto v = config.get("template.completion_suffix")) tmpl.completion_suffix = *v;
    if (const auto v = config.get("template.corpus_suffix")) tmpl.corpus_suffix = *v;
    if (const auto v = config.get("template.missing_text")) tmpl.missing_text = *v;
    return tmpl;
}

CsvLoadOptions load_options_from_config(const Config& config) {
    CsvLoadOptions options;
    options.target_column = config.get_or("dataset.target_column", "Normalized Work Effort");
    options.id_column = config.get_or("dataset.id_column", "");
    options.provenance = Provenance::parse(config.get_or("dataset.provenance", "other"));
    if (const auto v = config.get("dataset.missing_sentinels")) {
        options.missing_sentinels.clear();
        options.missing_sentinels.push_back("");  // blanks are always missing
        for (const auto& s : split(*v, ',')) {
            const std::string sentinel = trim(s);
            if (!sentinel.empty()) options.missing_sentinels.push_back(sentinel);
        }
    }
    options.allow_absent_columns = config.get_or("dataset.allow_absent_columns", "false") == "true";
    return options;
}

SplitSpec split_from_config(const Config& config) {
    SplitSpec spec;
    spec.train_frac = config.get_double("split.train", spec.train_frac);
    spec.val_frac = config.get_double("split.val", spec.val_frac);
    spec.test_frac = config.get_double("split.test", spec.test_frac);
    spec.seed = config.get_u64("split.seed", spec.seed);
    if (config.has("split.pin_max_missing")) {
        PinnedSplit pinned;
        pinned.tier.max_missing = config.get_size("split.pin_max_missing", 0);
        pinned.train_frac_within_tier = config.get_double("split.pin_train_frac", 0.5);
        spec.pinned = pinned;
    }
    return spec;
}

ProviderConfig provider_from_config(const Config& config) {
    ProviderConfig provider;
    provider.base_url = config.get_or("provider.base_url", "");
    provider.model_name = config.get_or("provider.model", provider.model_name);
    provider.api_key_env_var = config.get_or("provider.api_key_env_var", provider.api_key_env_var);
    provider.timeout =
        std::chrono::milliseconds(config.get_u64("provider.timeout_ms", 30000));
    provider.max_concurrent_requests = static_cast<unsigned>(
        std::max<std::size_t>(1, config.get_size("provider.max_concurrent_requests", 4)));
    provider.retry.max_attempts = static_cast<unsigned>(
        std::max<std::size_t>(1, config.get_size("provider.max_attempts", 3)));
    provider.retry.base_backoff =
        std::chrono::milliseconds(config.get_u64("provider.base_backoff_ms", 250));
    provider.temperature = config.get_double("provider.temperature", 0.0);
    return provider;
}

baselines::Hyperparams hyperparams_from_config(const Config& config,
                                               baselines::EstimatorKind kind) {
    using baselines::Activation;
    baselines::Hyperparams params;
    params.kind = kind;
    params.seed = config.get_u64("hyperparams.seed", params.seed);
    params.knn_k = config.get_size("hyperparams.knn.k", params.knn_k);
    params.ridge_lambda = config.get_double("hyperparams.linreg.lambda", params.ridge_lambda);
    params.svr_c = config.get_double("hyperparams.svm.c", params.svr_c);
    params.svr_epsilon = config.get_double("hyperparams.svm.epsilon", params.svr_epsilon);
    params.svr_epochs = config.get_size("hyperparams.svm.epochs", params.svr_epochs);
    params.svr_step = config.get_double("hyperparams.svm.step", params.svr_step);
    params.tree_max_depth = config.get_size("hyperparams.dt.max_depth", params.tree_max_depth);
    params.tree_min_leaf = config.get_size("hyperparams.dt.min_leaf", params.tree_min_leaf);
    params.forest_trees = config.get_size("hyperparams.rf.n_trees", params.forest_trees);
    params.forest_subsample = config.get_double("hyperparams.rf.subsample", params.forest_subsample);
    params.forest_feature_frac =
        config.get_double("hyperparams.rf.feature_frac", params.forest_feature_frac);
    params.ab_rounds = config.get_size("hyperparams.abreg.n_rounds", params.ab_rounds);
    params.ab_base_depth = config.get_size("hyperparams.abreg.base_max_depth", params.ab_base_depth);
    params.elm_hidden = config.get_size("hyperparams.elm.n_hidden", params.elm_hidden);
    const std::string activation = to_lower(config.get_or("hyperparams.elm.activation", "sigmoid"));
    if (activation == "sigmoid") params.elm_activation = Activation::Sigmoid;
    else if (activation == "tanh") params.elm_activation = Activation::Tanh;
    else if (activation == "relu") params.elm_activation = Activation::Relu;
    else throw ConfigError("unknown elm activation '" + activation + "'");
    params.mlp_hidden = config.get_size("hyperparams.mlp.n_hidden", params.mlp_hidden);
    params.mlp_epochs = config.get_size("hyperparams.mlp.epochs", params.mlp_epochs);
    params.mlp_step = config.get_double("hyperparams.mlp.step", params.mlp_step);
    return params;
}

}  // namespace effortcast
