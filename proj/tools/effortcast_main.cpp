// effortcast: software project cost estimation pipeline.
//
// Subcommands cover the whole flow: ingest raw CSVs, rank features by
// correlation, stratify by completeness, split, generate fine-tune corpora,
// submit fine-tunes, run completions, and score everything with MAE/RMSE.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "effortcast/baselines.hpp"
#include "effortcast/config.hpp"
#include "effortcast/correlate.hpp"
#include "effortcast/dataset.hpp"
#include "effortcast/eval.hpp"
#include "effortcast/llmclient.hpp"
#include "effortcast/manifest.hpp"
#include "effortcast/promptgen.hpp"
#include "effortcast/strutil.hpp"

namespace fs = std::filesystem;
using namespace effortcast;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string schema_path;
    std::vector<std::string> overrides;
};

Config load_config(const CommonOpts& opts) {
    Config config;
    if (!opts.config_path.empty()) config = Config::load(opts.config_path);
    if (!opts.schema_path.empty()) config.merge(Config::load(opts.schema_path));
    for (const auto& assignment : opts.overrides) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InvalidArgumentError("--set expects section.key=value, got '" + assignment +
                                       "'");
        }
        config.set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
    }
    return config;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "configuration file (INI-style sections)");
    cmd->add_option("--schema", opts.schema_path,
                    "schema configuration file overlaying --config");
    cmd->add_option("--set", opts.overrides,
                    "override any config value (section.key=value, repeatable)");
}

RunManifest start_manifest(const std::string& subcommand, const Config& config) {
    RunManifest manifest;
    manifest.timestamp = now_iso8601_utc();
    manifest.subcommand = subcommand;
    manifest.config_digest = config.digest();
    return manifest;
}

void finish_manifest(RunManifest& manifest, const std::string& path) {
    write_manifest(manifest, path);
    std::cout << "manifest: " << path << "\n";
}

std::string manifest_path_for(const std::string& primary_output) {
    return primary_output + ".manifest.json";
}

LoadResult load_dataset(const std::string& input, const Config& config) {
    const auto schema = schema_from_config(config);
    const auto options = load_options_from_config(config);
    return load_csv(input, schema, options);
}

void write_job_json(const FineTuneJob& job, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["job_id"] = job.job_id;
    doc["status"] = to_string(job.status);
    doc["model"] = job.result_model ? *job.result_model : "";
    doc["corpus_digest"] = job.corpus_digest;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
}

std::string model_from_job_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open job file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.contains("model") || !doc["model"].is_string()) {
        throw InvalidArgumentError("job file " + path + " has no model field");
    }
    return doc["model"].get<std::string>();
}

// predictions CSV: id,actual,predicted,parse_ok,raw_completion,note
void write_predictions_csv(const std::vector<Estimate>& estimates, const Dataset& test,
                           const std::string& path) {
    std::map<std::string, double> truth;
    for (const auto& record : test.records) {
        if (record.target_hours) truth.emplace(record.id, *record.target_hours);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "id,actual,predicted,parse_ok,raw_completion,note\n";
    for (const auto& e : estimates) {
        const auto it = truth.find(e.source_id);
        out << csv_escape(e.source_id) << ','
            << (it != truth.end() ? format_decimal(it->second) : std::string()) << ','
            << (e.predicted_hours ? format_decimal(*e.predicted_hours) : std::string()) << ','
            << (e.parse_ok ? 1 : 0) << ',' << csv_escape(e.raw_completion) << ','
            << csv_escape(e.note) << '\n';
    }
    if (!out) throw IoError("failed while writing: " + path);
}

PredictionSet read_predictions_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open predictions: " + path);
    const auto rows = read_csv_rows(in);
    if (rows.empty()) throw MalformedCsvError("predictions file " + path + " has no header");

    PredictionSet set;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() < 6) {
            throw MalformedCsvError("predictions row " + std::to_string(r + 1) +
                                    " needs id,actual,predicted,parse_ok,raw_completion,note");
        }
        const bool parse_ok = trim(cells[3]) == "1";
        const auto actual = parse_double(cells[1]);
        const auto predicted = parse_double(cells[2]);
        if (parse_ok && actual && predicted) {
            set.pairs.push_back({cells[0], *actual, *predicted});
        } else {
            std::string note = trim(cells[5]);
            if (note.empty()) {
                note = parse_ok && !actual ? "no true target" : "unparsable completion";
            }
            set.excluded.push_back({cells[0], note});
        }
    }
    return set;
}

std::vector<EvaluationReport> read_metrics_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open metrics: " + path);
    const auto rows = read_csv_rows(in);
    std::vector<EvaluationReport> reports;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() < 7) {
            throw MalformedCsvError("metrics row " + std::to_string(r + 1) +
                                    " needs estimator,dataset,n,mae,rmse,seed,excluded");
        }
        EvaluationReport report;
        report.estimator = cells[0];
        report.dataset = cells[1];
        report.n = static_cast<std::size_t>(parse_double(cells[2]).value_or(0));
        report.mae_hours = parse_double(cells[3]).value_or(0);
        report.rmse_hours = parse_double(cells[4]).value_or(0);
        report.seed = static_cast<std::uint64_t>(parse_double(cells[5]).value_or(0));
        report.excluded = static_cast<std::size_t>(parse_double(cells[6]).value_or(0));
        reports.push_back(std::move(report));
    }
    return reports;
}

/// Short reference-table id for a display name ("KNN Regression" -> "knn").
std::string reference_id(const std::string& estimator_name) {
    const std::string lower = to_lower(estimator_name);
    if (lower.find("knn") != std::string::npos) return "knn";
    if (lower.find("linear") != std::string::npos) return "linreg";
    if (lower.find("support vector") != std::string::npos || lower == "svm") return "svm";
    if (lower.find("decision tree") != std::string::npos || lower == "dt") return "dt";
    if (lower.find("random forest") != std::string::npos || lower == "rf") return "rf";
    if (lower.find("ada boost") != std::string::npos || lower.find("adaboost") != std::string::npos)
        return "abreg";
    if (lower.find("extreme learning") != std::string::npos || lower == "elm") return "elm";
    if (lower.find("perceptron") != std::string::npos || lower == "mlp") return "mlp";
    if (lower.find("llm") != std::string::npos) return "llm";
    return lower;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"effortcast: LLM and baseline cost estimation pipeline"};
    app.require_subcommand(1);

    // --- ingest ---
    CommonOpts ingest_common;
    std::string ingest_input, ingest_out, ingest_target, ingest_provenance;
    bool ingest_allow_absent = false;
    auto* ingest = app.add_subcommand("ingest", "load a raw CSV and write the canonical form");
    add_common(ingest, ingest_common);
    ingest->add_option("--input", ingest_input, "raw CSV file")->required();
    ingest->add_option("--out", ingest_out, "canonical CSV output")->required();
    ingest->add_option("--target", ingest_target, "target column name");
    ingest->add_option("--provenance", ingest_provenance, "dataset provenance label");
    ingest->add_flag("--allow-absent-columns", ingest_allow_absent,
                     "schema features missing from the header load as Missing");

    // --- correlate ---
    CommonOpts corr_common;
    std::string corr_input, corr_out;
    std::size_t corr_top = 1000;
    auto* correlate_cmd =
        app.add_subcommand("correlate", "rank features by correlation with the target");
    add_common(correlate_cmd, corr_common);
    correlate_cmd->add_option("--input", corr_input, "canonical CSV file")->required();
    correlate_cmd->add_option("--out", corr_out, "correlation report CSV")->required();
    correlate_cmd->add_option("--top", corr_top, "keep the k strongest features");

    // --- stratify ---
    CommonOpts strat_common;
    std::string strat_input, strat_out;
    std::size_t strat_max_missing = 0;
    auto* stratify_cmd =
        app.add_subcommand("stratify", "keep records with at most N missing features");
    add_common(stratify_cmd, strat_common);
    stratify_cmd->add_option("--input", strat_input, "canonical CSV file")->required();
    stratify_cmd->add_option("--max-missing", strat_max_missing, "completeness tier bound")
        ->required();
    stratify_cmd->add_option("--out", strat_out, "subset CSV output")->required();

    // --- split ---
    CommonOpts split_common;
    std::string split_input, split_out_dir;
    double split_train = 0.8, split_val = 0.1, split_test = 0.1;
    std::uint64_t split_seed = 42;
    int split_pin_max_missing = -1;
    double split_pin_train = 0.5;
    auto* split_cmd = app.add_subcommand("split", "write train/val/test partitions");
    add_common(split_cmd, split_common);
    split_cmd->add_option("--input", split_input, "canonical CSV file")->required();
    split_cmd->add_option("--out-dir", split_out_dir, "output directory")->required();
    split_cmd->add_option("--train", split_train, "train fraction");
    split_cmd->add_option("--val", split_val, "validation fraction");
    split_cmd->add_option("--test", split_test, "test fraction");
    split_cmd->add_option("--seed", split_seed, "shuffle seed");
    split_cmd->add_option("--pin-max-missing", split_pin_max_missing,
                          "pin the tier with at most N blanks to train/test only");
    split_cmd->add_option("--pin-train-frac", split_pin_train,
                          "train fraction within the pinned tier");

    // --- gen-prompts ---
    CommonOpts gen_common;
    std::string gen_input, gen_out;
    auto* gen_cmd = app.add_subcommand("gen-prompts", "emit a prompt/completion JSONL corpus");
    add_common(gen_cmd, gen_common);
    gen_cmd->add_option("--input", gen_input, "canonical CSV file")->required();
    gen_cmd->add_option("--out", gen_out, "JSONL corpus output")->required();

    // --- finetune ---
    CommonOpts ft_common;
    std::string ft_corpus, ft_provider = "mock", ft_out;
    auto* ft_cmd = app.add_subcommand("finetune", "submit a fine-tune job and record its handle");
    add_common(ft_cmd, ft_common);
    ft_cmd->add_option("--corpus", ft_corpus, "JSONL corpus file")->required();
    ft_cmd->add_option("--provider", ft_provider, "mock | http");
    ft_cmd->add_option("--out", ft_out, "job JSON output")->required();

    // --- predict ---
    CommonOpts pred_common;
    std::string pred_input, pred_provider = "mock-oracle", pred_model, pred_job, pred_out;
    auto* pred_cmd = app.add_subcommand("predict", "run completions over a test set");
    add_common(pred_cmd, pred_common);
    pred_cmd->add_option("--input", pred_input, "canonical CSV test set")->required();
    pred_cmd->add_option("--provider", pred_provider,
                         "http | mock-oracle | mock-constant | mock-scripted");
    pred_cmd->add_option("--model", pred_model, "model id (or use --job)");
    pred_cmd->add_option("--job", pred_job, "job JSON from finetune, supplies the model id");
    pred_cmd->add_option("--out", pred_out, "predictions CSV output")->required();

    // --- evaluate ---
    CommonOpts eval_common;
    std::string eval_predictions, eval_estimators, eval_input, eval_out, eval_scatter_dir;
    std::string eval_reference, eval_name = "LLM", eval_dataset_label;
    double eval_train = 0.8, eval_val = 0.1, eval_test = 0.1;
    std::uint64_t eval_seed = 42;
    auto* eval_cmd = app.add_subcommand(
        "evaluate", "score predictions or fit baseline estimators and score them");
    add_common(eval_cmd, eval_common);
    eval_cmd->add_option("--predictions", eval_predictions,
                         "predictions CSV from `predict` (LLM scoring mode)");
    eval_cmd->add_option("--estimator-name", eval_name, "estimator label for --predictions");
    eval_cmd->add_option("--dataset-label", eval_dataset_label, "dataset label for --predictions");
    eval_cmd->add_option("--estimators", eval_estimators,
                         "comma list: knn,linreg,svm,dt,rf,abreg,elm,mlp");
    eval_cmd->add_option("--dataset,--input", eval_input, "canonical CSV for baseline mode");
    eval_cmd->add_option("--train", eval_train, "train fraction");
    eval_cmd->add_option("--val", eval_val, "validation fraction");
    eval_cmd->add_option("--test", eval_test, "test fraction");
    eval_cmd->add_option("--seed", eval_seed, "split + training seed");
    eval_cmd->add_option("--out", eval_out, "metrics CSV output")->required();
    eval_cmd->add_option("--scatter-dir", eval_scatter_dir,
                         "write per-estimator scatter CSVs (actual, predicted, kept flag)");
    eval_cmd->add_option("--reference", eval_reference,
                         "paper reference table CSV for side-by-side display");

    // --- report ---
    CommonOpts rep_common;
    std::vector<std::string> rep_metrics;
    std::string rep_reference, rep_out;
    auto* rep_cmd = app.add_subcommand("report", "combine metrics CSVs into comparison tables");
    add_common(rep_cmd, rep_common);
    rep_cmd->add_option("--metrics", rep_metrics, "metrics CSV file(s)")->required();
    rep_cmd->add_option("--reference", rep_reference, "paper reference table CSV");
    rep_cmd->add_option("--out", rep_out, "report output (plain text / markdown)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(ingest)) {
            Config config = load_config(ingest_common);
            if (!ingest_target.empty()) config.set("dataset.target_column", ingest_target);
            if (!ingest_provenance.empty()) config.set("dataset.provenance", ingest_provenance);
            if (ingest_allow_absent) config.set("dataset.allow_absent_columns", "true");

            const LoadResult loaded = load_dataset(ingest_input, config);
            write_csv(loaded.dataset, ingest_out);
            std::cout << "loaded " << loaded.dataset.size() << " records from " << ingest_input
                      << " (" << loaded.rows_dropped_bad_target
                      << " dropped for missing/non-positive target)\n";

            RunManifest manifest = start_manifest("ingest", config);
            manifest.input_digests.emplace_back(ingest_input, file_digest_hex(ingest_input));
            manifest.output_paths.push_back(ingest_out);
            finish_manifest(manifest, manifest_path_for(ingest_out));
        } else if (app.got_subcommand(correlate_cmd)) {
            const Config config = load_config(corr_common);
            const LoadResult loaded = load_dataset(corr_input, config);
            const CorrelationReport report =
                rank_features(loaded.dataset, loaded.dataset.target_name, corr_top);
            write_correlation_csv(report, corr_out);
            for (const auto& entry : report.entries) {
                std::cout << entry.feature << "  r="
                          << (entry.r ? format_decimal(*entry.r) : "undefined")
                          << "  n=" << entry.n_pairs << "\n";
            }

            RunManifest manifest = start_manifest("correlate", config);
            manifest.input_digests.emplace_back(corr_input, file_digest_hex(corr_input));
            manifest.output_paths.push_back(corr_out);
            finish_manifest(manifest, manifest_path_for(corr_out));
        } else if (app.got_subcommand(stratify_cmd)) {
            const Config config = load_config(strat_common);
            const LoadResult loaded = load_dataset(strat_input, config);
            const Dataset subset =
                stratify_by_completeness(loaded.dataset, {strat_max_missing});
            write_csv(subset, strat_out);
            std::cout << "tier max_missing=" << strat_max_missing << ": " << subset.size()
                      << " of " << loaded.dataset.size() << " records\n";

            RunManifest manifest = start_manifest("stratify", config);
            manifest.input_digests.emplace_back(strat_input, file_digest_hex(strat_input));
            manifest.output_paths.push_back(strat_out);
            finish_manifest(manifest, manifest_path_for(strat_out));
        } else if (app.got_subcommand(split_cmd)) {
            const Config config = load_config(split_common);
            const LoadResult loaded = load_dataset(split_input, config);

            // Config [split] section supplies defaults; flags win.
            SplitSpec spec = split_from_config(config);
            if (split_cmd->count("--train")) spec.train_frac = split_train;
            if (split_cmd->count("--val")) spec.val_frac = split_val;
            if (split_cmd->count("--test")) spec.test_frac = split_test;
            if (split_cmd->count("--seed")) spec.seed = split_seed;
            if (split_pin_max_missing >= 0) {
                spec.pinned = PinnedSplit{{static_cast<std::size_t>(split_pin_max_missing)},
                                          split_pin_train};
            }
            const SplitResult parts = split(loaded.dataset, spec);

            fs::create_directories(split_out_dir);
            const std::string train_path = (fs::path(split_out_dir) / "train.csv").string();
            const std::string val_path = (fs::path(split_out_dir) / "val.csv").string();
            const std::string test_path = (fs::path(split_out_dir) / "test.csv").string();
            write_csv(parts.train, train_path);
            write_csv(parts.val, val_path);
            write_csv(parts.test, test_path);
            std::cout << "split " << loaded.dataset.size() << " -> train " << parts.train.size()
                      << ", val " << parts.val.size() << ", test " << parts.test.size() << "\n";

            RunManifest manifest = start_manifest("split", config);
            manifest.input_digests.emplace_back(split_input, file_digest_hex(split_input));
            manifest.seeds.push_back(spec.seed);
            manifest.output_paths = {train_path, val_path, test_path};
            finish_manifest(manifest,
                            (fs::path(split_out_dir) / "split.manifest.json").string());
        } else if (app.got_subcommand(gen_cmd)) {
            const Config config = load_config(gen_common);
            const LoadResult loaded = load_dataset(gen_input, config);
            const PromptTemplate tmpl = template_from_config(config, loaded.dataset.schema);
            const std::size_t written = emit_corpus(loaded.dataset, tmpl, gen_out);
            std::cout << "wrote " << written << " prompt/completion pairs to " << gen_out << "\n";

            RunManifest manifest = start_manifest("gen-prompts", config);
            manifest.input_digests.emplace_back(gen_input, file_digest_hex(gen_input));
            manifest.output_paths.push_back(gen_out);
            finish_manifest(manifest, manifest_path_for(gen_out));
        } else if (app.got_subcommand(ft_cmd)) {
            const Config config = load_config(ft_common);
            const ProviderConfig provider_cfg = provider_from_config(config);
            const std::string provider_name = ft_provider == "mock" ? "mock-constant" : ft_provider;
            const auto provider = make_provider(provider_name);
            FineTuneJob job = submit_finetune(*provider, ft_corpus, provider_cfg);
            job = poll_job(*provider, job, provider_cfg);
            write_job_json(job, ft_out);
            std::cout << "fine-tune job " << job.job_id << " status " << to_string(job.status)
                      << (job.result_model ? " model " + *job.result_model : std::string())
                      << "\n";

            RunManifest manifest = start_manifest("finetune", config);
            manifest.input_digests.emplace_back(ft_corpus, file_digest_hex(ft_corpus));
            manifest.output_paths.push_back(ft_out);
            finish_manifest(manifest, manifest_path_for(ft_out));
        } else if (app.got_subcommand(pred_cmd)) {
            const Config config = load_config(pred_common);
            const ProviderConfig provider_cfg = provider_from_config(config);
            const LoadResult loaded = load_dataset(pred_input, config);
            const PromptTemplate tmpl = template_from_config(config, loaded.dataset.schema);

            std::string model = pred_model;
            if (model.empty() && !pred_job.empty()) model = model_from_job_file(pred_job);
            if (model.empty()) model = provider_cfg.model_name;

            const auto provider = make_provider(pred_provider, &loaded.dataset);
            std::vector<std::pair<std::string, std::string>> prompts;
            prompts.reserve(loaded.dataset.size());
            for (const auto& record : loaded.dataset.records) {
                prompts.emplace_back(record.id, render_prompt(record, tmpl));
            }
            const auto estimates = batch_predict(*provider, prompts, model, provider_cfg);
            write_predictions_csv(estimates, loaded.dataset, pred_out);

            std::size_t failed = 0;
            for (const auto& e : estimates) {
                if (!e.parse_ok) ++failed;
            }
            std::cout << "predicted " << estimates.size() << " records (" << failed
                      << " unparsable)\n";

            RunManifest manifest = start_manifest("predict", config);
            manifest.input_digests.emplace_back(pred_input, file_digest_hex(pred_input));
            manifest.output_paths.push_back(pred_out);
            finish_manifest(manifest, manifest_path_for(pred_out));
        } else if (app.got_subcommand(eval_cmd)) {
            const Config config = load_config(eval_common);
            std::vector<ReferenceValue> references;
            if (!eval_reference.empty()) references = load_reference_table(eval_reference);

            std::vector<EvaluationReport> reports;
            RunManifest manifest = start_manifest("evaluate", config);

            if (!eval_predictions.empty()) {
                const PredictionSet set = read_predictions_csv(eval_predictions);
                EvaluationReport report = evaluate(
                    eval_name, set,
                    eval_dataset_label.empty()
                        ? Provenance::parse(config.get_or("dataset.provenance", "other")).str()
                        : eval_dataset_label,
                    eval_seed, "provider predictions");
                attach_references(report, reference_id(eval_name), references);
                reports.push_back(report);
                manifest.input_digests.emplace_back(eval_predictions,
                                                    file_digest_hex(eval_predictions));

                if (!eval_scatter_dir.empty() && set.pairs.size() >= 4) {
                    fs::create_directories(eval_scatter_dir);
                    const auto outliers = remove_outliers(set);
                    const std::string scatter_path =
                        (fs::path(eval_scatter_dir) / (reference_id(eval_name) + "_scatter.csv"))
                            .string();
                    write_scatter_csv(set, outliers, scatter_path);
                    manifest.output_paths.push_back(scatter_path);
                }
            } else {
                if (eval_estimators.empty() || eval_input.empty()) {
                    throw InvalidArgumentError(
                        "evaluate needs either --predictions or --estimators with --dataset");
                }
                const LoadResult loaded = load_dataset(eval_input, config);
                SplitSpec spec = split_from_config(config);
                spec.pinned.reset();  // baseline scoring never pins a tier
                if (eval_cmd->count("--train")) spec.train_frac = eval_train;
                if (eval_cmd->count("--val")) spec.val_frac = eval_val;
                if (eval_cmd->count("--test")) spec.test_frac = eval_test;
                if (eval_cmd->count("--seed")) spec.seed = eval_seed;
                eval_seed = spec.seed;
                const SplitResult parts = split(loaded.dataset, spec);
                manifest.input_digests.emplace_back(eval_input, file_digest_hex(eval_input));

                for (const auto& name : split(std::string_view(eval_estimators), ',')) {
                    const auto kind = baselines::estimator_kind_from_string(name);
                    baselines::Hyperparams params = hyperparams_from_config(config, kind);
                    params.seed = eval_seed;
                    const baselines::TrainedModel model = baselines::fit_model(parts.train, params);
                    const PredictionSet set = collect_predictions(model, parts.test);
                    EvaluationReport report =
                        evaluate(model.kind, set, loaded.dataset.provenance.str(), eval_seed,
                                 params.describe());
                    attach_references(report, baselines::estimator_id(kind), references);
                    reports.push_back(report);

                    if (!eval_scatter_dir.empty() && set.pairs.size() >= 4) {
                        fs::create_directories(eval_scatter_dir);
                        const auto outliers = remove_outliers(set);
                        const std::string scatter_path =
                            (fs::path(eval_scatter_dir) /
                             (std::string(baselines::estimator_id(kind)) + "_scatter.csv"))
                                .string();
                        write_scatter_csv(set, outliers, scatter_path);
                        manifest.output_paths.push_back(scatter_path);
                    }
                }
            }

            write_metrics_csv(reports, eval_out);
            std::cout << comparison_table(reports, "rmse") << "\n"
                      << comparison_table(reports, "mae");
            manifest.seeds.push_back(eval_seed);
            manifest.output_paths.push_back(eval_out);
            finish_manifest(manifest, manifest_path_for(eval_out));
        } else if (app.got_subcommand(rep_cmd)) {
            const Config config = load_config(rep_common);
            std::vector<ReferenceValue> references;
            if (!rep_reference.empty()) references = load_reference_table(rep_reference);

            std::vector<EvaluationReport> reports;
            for (const auto& path : rep_metrics) {
                for (auto& report : read_metrics_csv(path)) {
                    attach_references(report, reference_id(report.estimator), references);
                    reports.push_back(std::move(report));
                }
            }

            std::ofstream out(rep_out, std::ios::binary);
            if (!out) throw IoError("cannot open for writing: " + rep_out);
            out << comparison_table(reports, "rmse") << "\n"
                << comparison_table(reports, "mae") << "\n";
            if (!references.empty()) {
                out << "Paper-reported reference values (not locally reproduced):\n";
                for (const auto& ref : references) {
                    out << "  " << ref.metric << " " << ref.estimator << " / " << ref.dataset
                        << " = " << format_decimal(ref.value) << "\n";
                }
            }
            std::cout << "wrote " << rep_out << "\n";

            RunManifest manifest = start_manifest("report", config);
            for (const auto& path : rep_metrics) {
                manifest.input_digests.emplace_back(path, file_digest_hex(path));
            }
            manifest.output_paths.push_back(rep_out);
            finish_manifest(manifest, manifest_path_for(rep_out));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
