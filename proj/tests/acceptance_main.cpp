// Acceptance suite: every release criterion in one binary, one PASS/FAIL
// line each. Exits non-zero if any criterion fails.
//
// Usage: effortcast_acceptance <path-to-effortcast-cli>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "effortcast/baselines.hpp"
#include "effortcast/config.hpp"
#include "effortcast/dataset.hpp"
#include "effortcast/eval.hpp"
#include "effortcast/promptgen.hpp"
#include "effortcast/rng.hpp"
#include "effortcast/strutil.hpp"

namespace fs = std::filesystem;
using namespace effortcast;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kApiKeySentinel = "sk-test-secret-98765-do-not-leak";

std::string g_cli;
fs::path g_work;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string src(const std::string& relative) {
    return std::string(EFFORTCAST_SOURCE_DIR) + "/" + relative;
}

/// Runs the CLI, appending stdout+stderr to a log inside the workspace (the
/// secret-hygiene scan reads those logs too).
void run_cli(const std::string& args, const std::string& log_name = "cli.log") {
    const std::string log = (g_work / log_name).string();
    const std::string command = g_cli + " " + args + " >> " + log + " 2>&1";
    const int status = std::system(command.c_str());
    const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    require(exit_code == 0,
            "CLI failed (exit " + std::to_string(exit_code) + "): " + args);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct MetricsRow {
    double mae = 0.0;
    double rmse = 0.0;
    std::size_t excluded = 0;
};

MetricsRow first_metrics_row(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read metrics " + path);
    const auto rows = read_csv_rows(in);
    require(rows.size() >= 2, "metrics file has no data row: " + path);
    MetricsRow row;
    row.mae = *parse_double(rows[1][3]);
    row.rmse = *parse_double(rows[1][4]);
    row.excluded = static_cast<std::size_t>(*parse_double(rows[1][6]));
    return row;
}

// --- fixtures shared by several criteria ---

Dataset planted_100_fixture(std::vector<std::size_t>* counts_out) {
    // Ten numeric features; per-record blank counts planted as:
    // {0:10, 1:17, 2:17, 3:16, 4:13, 5:12, 6:4, 7:4, 8:3, 9:2, 10:2}
    // so the <=3 tier holds 60 records and the <=5 tier 85.
    const std::vector<std::size_t> counts = {10, 17, 17, 16, 13, 12, 4, 4, 3, 2, 2};
    Dataset ds;
    for (int f = 0; f < 10; ++f) {
        ds.schema.push_back({"f" + std::to_string(f), FeatureKind::Numeric, "", "", ""});
    }
    Rng rng(424242);
    std::size_t id = 0;
    for (std::size_t missing = 0; missing < counts.size(); ++missing) {
        for (std::size_t c = 0; c < counts[missing]; ++c) {
            ProjectRecord record;
            record.id = "p" + std::to_string(id++);
            record.target_hours = 50.0 + rng.uniform(0.0, 100.0);
            for (std::size_t f = 0; f < 10; ++f) {
                record.features.emplace("f" + std::to_string(f),
                                        f < 10 - missing
                                            ? FeatureValue::numeric(rng.uniform(0.0, 10.0))
                                            : FeatureValue::missing());
            }
            ds.records.push_back(std::move(record));
        }
    }
    if (counts_out) *counts_out = counts;
    return ds;
}

std::vector<std::string> ids_of(const Dataset& ds) {
    std::vector<std::string> ids;
    for (const auto& r : ds.records) ids.push_back(r.id);
    return ids;
}

// ---------------------------------------------------------------------------
// 1. Metric oracle equivalence

void criterion_metric_oracles() {
    const auto start = Clock::now();
    Rng rng(1001);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.below(500);
        PredictionSet set;
        set.pairs.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            set.pairs.push_back(
                {"p" + std::to_string(i), rng.uniform(0.0, 1e5), rng.uniform(0.0, 1e5)});
        }

        // Independent direct-summation oracles in long double.
        long double abs_sum = 0.0L;
        long double sq_sum = 0.0L;
        for (const auto& pair : set.pairs) {
            const long double err = static_cast<long double>(pair.actual) - pair.predicted;
            abs_sum += err < 0 ? -err : err;
            sq_sum += err * err;
        }
        const double oracle_mae = static_cast<double>(abs_sum / n);
        const double oracle_rmse = std::sqrt(static_cast<double>(sq_sum / n));

        const double got_mae = mae(set);
        const double got_rmse = rmse(set);
        require(std::abs(got_mae - oracle_mae) <= 1e-9, "mae deviates from the oracle");
        require(std::abs(got_rmse - oracle_rmse) <= 1e-9, "rmse deviates from the oracle");
        require(got_rmse >= got_mae, "rmse >= mae violated");
    }
    require(seconds_since(start) < 5.0, "metric oracle sweep exceeded 5 s");
}

// ---------------------------------------------------------------------------
// 2. Golden prompt fidelity

void criterion_golden_prompt() {
    const std::string expected_prompt =
        "What is the estimated cost of hours of a Project with the description: "
        "Architecture is Client server with 3.0 Number of developers with under 1 year of "
        "experiance, 1.0 number of developers with 1 to 3 years of experiance, 0 Number of "
        "developers with over 3 years of experiance, Manager's years of experiance is 5.0, "
        "Business Application Application Group, Job, case, incident, project management; "
        "Application Type, Primary Programming Language is Java, Max Team Size of 4.0, "
        "Development Methodologies is Waterfall";
    const std::string expected_completion = "Estimated cost is: 1112.0 hours";

    const auto loaded =
        load_csv(src("data/paper_example.csv"), isbsg_schema(), "Normalized Work Effort");
    require(loaded.dataset.size() == 1, "paper example fixture must hold one record");
    const PromptTemplate tmpl = isbsg_prompt_template();
    const std::string prompt = render_prompt(loaded.dataset.records[0], tmpl);
    const std::string completion = render_completion(loaded.dataset.records[0], tmpl);
    require(prompt == expected_prompt, "prompt differs from the published example");
    require(completion == expected_completion, "completion differs from the published example");

    // Same check through the CLI: the first corpus line must carry the exact
    // prompt and completion.
    const std::string corpus = (g_work / "golden.jsonl").string();
    run_cli("gen-prompts --input " + src("data/paper_example.csv") + " --schema " +
            src("data/isbsg_schema.conf") + " --out " + corpus);
    std::ifstream in(corpus);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "golden corpus is empty");
    const auto parsed = nlohmann::json::parse(line);
    require(parsed["prompt"].get<std::string>() == expected_prompt,
            "CLI corpus prompt differs from the published example");
    require(parsed["completion"].get<std::string>() == expected_completion,
            "CLI corpus completion differs from the published example");
}

// ---------------------------------------------------------------------------
// 3. Stratification exactness

std::string g_stratify_note;

void criterion_stratification() {
    std::vector<std::size_t> counts;
    const Dataset ds = planted_100_fixture(&counts);
    require(ds.size() == 100, "fixture must hold 100 records");
    require(stratify_by_completeness(ds, {3}).size() == 60, "<=3 tier must hold 60 records");
    require(stratify_by_completeness(ds, {5}).size() == 85, "<=5 tier must hold 85 records");

    std::size_t expected = 0;
    std::vector<std::string> previous;
    for (std::size_t m = 0; m <= 10; ++m) {
        expected += counts[m];
        const Dataset tier = stratify_by_completeness(ds, {m});
        require(tier.size() == expected,
                "tier " + std::to_string(m) + " cardinality mismatch");
        const auto ids = ids_of(tier);
        require(std::includes(ids.begin(), ids.end(), previous.begin(), previous.end()),
                "tiers must be nested");
        previous = ids;
    }

    // Licensed data cannot ship; the exact 3904/228/35 tier check runs only
    // when the user supplies a real export.
    const char* isbsg = std::getenv("EFFORTCAST_ISBSG_CSV");
    if (!isbsg) {
        g_stratify_note = " (licensed ISBSG tier check skipped: EFFORTCAST_ISBSG_CSV not set)";
        return;
    }
    const auto loaded = load_csv(isbsg, isbsg_schema(), "Normalized Work Effort");
    require(loaded.dataset.size() == 7518, "licensed ISBSG export must hold 7518 records");
    require(stratify_by_completeness(loaded.dataset, {5}).size() == 3904,
            "ISBSG <=5 tier must hold 3904 records");
    require(stratify_by_completeness(loaded.dataset, {3}).size() == 228,
            "ISBSG <=3 tier must hold 228 records");
    require(stratify_by_completeness(loaded.dataset, {0}).size() == 35,
            "ISBSG complete tier must hold 35 records");
    g_stratify_note = " (licensed ISBSG tiers verified: 3904/228/35)";
}

// ---------------------------------------------------------------------------
// 4. Pinned split rule

void criterion_pinned_split() {
    Dataset tier;
    for (int f = 0; f < 10; ++f) {
        tier.schema.push_back({"f" + std::to_string(f), FeatureKind::Numeric, "", "", ""});
    }
    Rng rng(4242);
    for (int i = 0; i < 228; ++i) {
        ProjectRecord record;
        record.id = "t" + std::to_string(i);
        record.target_hours = 100.0 + i;
        for (int f = 0; f < 10; ++f) {
            record.features.emplace("f" + std::to_string(f),
                                    FeatureValue::numeric(rng.uniform(0.0, 1.0)));
        }
        tier.records.push_back(std::move(record));
    }

    SplitSpec pinned;
    pinned.train_frac = 0.5;
    pinned.val_frac = 0.0;
    pinned.test_frac = 0.5;
    pinned.seed = 9;
    pinned.pinned = PinnedSplit{{3}, 0.5};
    const SplitResult parts = split(tier, pinned);
    require(parts.train.size() == 114, "pinned tier must place 114 records in train");
    require(parts.test.size() == 114, "pinned tier must place 114 records in test");
    require(parts.val.size() == 0, "pinned tier must place none in validation");

    const Dataset hundred = planted_100_fixture(nullptr);
    SplitSpec global;
    global.seed = 11;
    const SplitResult g = split(hundred, global);
    require(g.train.size() == 80 && g.val.size() == 10 && g.test.size() == 10,
            "100 records at 80/10/10 must split (80,10,10)");

    const SplitResult again = split(hundred, global);
    require(ids_of(g.train) == ids_of(again.train) && ids_of(g.val) == ids_of(again.val) &&
                ids_of(g.test) == ids_of(again.test),
            "identical seeds must reproduce identical partitions");
}

// ---------------------------------------------------------------------------
// 5. Mock end-to-end closure (via the CLI)

std::string g_e2e_note;

void criterion_mock_end_to_end() {
    const auto start = Clock::now();
    const fs::path dir = g_work / "e2e";
    fs::create_directories(dir);
    const std::string sample = src("data/isbsg_synthetic_sample.csv");
    const std::string schema = src("data/isbsg_schema.conf");

    run_cli("gen-prompts --input " + sample + " --schema " + schema + " --out " +
            (dir / "corpus.jsonl").string());
    run_cli("finetune --corpus " + (dir / "corpus.jsonl").string() + " --provider mock --out " +
            (dir / "job.json").string());
    run_cli("predict --input " + sample + " --schema " + schema +
            " --provider mock-oracle --job " + (dir / "job.json").string() + " --out " +
            (dir / "preds_oracle.csv").string());
    run_cli("evaluate --predictions " + (dir / "preds_oracle.csv").string() +
            " --dataset-label isbsg --out " + (dir / "metrics_oracle.csv").string());

    const MetricsRow oracle = first_metrics_row((dir / "metrics_oracle.csv").string());
    require(oracle.mae == 0.0, "oracle closure must give MAE exactly 0");
    require(oracle.rmse == 0.0, "oracle closure must give RMSE exactly 0");
    require(oracle.excluded == 0, "oracle closure must exclude nothing");

    // Scripted mock: every tenth record answers non-numerically.
    run_cli("predict --input " + sample + " --schema " + schema +
            " --provider mock-scripted --job " + (dir / "job.json").string() + " --out " +
            (dir / "preds_scripted.csv").string());
    run_cli("evaluate --predictions " + (dir / "preds_scripted.csv").string() +
            " --dataset-label isbsg --out " + (dir / "metrics_scripted.csv").string());

    const auto sample_rows =
        load_csv(sample, isbsg_schema(), "Normalized Work Effort").dataset.size();
    const std::size_t injected = sample_rows / 10;
    const MetricsRow scripted = first_metrics_row((dir / "metrics_scripted.csv").string());
    require(scripted.excluded == injected,
            "exclusion counter must read exactly the injected garbage count (" +
                std::to_string(injected) + "), got " + std::to_string(scripted.excluded));

    const double elapsed = seconds_since(start);
    require(elapsed < 30.0, "mock end-to-end exceeded 30 s");
    g_e2e_note = " (" + std::to_string(sample_rows) + " records, " +
                 std::to_string(injected) + " injected garbage completions)";
}

// ---------------------------------------------------------------------------
// 6. Baseline regressor properties

void criterion_baseline_properties() {
    using namespace effortcast::baselines;
    const auto start = Clock::now();
    Rng rng(606);

    {  // LinReg recovers (3, 1) on noiseless data.
        Matrix x(12, 1);
        std::vector<double> y(12);
        for (int i = 0; i < 12; ++i) {
            x.at(i, 0) = i;
            y[i] = 3.0 * i + 1.0;
        }
        const LinearModel model = fit_linreg(x, y, 0.0);
        require(std::abs(model.weights[0] - 3.0) < 1e-6, "LinReg slope must be 3 within 1e-6");
        require(std::abs(model.intercept - 1.0) < 1e-6, "LinReg intercept must be 1 within 1e-6");
    }
    {  // KNN k=1 has zero training error; k=n is the global mean exactly.
        Matrix x(25, 3);
        std::vector<double> y(25);
        for (int i = 0; i < 25; ++i) {
            for (int c = 0; c < 3; ++c) x.at(i, c) = rng.uniform(-5.0, 5.0);
            y[i] = rng.uniform(0.0, 1000.0);
        }
        const KnnModel nearest = fit_knn(x, y, 1);
        for (int i = 0; i < 25; ++i) {
            require(nearest.predict_one(x.row(i)) == y[i], "KNN k=1 training error must be 0");
        }
        const KnnModel all = fit_knn(x, y, 25);
        const double mean = std::accumulate(y.begin(), y.end(), 0.0) / 25.0;
        const std::vector<double> query = {100.0, -3.0, 0.0};
        require(all.predict_one(query) == mean, "KNN k=n must equal the global mean predictor");
    }
    {  // Forest(1 tree, no subsampling, all features) == Tree.
        Matrix x(40, 4);
        std::vector<double> y(40);
        for (int i = 0; i < 40; ++i) {
            for (int c = 0; c < 4; ++c) x.at(i, c) = rng.uniform(-2.0, 2.0);
            y[i] = 5.0 * x.at(i, 0) - x.at(i, 2) + rng.uniform(0.0, 0.5);
        }
        ForestParams fp;
        fp.n_trees = 1;
        fp.subsample = 1.0;
        fp.feature_frac = 1.0;
        fp.tree = {6, 2};
        const ForestModel forest = fit_forest(x, y, fp);
        const TreeModel tree = fit_tree(x, y, fp.tree);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> q(4);
            for (auto& v : q) v = rng.uniform(-3.0, 3.0);
            require(forest.predict_one(q) == tree.predict_one(q),
                    "degenerate forest must equal the tree prediction-for-prediction");
        }
    }
    {  // AdaBoost.R2 with one round equals its base learner.
        Matrix x(30, 2);
        std::vector<double> y(30);
        for (int i = 0; i < 30; ++i) {
            x.at(i, 0) = rng.uniform(-4.0, 4.0);
            x.at(i, 1) = rng.uniform(-4.0, 4.0);
            y[i] = x.at(i, 0) * 2.0 + rng.uniform(0.0, 1.0);
        }
        AdaBoostParams ap;
        ap.n_rounds = 1;
        ap.base = {3, 1};
        const AdaBoostModel boosted = fit_adaboost_r2(x, y, ap);
        const TreeModel base = fit_tree(x, y, ap.base);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> q = {rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
            require(boosted.predict_one(q) == base.predict_one(q),
                    "single-round AdaBoost.R2 must equal its base learner");
        }
    }
    {  // ELM with n_hidden >= n near-interpolates a 20-point fixture.
        Matrix x(20, 2);
        std::vector<double> y(20);
        for (int i = 0; i < 20; ++i) {
            x.at(i, 0) = rng.uniform(-2.0, 2.0);
            x.at(i, 1) = rng.uniform(-2.0, 2.0);
            y[i] = 100.0 * std::sin(x.at(i, 0)) + 50.0 * x.at(i, 1);
        }
        ElmParams ep;
        ep.n_hidden = 24;
        ep.seed = 5;
        const ElmModel model = fit_elm(x, y, ep);
        double train_mae = 0.0;
        for (int i = 0; i < 20; ++i) train_mae += std::abs(model.predict_one(x.row(i)) - y[i]);
        train_mae /= 20.0;
        require(train_mae < 1e-3, "wide ELM must reach training MAE < 1e-3, got " +
                                      format_decimal(train_mae));
    }
    {  // MLP analytic gradients match central finite differences.
        const std::size_t d = 3, h = 4, n = 5;
        Matrix x(n, d);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < d; ++c) x.at(i, c) = rng.uniform(-1.0, 1.0);
            y[i] = rng.uniform(-2.0, 2.0);
        }
        std::vector<double> theta(mlp_param_count(d, h));
        for (auto& v : theta) v = rng.uniform(-0.8, 0.8);
        const auto grad = mlp_gradient(d, h, theta, x, y);
        const double eps = 1e-6;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            auto plus = theta;
            auto minus = theta;
            plus[i] += eps;
            minus[i] -= eps;
            const double fd =
                (mlp_loss(d, h, plus, x, y) - mlp_loss(d, h, minus, x, y)) / (2.0 * eps);
            const double rel =
                std::abs(grad[i] - fd) / std::max({1.0, std::abs(grad[i]), std::abs(fd)});
            require(rel < 1e-5, "MLP gradient component deviates from finite differences");
        }
    }
    require(seconds_since(start) < 60.0, "baseline property suite exceeded 60 s");
}

// ---------------------------------------------------------------------------
// 7. Public-dataset sanity band

std::string g_band_note;

void criterion_desharnais_band() {
    const auto schema_cfg = Config::load(src("data/desharnais_schema.conf"));
    const auto schema = schema_from_config(schema_cfg);
    const auto options = load_options_from_config(schema_cfg);
    const auto loaded = load_csv(src("data/desharnais.csv"), schema, options);
    require(loaded.dataset.size() == 81, "bundled Desharnais-shaped fixture must hold 81 records");

    double rmse_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SplitSpec spec;
        spec.train_frac = 0.8;
        spec.val_frac = 0.0;
        spec.test_frac = 0.2;
        spec.seed = seed;
        const SplitResult parts = split(loaded.dataset, spec);

        baselines::Hyperparams params;  // defaults: k = 5
        params.kind = baselines::EstimatorKind::Knn;
        params.seed = seed;
        const baselines::TrainedModel model = baselines::fit_model(parts.train, params);
        const PredictionSet set = collect_predictions(model, parts.test);
        const double r = rmse(set);
        require(std::isfinite(r), "per-seed RMSE must be finite");
        rmse_sum += r;
    }
    const double mean_rmse = rmse_sum / 10.0;
    require(mean_rmse >= 500.0 && mean_rmse <= 10000.0,
            "mean KNN RMSE " + format_decimal(mean_rmse) + " outside [500, 10000]");
    g_band_note = " (mean KNN RMSE over 10 seeds: " + format_decimal(mean_rmse) + " hours)";
}

// ---------------------------------------------------------------------------
// 8. Determinism sweep over every subcommand

void criterion_determinism() {
    const std::string sample = src("data/isbsg_synthetic_sample.csv");
    const std::string schema = src("data/isbsg_schema.conf");
    const std::string desharnais = src("data/desharnais.csv");
    const std::string desharnais_schema = src("data/desharnais_schema.conf");

    const auto run_all = [&](const fs::path& dir) {
        fs::create_directories(dir);
        const auto p = [&](const char* name) { return (dir / name).string(); };
        run_cli("ingest --input " + sample + " --schema " + schema + " --out " + p("canon.csv"));
        run_cli("correlate --input " + p("canon.csv") + " --schema " + schema + " --out " +
                p("corr.csv"));
        run_cli("stratify --input " + p("canon.csv") + " --schema " + schema +
                " --max-missing 3 --out " + p("tier3.csv"));
        run_cli("split --input " + p("canon.csv") + " --schema " + schema +
                " --seed 7 --out-dir " + (dir / "splits").string());
        run_cli("gen-prompts --input " + (dir / "splits" / "train.csv").string() + " --schema " +
                schema + " --out " + p("corpus.jsonl"));
        run_cli("finetune --corpus " + p("corpus.jsonl") + " --provider mock --out " +
                p("job.json"));
        run_cli("predict --input " + (dir / "splits" / "test.csv").string() + " --schema " +
                schema + " --provider mock-oracle --job " + p("job.json") + " --out " +
                p("preds.csv"));
        run_cli("evaluate --predictions " + p("preds.csv") + " --dataset-label isbsg --out " +
                p("metrics_llm.csv") + " --scatter-dir " + (dir / "scatter").string());
        run_cli("evaluate --estimators knn,linreg,svm,dt,rf,abreg,elm,mlp --dataset " +
                desharnais + " --schema " + desharnais_schema +
                " --seed 7 --train 0.8 --val 0 --test 0.2 --reference " +
                src("data/paper_reference.csv") + " --out " + p("metrics_base.csv"));
        run_cli("report --metrics " + p("metrics_base.csv") + " --metrics " +
                p("metrics_llm.csv") + " --reference " + src("data/paper_reference.csv") +
                " --out " + p("report.md"));
    };

    const fs::path run_a = g_work / "det_a";
    const fs::path run_b = g_work / "det_b";
    run_all(run_a);
    run_all(run_b);

    // Every data output must be byte-identical; manifests may differ only in
    // their timestamp field.
    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(run_a)) {
        if (!entry.is_regular_file()) continue;
        const auto relative = fs::relative(entry.path(), run_a);
        const auto other = run_b / relative;
        require(fs::exists(other), "second run is missing " + relative.string());
        std::string a = read_file(entry.path().string());
        std::string b = read_file(other.string());
        if (relative.string().ends_with(".manifest.json")) {
            // Manifests record the run directory in their paths and the wall
            // clock in their timestamp; normalize both before comparing the
            // provenance content (digests, seeds, subcommand).
            const auto normalize = [](std::string text, const std::string& dir) {
                std::size_t at = 0;
                while ((at = text.find(dir, at)) != std::string::npos) {
                    text.replace(at, dir.size(), "$RUN");
                }
                at = text.find("\"timestamp\"");
                if (at != std::string::npos) text.erase(at, text.find('\n', at) - at);
                return text;
            };
            a = normalize(std::move(a), run_a.string());
            b = normalize(std::move(b), run_b.string());
        }
        require(a == b, "output differs between identical runs: " + relative.string());
        ++compared;
    }
    require(compared >= 15, "determinism sweep compared suspiciously few files");
}

// ---------------------------------------------------------------------------
// 9. Secret hygiene

void criterion_secret_hygiene() {
    // Criteria 5 and 8 ran the full mock pipeline with the sentinel key in
    // the environment; nothing under the workspace may contain it.
    std::size_t scanned = 0;
    for (const auto& entry : fs::recursive_directory_iterator(g_work)) {
        if (!entry.is_regular_file()) continue;
        const std::string content = read_file(entry.path().string());
        require(content.find(kApiKeySentinel) == std::string::npos,
                "API key value leaked into " + entry.path().string());
        ++scanned;
    }
    require(scanned >= 15, "secret scan covered suspiciously few files");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: effortcast_acceptance <path-to-effortcast-cli>\n";
        return 2;
    }
    g_cli = argv[1];
    g_work = fs::temp_directory_path() /
             ("effortcast-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(g_work);
    setenv("EFFORTCAST_API_KEY", kApiKeySentinel, 1);

    struct Criterion {
        std::string name;
        std::function<void()> run;
        const std::string* note = nullptr;
    };
    const std::vector<Criterion> criteria = {
        {"metric oracle equivalence (1000 random sets, 1e-9, rmse >= mae)",
         criterion_metric_oracles},
        {"golden prompt fidelity (byte-exact prompt and completion)", criterion_golden_prompt},
        {"stratification exactness (planted tiers + monotonicity)", criterion_stratification,
         &g_stratify_note},
        {"pinned split rule (114/0/114; 80/10/10; seed-stable)", criterion_pinned_split},
        {"mock end-to-end closure (MAE = RMSE = 0; exact exclusion count)",
         criterion_mock_end_to_end, &g_e2e_note},
        {"baseline regressor properties (LinReg/KNN/RF/ABReg/ELM/MLP)",
         criterion_baseline_properties},
        {"public-dataset sanity band (KNN on Desharnais-shaped data)",
         criterion_desharnais_band, &g_band_note},
        {"determinism sweep (every subcommand twice, byte-identical outputs)",
         criterion_determinism},
        {"secret hygiene (API key value absent from all artifacts)", criterion_secret_hygiene},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& criterion = criteria[i];
        std::string verdict = "PASS";
        std::string detail;
        try {
            criterion.run();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = std::string(": ") + e.what();
            ++failures;
        }
        std::cout << verdict << "  " << (i + 1) << ". " << criterion.name
                  << (criterion.note ? *criterion.note : "") << detail << "\n";
    }

    if (failures == 0) {
        std::error_code ec;
        fs::remove_all(g_work, ec);
        std::cout << "all " << criteria.size() << " acceptance criteria passed\n";
    } else {
        std::cout << failures << " criterion(s) failed; artifacts kept under " << g_work << "\n";
    }
    return failures == 0 ? 0 : 1;
}
