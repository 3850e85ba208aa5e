#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "effortcast/baselines.hpp"
#include "effortcast/dataset.hpp"
#include "effortcast/llmclient.hpp"

namespace effortcast {

struct PredictionPair {
    std::string id;
    double actual = 0.0;     // hours
    double predicted = 0.0;  // hours
};

struct Exclusion {
    std::string id;
    std::string reason;
};

struct PredictionSet {
    std::vector<PredictionPair> pairs;
    std::vector<Exclusion> excluded;  // unparsable / failed estimates
};

/// Mean absolute error (hours); throws EmptyPredictionSetError on no pairs.
double mae(const PredictionSet& predictions);
/// Root mean square error (hours); throws EmptyPredictionSetError on no pairs.
double rmse(const PredictionSet& predictions);

/// 1.5-IQR fence on actual values, applied repeatedly until no pair drops,
/// which makes the operation idempotent. Quartiles use linear interpolation.
struct OutlierRule {
    double iqr_factor = 1.5;
    std::string describe() const;
};

struct OutlierResult {
    PredictionSet kept;
    std::vector<PredictionPair> dropped;
    OutlierRule rule;
    std::size_t iterations = 0;
};

/// Throws TooFewPointsError below four pairs.
OutlierResult remove_outliers(const PredictionSet& predictions, OutlierRule rule = {});

struct EvaluationReport {
    std::string estimator;
    std::string dataset;  // provenance label
    std::size_t n = 0;
    double mae_hours = 0.0;
    double rmse_hours = 0.0;
    std::uint64_t seed = 0;
    std::string hyperparams;   // echo, informational
    std::size_t excluded = 0;  // unparsable estimates left out of the metrics
    // Paper-reported values, rendered for side-by-side display only; they
    // never gate anything.
    std::optional<double> reference_mae;
    std::optional<double> reference_rmse;
};

EvaluationReport evaluate(const std::string& estimator, const PredictionSet& predictions,
                          const std::string& dataset_label, std::uint64_t seed,
                          const std::string& hyperparams);

/// (actual, predicted) pairs of a trained baseline over a test set.
PredictionSet collect_predictions(const baselines::TrainedModel& model, const Dataset& test);

/// Joins LLM estimates with the test set's true targets; estimates that
/// failed to parse land in `excluded` with their reason.
PredictionSet collect_estimates(const std::vector<Estimate>& estimates, const Dataset& test);

// --- reference numbers (shipped, display-only) ---

struct ReferenceValue {
    std::string metric;     // "mae" | "rmse"
    std::string estimator;  // short id: knn, linreg, svm, llm, elm, ...
    std::string dataset;    // desharnais, cocomo, isbsg
    double value = 0.0;
};

std::vector<ReferenceValue> load_reference_table(const std::string& path);
std::optional<double> find_reference(const std::vector<ReferenceValue>& table,
                                     const std::string& metric, const std::string& estimator,
                                     const std::string& dataset);
void attach_references(EvaluationReport& report, const std::string& estimator_id,
                       const std::vector<ReferenceValue>& table);

// --- output ---

/// estimator,dataset,n,mae,rmse,seed,excluded
void write_metrics_csv(const std::vector<EvaluationReport>& reports, const std::string& path);

/// Plain-text table: estimator rows, dataset columns, one metric per cell;
/// paper-reported values in parentheses where available.
std::string comparison_table(const std::vector<EvaluationReport>& reports,
                             const std::string& metric);

/// id,actual,predicted,kept_after_outlier_rule
void write_scatter_csv(const PredictionSet& predictions, const OutlierResult& outliers,
                       const std::string& path);

}  // namespace effortcast
