#include "effortcast/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "effortcast/strutil.hpp"

namespace effortcast {

namespace {

/// Kahan-compensated sum of f(pair) over all pairs.
template <typename F>
double compensated_sum(const std::vector<PredictionPair>& pairs, F&& term) {
    double sum = 0.0;
    double carry = 0.0;
    for (const auto& pair : pairs) {
        const double value = term(pair) - carry;
        const double next = sum + value;
        carry = (next - sum) - value;
        sum = next;
    }
    return sum;
}

void require_pairs(const PredictionSet& predictions) {
    if (predictions.pairs.empty()) {
        throw EmptyPredictionSetError("metric over an empty prediction set");
    }
}

/// Linear-interpolation quantile of a sorted vector.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double mae(const PredictionSet& predictions) {
    require_pairs(predictions);
    const double sum = compensated_sum(
        predictions.pairs, [](const PredictionPair& p) { return std::abs(p.actual - p.predicted); });
    return sum / static_cast<double>(predictions.pairs.size());
}

double rmse(const PredictionSet& predictions) {
    require_pairs(predictions);
    const double sum = compensated_sum(predictions.pairs, [](const PredictionPair& p) {
        const double err = p.actual - p.predicted;
        return err * err;
    });
    return std::sqrt(sum / static_cast<double>(predictions.pairs.size()));
}

std::string OutlierRule::describe() const {
    return "actuals outside [Q1 - " + format_decimal(iqr_factor) + "*IQR, Q3 + " +
           format_decimal(iqr_factor) + "*IQR], iterated to a fixed point";
}

OutlierResult remove_outliers(const PredictionSet& predictions, OutlierRule rule) {
    if (predictions.pairs.size() < 4) {
        throw TooFewPointsError("outlier removal needs at least four pairs");
    }

    OutlierResult result;
    result.rule = rule;
    result.kept = predictions;

    while (result.kept.pairs.size() >= 4) {
        std::vector<double> actuals;
        actuals.reserve(result.kept.pairs.size());
        for (const auto& pair : result.kept.pairs) actuals.push_back(pair.actual);
        std::sort(actuals.begin(), actuals.end());
        const double q1 = quantile_sorted(actuals, 0.25);
        const double q3 = quantile_sorted(actuals, 0.75);
        const double iqr = q3 - q1;
        const double lo = q1 - rule.iqr_factor * iqr;
        const double hi = q3 + rule.iqr_factor * iqr;

        std::vector<PredictionPair> kept;
        kept.reserve(result.kept.pairs.size());
        bool dropped_any = false;
        for (const auto& pair : result.kept.pairs) {
            if (pair.actual < lo || pair.actual > hi) {
                result.dropped.push_back(pair);
                dropped_any = true;
            } else {
                kept.push_back(pair);
            }
        }
        result.kept.pairs = std::move(kept);
        ++result.iterations;
        if (!dropped_any) break;
    }
    return result;
}

EvaluationReport evaluate(const std::string& estimator, const PredictionSet& predictions,
                          const std::string& dataset_label, std::uint64_t seed,
                          const std::string& hyperparams) {
    EvaluationReport report;
    report.estimator = estimator;
    report.dataset = dataset_label;
    report.n = predictions.pairs.size();
    report.mae_hours = mae(predictions);
    report.rmse_hours = rmse(predictions);
    report.seed = seed;
    report.hyperparams = hyperparams;
    report.excluded = predictions.excluded.size();
    return report;
}

PredictionSet collect_predictions(const baselines::TrainedModel& model, const Dataset& test) {
    PredictionSet out;
    out.pairs.reserve(test.size());
    for (const auto& record : test.records) {
        if (!record.target_hours) {
            out.excluded.push_back({record.id, "no true target"});
            continue;
        }
        out.pairs.push_back({record.id, *record.target_hours, model.predict(record)});
    }
    return out;
}

PredictionSet collect_estimates(const std::vector<Estimate>& estimates, const Dataset& test) {
    std::unordered_map<std::string, double> truth;
    for (const auto& record : test.records) {
        if (record.target_hours) truth.emplace(record.id, *record.target_hours);
    }
    PredictionSet out;
    for (const auto& estimate : estimates) {
        if (!estimate.parse_ok) {
            out.excluded.push_back(
                {estimate.source_id,
                 estimate.note.empty() ? "unparsable completion" : estimate.note});
            continue;
        }
        const auto it = truth.find(estimate.source_id);
        if (it == truth.end()) {
            out.excluded.push_back({estimate.source_id, "no true target in test set"});
            continue;
        }
        out.pairs.push_back({estimate.source_id, it->second, *estimate.predicted_hours});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reference table

std::vector<ReferenceValue> load_reference_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open reference table: " + path);
    const auto rows = read_csv_rows(in);
    if (rows.empty()) return {};

    std::vector<ReferenceValue> table;
    for (std::size_t r = 1; r < rows.size(); ++r) {  // skip header
        const auto& cells = rows[r];
        if (cells.size() < 4) {
            throw MalformedCsvError("reference table row " + std::to_string(r + 1) +
                                    " needs metric,estimator,dataset,value");
        }
        const auto value = parse_double(cells[3]);
        if (!value) {
            throw UnparsableNumericError("reference value '" + cells[3] + "' on row " +
                                         std::to_string(r + 1));
        }
        table.push_back({to_lower(trim(cells[0])), to_lower(trim(cells[1])),
                         to_lower(trim(cells[2])), *value});
    }
    return table;
}

std::optional<double> find_reference(const std::vector<ReferenceValue>& table,
                                     const std::string& metric, const std::string& estimator,
                                     const std::string& dataset) {
    for (const auto& entry : table) {
        if (entry.metric == metric && entry.estimator == estimator && entry.dataset == dataset) {
            return entry.value;
        }
    }
    return std::nullopt;
}

void attach_references(EvaluationReport& report, const std::string& estimator_id,
                       const std::vector<ReferenceValue>& table) {
    report.reference_mae = find_reference(table, "mae", estimator_id, report.dataset);
    report.reference_rmse = find_reference(table, "rmse", estimator_id, report.dataset);
}

// ---------------------------------------------------------------------------
// Output

void write_metrics_csv(const std::vector<EvaluationReport>& reports, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "estimator,dataset,n,mae,rmse,seed,excluded\n";
    for (const auto& r : reports) {
        out << csv_escape(r.estimator) << ',' << csv_escape(r.dataset) << ',' << r.n << ','
            << format_decimal(r.mae_hours) << ',' << format_decimal(r.rmse_hours) << ',' << r.seed
            << ',' << r.excluded << '\n';
    }
    if (!out) throw IoError("failed while writing: " + path);
}

std::string comparison_table(const std::vector<EvaluationReport>& reports,
                             const std::string& metric) {
    const bool use_mae = to_lower(metric) == "mae";

    std::vector<std::string> estimators;
    std::vector<std::string> datasets;
    std::map<std::pair<std::string, std::string>, const EvaluationReport*> cells;
    for (const auto& r : reports) {
        if (std::find(estimators.begin(), estimators.end(), r.estimator) == estimators.end()) {
            estimators.push_back(r.estimator);
        }
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
            datasets.push_back(r.dataset);
        }
        cells[{r.estimator, r.dataset}] = &r;
    }

    const auto cell_text = [&](const EvaluationReport* r) -> std::string {
        if (!r) return "-";
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(2) << (use_mae ? r->mae_hours : r->rmse_hours);
        const auto ref = use_mae ? r->reference_mae : r->reference_rmse;
        if (ref) cell << " (paper: " << std::fixed << std::setprecision(2) << *ref << ")";
        return cell.str();
    };

    std::vector<std::size_t> widths;
    std::size_t name_width = std::string("Method").size();
    for (const auto& e : estimators) name_width = std::max(name_width, e.size());
    for (const auto& d : datasets) {
        std::size_t w = d.size();
        for (const auto& e : estimators) {
            const auto it = cells.find({e, d});
            w = std::max(w, cell_text(it == cells.end() ? nullptr : it->second).size());
        }
        widths.push_back(w);
    }

    std::ostringstream out;
    out << (use_mae ? "MAE (hours)" : "RMSE (hours)")
        << " (locally computed; values in parentheses are paper-reported, not locally"
           " reproduced)\n";
    out << std::left << std::setw(static_cast<int>(name_width)) << "Method";
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        out << "  " << std::left << std::setw(static_cast<int>(widths[i])) << datasets[i];
    }
    out << '\n';
    for (const auto& e : estimators) {
        out << std::left << std::setw(static_cast<int>(name_width)) << e;
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            const auto it = cells.find({e, datasets[i]});
            out << "  " << std::left << std::setw(static_cast<int>(widths[i]))
                << cell_text(it == cells.end() ? nullptr : it->second);
        }
        out << '\n';
    }
    return out.str();
}

void write_scatter_csv(const PredictionSet& predictions, const OutlierResult& outliers,
                       const std::string& path) {
    std::unordered_set<std::string> kept_ids;
    for (const auto& pair : outliers.kept.pairs) kept_ids.insert(pair.id);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "id,actual,predicted,kept_after_outlier_rule\n";
    for (const auto& pair : predictions.pairs) {
        out << csv_escape(pair.id) << ',' << format_decimal(pair.actual) << ','
            << format_decimal(pair.predicted) << ',' << (kept_ids.count(pair.id) ? 1 : 0) << '\n';
    }
    if (!out) throw IoError("failed while writing: " + path);
}

}  // namespace effortcast
