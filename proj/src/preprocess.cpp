#include <algorithm>
#include <cmath>
#include <map>

#include "effortcast/baselines.hpp"

namespace effortcast::baselines {

std::size_t PreprocessState::dim() const {
    std::size_t d = 0;
    for (const auto& block : blocks) {
        d += block.kind == FeatureKind::Numeric ? 1 : categorical[block.index].levels.size();
    }
    return d;
}

PreprocessState fit_preprocess(const Dataset& train) {
    if (train.records.empty()) throw EmptyTrainingSetError("cannot fit preprocessing on no records");

    PreprocessState state;
    for (const auto& spec : train.schema) {
        if (spec.kind == FeatureKind::Numeric) {
            std::vector<double> values;
            for (const auto& record : train.records) {
                const FeatureValue& v = record.feature(spec.name);
                if (!v.is_missing()) values.push_back(v.number());
            }
            if (values.empty()) {
                state.dropped.push_back(spec.name);  // nothing to impute from
                continue;
            }
            double mean = 0.0;
            for (double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            double var = 0.0;
            for (double v : values) var += (v - mean) * (v - mean);
            var /= static_cast<double>(values.size());
            const double stddev = std::sqrt(var);
            if (stddev <= 0.0) {
                state.dropped.push_back(spec.name);  // zero variance
                continue;
            }
            state.blocks.push_back({FeatureKind::Numeric, state.numeric.size()});
            state.numeric.push_back({spec.name, mean, stddev, mean});
        } else {
            std::map<std::string, std::size_t> counts;
            for (const auto& record : train.records) {
                const FeatureValue& v = record.feature(spec.name);
                if (!v.is_missing()) ++counts[v.text()];
            }
            if (counts.empty()) {
                state.dropped.push_back(spec.name);
                continue;
            }
            PreprocessState::CategoricalColumn col;
            col.feature = spec.name;
            std::size_t best = 0;
            for (const auto& [level, count] : counts) {
                col.levels.push_back(level);
                if (count > best) {  // ties keep the lexicographically first
                    best = count;
                    col.impute_level = level;
                }
            }
            state.blocks.push_back({FeatureKind::Categorical, state.categorical.size()});
            state.categorical.push_back(std::move(col));
        }
    }
    return state;
}

std::vector<double> transform(const PreprocessState& state, const ProjectRecord& record) {
    std::vector<double> out;
    out.reserve(state.dim());
    for (const auto& block : state.blocks) {
        if (block.kind == FeatureKind::Numeric) {
            const auto& col = state.numeric[block.index];
            const FeatureValue& v = record.feature(col.feature);
            const double raw = v.is_missing() ? col.impute_value : v.number();
            out.push_back((raw - col.mean) / col.stddev);
        } else {
            const auto& col = state.categorical[block.index];
            const FeatureValue& v = record.feature(col.feature);
            const std::string& level = v.is_missing() ? col.impute_level : v.text();
            // Unseen levels one-hot to all zeros.
            for (const auto& known : col.levels) out.push_back(known == level ? 1.0 : 0.0);
        }
    }
    return out;
}

Matrix design_matrix(const PreprocessState& state, const Dataset& ds) {
    Matrix x(ds.size(), state.dim());
    for (std::size_t r = 0; r < ds.size(); ++r) {
        const auto row = transform(state, ds.records[r]);
        std::copy(row.begin(), row.end(), x.row(r).begin());
    }
    return x;
}

std::vector<double> targets(const Dataset& ds) {
    std::vector<double> y;
    y.reserve(ds.size());
    for (const auto& record : ds.records) {
        if (!record.target_hours) {
            throw MissingTargetError("record '" + record.id + "' has no target hours");
        }
        y.push_back(*record.target_hours);
    }
    return y;
}

}  // namespace effortcast::baselines
