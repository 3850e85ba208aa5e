#include "effortcast/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "effortcast/strutil.hpp"

namespace effortcast {

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw InvalidArgumentError("pearson: input lengths differ");
    }
    if (xs.size() < 2) {
        throw InvalidArgumentError("pearson: need at least two pairs");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;  // ConstantInput
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

namespace {

struct PairedColumn {
    std::vector<double> xs;
    std::vector<double> ys;
};

CorrelationEntry numeric_entry(const Dataset& ds, const FeatureSpec& spec) {
    PairedColumn col;
    for (const auto& record : ds.records) {
        const FeatureValue& v = record.feature(spec.name);
        if (v.is_missing() || !record.target_hours) continue;
        col.xs.push_back(v.number());
        col.ys.push_back(*record.target_hours);
    }
    CorrelationEntry entry{spec.name, std::nullopt, col.xs.size(), ""};
    if (col.xs.size() >= 2) entry.r = pearson(col.xs, col.ys);
    return entry;
}

CorrelationEntry categorical_entry(const Dataset& ds, const FeatureSpec& spec) {
    std::vector<std::string> values;
    std::vector<double> targets;
    std::set<std::string> levels;
    for (const auto& record : ds.records) {
        const FeatureValue& v = record.feature(spec.name);
        if (v.is_missing() || !record.target_hours) continue;
        values.push_back(v.text());
        targets.push_back(*record.target_hours);
        levels.insert(v.text());
    }

    CorrelationEntry entry{spec.name, std::nullopt, values.size(), ""};
    if (values.size() < 2) return entry;

    std::vector<double> indicator(values.size());
    for (const auto& level : levels) {  // std::set iterates lexicographically
        for (std::size_t i = 0; i < values.size(); ++i) {
            indicator[i] = values[i] == level ? 1.0 : 0.0;
        }
        const auto r = pearson(indicator, targets);
        if (!r) continue;
        if (!entry.r || std::abs(*r) > std::abs(*entry.r)) {
            entry.r = r;
            entry.level = level;
        }
    }
    return entry;
}

}  // namespace

CorrelationReport rank_features(const Dataset& ds, const std::string& target_name, std::size_t k) {
    CorrelationReport report;
    report.target_name = target_name.empty() ? ds.target_name : target_name;

    bool any_pairs = false;
    for (const auto& spec : ds.schema) {
        CorrelationEntry entry = spec.kind == FeatureKind::Numeric ? numeric_entry(ds, spec)
                                                                   : categorical_entry(ds, spec);
        if (entry.n_pairs >= 2) any_pairs = true;
        report.entries.push_back(std::move(entry));
    }
    if (!report.entries.empty() && !any_pairs) {
        throw NoNumericPairsError("no feature has two or more complete pairs with the target");
    }

    std::stable_sort(report.entries.begin(), report.entries.end(),
                     [](const CorrelationEntry& a, const CorrelationEntry& b) {
                         if (a.r.has_value() != b.r.has_value()) return a.r.has_value();
                         if (a.r && b.r && std::abs(*a.r) != std::abs(*b.r)) {
                             return std::abs(*a.r) > std::abs(*b.r);
                         }
                         return a.feature < b.feature;
                     });
    if (report.entries.size() > k) report.entries.resize(k);
    return report;
}

void write_correlation_csv(const CorrelationReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "feature,r,n_pairs\n";
    for (const auto& entry : report.entries) {
        out << csv_escape(entry.feature) << ','
            << (entry.r ? format_decimal(*entry.r) : std::string()) << ',' << entry.n_pairs
            << '\n';
    }
    if (!out) throw IoError("failed while writing: " + path);
}

}  // namespace effortcast
