#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "effortcast/dataset.hpp"

namespace effortcast {

struct CorrelationEntry {
    std::string feature;
    /// Pearson r; nullopt when undefined (zero variance or < 2 complete pairs).
    std::optional<double> r;
    std::size_t n_pairs = 0;
    /// For categorical features: the one-hot level whose |r| was largest.
    std::string level;
};

struct CorrelationReport {
    std::vector<CorrelationEntry> entries;
    std::string target_name;
    std::string method = "pearson";
};

/// Pearson correlation coefficient. Inputs must be equal-length with at
/// least two elements. Returns nullopt (never NaN) when either input has
/// zero variance.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

/// Ranks schema features by |r| against the target (descending, undefined
/// last, ties by name), truncated to k. Numeric features correlate directly;
/// categorical ones via their strongest one-hot level. Pairs with a Missing
/// operand are excluded.
CorrelationReport rank_features(const Dataset& ds, const std::string& target_name, std::size_t k);

/// CSV with columns feature,r,n_pairs (r blank when undefined).
void write_correlation_csv(const CorrelationReport& report, const std::string& path);

}  // namespace effortcast
