#include <algorithm>
#include <cmath>
#include <numeric>

#include "effortcast/baselines.hpp"

namespace effortcast::baselines {

// ---------------------------------------------------------------------------
// CART regression tree, variance-reduction splits

double TreeModel::predict_one(std::span<const double> x) const {
    std::size_t at = 0;
    while (!nodes[at].leaf) {
        at = x[nodes[at].feature] <= nodes[at].threshold ? nodes[at].left : nodes[at].right;
    }
    return nodes[at].value;
}

std::size_t TreeModel::leaf_count() const {
    std::size_t n = 0;
    for (const auto& node : nodes) {
        if (node.leaf) ++n;
    }
    return n;
}

namespace {

struct TreeBuilder {
    const Matrix& x;
    std::span<const double> y;
    TreeParams params;
    double feature_frac = 1.0;
    Rng* rng = nullptr;  // only consulted when feature_frac < 1
    TreeModel& model;

    struct Split {
        bool found = false;
        std::size_t feature = 0;
        double threshold = 0.0;
        double gain = 0.0;
    };

    std::vector<std::size_t> candidate_features() const {
        const std::size_t d = x.cols();
        std::vector<std::size_t> all(d);
        std::iota(all.begin(), all.end(), 0);
        if (feature_frac >= 1.0 || rng == nullptr || d <= 1) return all;
        const std::size_t m = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(feature_frac * static_cast<double>(d))));
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + rng->below(d - i);
            std::swap(all[i], all[j]);
        }
        all.resize(m);
        std::sort(all.begin(), all.end());  // ascending order keeps tie-breaking stable
        return all;
    }

    Split best_split(const std::vector<std::size_t>& indices, double parent_sse) const {
        Split best;
        std::vector<std::pair<double, double>> points(indices.size());  // (x_j, y)
        for (const std::size_t feature : candidate_features()) {
            for (std::size_t i = 0; i < indices.size(); ++i) {
                points[i] = {x.at(indices[i], feature), y[indices[i]]};
            }
            std::sort(points.begin(), points.end());

            double left_sum = 0.0;
            double left_sq = 0.0;
            double total_sum = 0.0;
            double total_sq = 0.0;
            for (const auto& [_, yi] : points) {
                total_sum += yi;
                total_sq += yi * yi;
            }
            const std::size_t m = points.size();
            for (std::size_t p = 1; p < m; ++p) {
                left_sum += points[p - 1].second;
                left_sq += points[p - 1].second * points[p - 1].second;
                if (points[p - 1].first == points[p].first) continue;  // no boundary here
                if (p < params.min_leaf || m - p < params.min_leaf) continue;
                const double nl = static_cast<double>(p);
                const double nr = static_cast<double>(m - p);
                const double sse_left = left_sq - left_sum * left_sum / nl;
                const double right_sum = total_sum - left_sum;
                const double sse_right = (total_sq - left_sq) - right_sum * right_sum / nr;
                const double gain = parent_sse - (sse_left + sse_right);
                if (gain > best.gain) {  // strict: ties keep the smallest (feature, threshold)
                    best.found = true;
                    best.gain = gain;
                    best.feature = feature;
                    best.threshold = 0.5 * (points[p - 1].first + points[p].first);
                }
            }
        }
        return best;
    }

    std::size_t build(std::vector<std::size_t> indices, std::size_t depth) {
        const std::size_t node_index = model.nodes.size();
        model.nodes.emplace_back();

        double sum = 0.0;
        double sq = 0.0;
        for (const std::size_t i : indices) {
            sum += y[i];
            sq += y[i] * y[i];
        }
        const double n = static_cast<double>(indices.size());
        model.nodes[node_index].value = sum / n;
        const double sse = std::max(0.0, sq - sum * sum / n);

        if (depth >= params.max_depth || indices.size() < 2 * params.min_leaf || sse <= 1e-12) {
            return node_index;
        }
        const Split split = best_split(indices, sse);
        if (!split.found || split.gain <= 1e-12 * (1.0 + sse)) return node_index;

        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (const std::size_t i : indices) {
            (x.at(i, split.feature) <= split.threshold ? left : right).push_back(i);
        }
        indices.clear();
        indices.shrink_to_fit();

        const std::size_t left_index = build(std::move(left), depth + 1);
        const std::size_t right_index = build(std::move(right), depth + 1);
        auto& node = model.nodes[node_index];
        node.leaf = false;
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = left_index;
        node.right = right_index;
        return node_index;
    }
};

TreeModel fit_tree_sampled(const Matrix& x, std::span<const double> y, const TreeParams& params,
                           double feature_frac, Rng* rng) {
    if (x.rows() == 0) throw EmptyTrainingSetError("tree needs training rows");
    if (params.max_depth == 0 || params.min_leaf == 0) {
        throw InvalidArgumentError("tree needs max_depth >= 1 and min_leaf >= 1");
    }
    TreeModel model;
    TreeBuilder builder{x, y, params, feature_frac, rng, model};
    std::vector<std::size_t> all(x.rows());
    std::iota(all.begin(), all.end(), 0);
    builder.build(std::move(all), 0);
    return model;
}

Matrix rows_subset(const Matrix& x, const std::vector<std::size_t>& indices) {
    Matrix out(indices.size(), x.cols());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto src = x.row(indices[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

}  // namespace

TreeModel fit_tree(const Matrix& x, std::span<const double> y, const TreeParams& params) {
    return fit_tree_sampled(x, y, params, 1.0, nullptr);
}

// ---------------------------------------------------------------------------
// Random forest: bagged trees with per-split feature subsampling

double ForestModel::predict_one(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& tree : trees) sum += tree.predict_one(x);
    return sum / static_cast<double>(trees.size());
}

ForestModel fit_forest(const Matrix& x, std::span<const double> y, const ForestParams& params) {
    if (x.rows() == 0) throw EmptyTrainingSetError("forest needs training rows");
    if (params.n_trees == 0) throw InvalidArgumentError("forest needs n_trees >= 1");
    if (params.subsample <= 0.0 || params.subsample > 1.0) {
        throw InvalidArgumentError("forest subsample must lie in (0, 1]");
    }

    const std::size_t n = x.rows();
    ForestModel model;
    model.trees.reserve(params.n_trees);
    for (std::size_t t = 0; t < params.n_trees; ++t) {
        Rng rng = Rng::fork(params.seed, t);
        if (params.subsample >= 1.0) {
            // No resampling: the tree sees the sample as-is.
            model.trees.push_back(
                fit_tree_sampled(x, y, params.tree, params.feature_frac, &rng));
            continue;
        }
        const std::size_t m = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(params.subsample * static_cast<double>(n))));
        std::vector<std::size_t> indices(m);
        for (std::size_t i = 0; i < m; ++i) indices[i] = rng.below(n);
        const Matrix xs = rows_subset(x, indices);
        std::vector<double> ys(m);
        for (std::size_t i = 0; i < m; ++i) ys[i] = y[indices[i]];
        model.trees.push_back(fit_tree_sampled(xs, ys, params.tree, params.feature_frac, &rng));
    }
    return model;
}

// ---------------------------------------------------------------------------
// AdaBoost.R2 (Drucker), linear loss, weighted-median aggregation

std::vector<std::size_t> weighted_resample(const std::vector<double>& weights, std::size_t n,
                                           Rng& rng) {
    std::vector<double> cumulative(weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i];
        cumulative[i] = total;
    }
    if (total <= 0.0) throw InvalidArgumentError("weighted_resample needs positive total weight");

    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        out[i] = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                       weights.size() - 1);
    }
    return out;
}

double AdaBoostModel::predict_one(std::span<const double> x) const {
    std::vector<std::pair<double, double>> preds;  // (prediction, weight)
    preds.reserve(rounds.size());
    double total = 0.0;
    for (std::size_t t = 0; t < rounds.size(); ++t) {
        preds.emplace_back(rounds[t].predict_one(x), log_weights[t]);
        total += log_weights[t];
    }
    std::sort(preds.begin(), preds.end());
    double cumulative = 0.0;
    for (const auto& [pred, weight] : preds) {
        cumulative += weight;
        if (cumulative >= 0.5 * total) return pred;
    }
    return preds.back().first;
}

AdaBoostModel fit_adaboost_r2(const Matrix& x, std::span<const double> y,
                              const AdaBoostParams& params) {
    if (x.rows() == 0) throw EmptyTrainingSetError("AdaBoost.R2 needs training rows");
    if (params.n_rounds == 0) throw InvalidArgumentError("AdaBoost.R2 needs n_rounds >= 1");

    const std::size_t n = x.rows();
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    AdaBoostModel model;

    for (std::size_t round = 0; round < params.n_rounds; ++round) {
        TreeModel tree;
        if (round == 0) {
            // Uniform weights: fit the original sample, so a single round
            // coincides with the base learner.
            tree = fit_tree(x, y, params.base);
        } else {
            Rng rng = Rng::fork(params.seed, round);
            const auto indices = weighted_resample(weights, n, rng);
            const Matrix xs = rows_subset(x, indices);
            std::vector<double> ys(n);
            for (std::size_t i = 0; i < n; ++i) ys[i] = y[indices[i]];
            tree = fit_tree(xs, ys, params.base);
        }

        std::vector<double> errors(n);
        double max_error = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            errors[i] = std::abs(tree.predict_one(x.row(i)) - y[i]);
            max_error = std::max(max_error, errors[i]);
        }
        if (max_error <= 0.0) {
            // Degenerate round: a perfect fit gets a capped weight and ends
            // boosting.
            model.rounds.push_back(std::move(tree));
            model.log_weights.push_back(std::log(1.0 / 1e-10));
            break;
        }

        double avg_loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) avg_loss += weights[i] * (errors[i] / max_error);
        if (avg_loss >= 0.5) {
            if (model.rounds.empty()) {
                // A predictor must exist; keep the round at the boundary weight.
                model.rounds.push_back(std::move(tree));
                model.log_weights.push_back(std::log(1.0 / 0.5));
            }
            break;
        }

        const double beta = avg_loss / (1.0 - avg_loss);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            weights[i] *= std::pow(beta, 1.0 - errors[i] / max_error);
            total += weights[i];
        }
        for (double& w : weights) w /= total;

        model.rounds.push_back(std::move(tree));
        model.log_weights.push_back(std::log(1.0 / beta));
    }
    return model;
}

}  // namespace effortcast::baselines
