#include <algorithm>
#include <cmath>
#include <numeric>

#include "effortcast/baselines.hpp"

namespace effortcast::baselines {

// ---------------------------------------------------------------------------
// KNN

double KnnModel::predict_one(std::span<const double> x) const {
    const std::size_t n = train_x.rows();
    std::vector<std::pair<double, std::size_t>> distances;
    distances.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = train_x.row(r);
        double d2 = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const double diff = row[c] - x[c];
            d2 += diff * diff;
        }
        distances.emplace_back(d2, r);  // index breaks distance ties
    }
    std::partial_sort(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(k),
                      distances.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += train_y[distances[i].second];
    return sum / static_cast<double>(k);
}

KnnModel fit_knn(Matrix x, std::vector<double> y, std::size_t k) {
    if (x.rows() == 0) throw EmptyTrainingSetError("KNN needs at least one training row");
    if (k == 0) throw InvalidArgumentError("KNN needs k >= 1");
    if (k > x.rows()) {
        throw KExceedsTrainingSizeError("k = " + std::to_string(k) + " exceeds training size " +
                                        std::to_string(x.rows()));
    }
    KnnModel model;
    model.train_x = std::move(x);
    model.train_y = std::move(y);
    model.k = k;
    return model;
}

// ---------------------------------------------------------------------------
// Ridge linear regression (normal equations, unpenalized intercept)

double LinearModel::predict_one(std::span<const double> x) const {
    return dot(x, weights) + intercept;
}

LinearModel fit_linreg(const Matrix& x, std::span<const double> y, double lambda,
                       bool singular_fallback) {
    if (x.rows() == 0) throw EmptyTrainingSetError("linear regression needs training rows");
    if (lambda < 0.0) throw InvalidArgumentError("ridge lambda must be >= 0");
    const std::size_t d = x.cols();

    // Augmented design [X | 1]; the intercept column carries no penalty.
    Matrix design(x.rows(), d + 1);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto src = x.row(r);
        auto dst = design.row(r);
        std::copy(src.begin(), src.end(), dst.begin());
        dst[d] = 1.0;
    }

    const auto solve_with = [&](double ridge) {
        Matrix g = gram(design);
        for (std::size_t i = 0; i < d; ++i) g.at(i, i) += ridge;
        return solve_linear(std::move(g), mul_transpose(design, y));
    };

    std::vector<double> coef;
    try {
        coef = solve_with(lambda);
    } catch (const SingularSystemError&) {
        if (lambda > 0.0 || !singular_fallback) throw;
        double scale = 0.0;
        for (std::size_t r = 0; r < x.rows(); ++r) {
            for (double v : x.row(r)) scale += v * v;
        }
        scale = scale / std::max<std::size_t>(1, d) + 1.0;
        coef = solve_with(1e-10 * scale);
    }

    LinearModel model;
    model.weights.assign(coef.begin(), coef.begin() + static_cast<std::ptrdiff_t>(d));
    model.intercept = coef[d];
    return model;
}

// ---------------------------------------------------------------------------
// Linear epsilon-insensitive SVR, full-batch subgradient descent

double SvrModel::predict_one(std::span<const double> x) const { return dot(x, weights) + bias; }

double svr_objective(const SvrModel& model, const Matrix& x, std::span<const double> y,
                     const SvrParams& params) {
    double obj = 0.5 * dot(model.weights, model.weights);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const double err = std::abs(model.predict_one(x.row(r)) - y[r]);
        obj += params.c * std::max(0.0, err - params.epsilon);
    }
    return obj;
}

SvrModel fit_svr(const Matrix& x, std::span<const double> y, const SvrParams& params) {
    if (x.rows() == 0) throw EmptyTrainingSetError("SVR needs training rows");
    if (params.epochs == 0 || params.step <= 0.0 || params.epsilon < 0.0 || params.c < 0.0) {
        throw InvalidArgumentError("SVR needs epochs >= 1, step > 0, epsilon >= 0, C >= 0");
    }
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();

    SvrModel model;
    model.weights.assign(d, 0.0);
    model.bias = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);

    std::vector<double> grad_w(d, 0.0);
    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        std::fill(grad_w.begin(), grad_w.end(), 0.0);
        double grad_b = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double margin = model.predict_one(x.row(r)) - y[r];
            if (std::abs(margin) <= params.epsilon) continue;
            const double sign = margin > 0.0 ? 1.0 : -1.0;
            const auto row = x.row(r);
            for (std::size_t c = 0; c < d; ++c) grad_w[c] += params.c * sign * row[c];
            grad_b += params.c * sign;
        }
        // Objective scaled by 1/n (same minimizer, size-independent step).
        const double eta =
            params.step / (1.0 + static_cast<double>(epoch) / 50.0) / static_cast<double>(n);
        for (std::size_t c = 0; c < d; ++c) {
            model.weights[c] -= eta * (model.weights[c] + grad_w[c]);
        }
        model.bias -= eta * grad_b;
    }
    return model;
}

}  // namespace effortcast::baselines
