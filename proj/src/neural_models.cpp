#include <algorithm>
#include <cmath>
#include <numeric>

#include "effortcast/baselines.hpp"

namespace effortcast::baselines {

namespace {

double activate(Activation activation, double z) {
    switch (activation) {
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::Tanh: return std::tanh(z);
        case Activation::Relu: return z > 0.0 ? z : 0.0;
    }
    return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// Extreme learning machine: seeded random hidden layer, least-squares output

double ElmModel::predict_one(std::span<const double> x) const {
    const std::size_t h = hidden_weights.rows();
    double out = output_weights[h];  // bias
    for (std::size_t j = 0; j < h; ++j) {
        const double z = dot(hidden_weights.row(j), x) + hidden_bias[j];
        out += output_weights[j] * activate(activation, z);
    }
    return out;
}

ElmModel fit_elm(const Matrix& x, std::span<const double> y, const ElmParams& params) {
    if (x.rows() == 0) throw EmptyTrainingSetError("ELM needs training rows");
    if (params.n_hidden == 0) throw InvalidArgumentError("ELM needs n_hidden >= 1");

    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const std::size_t h = params.n_hidden;

    ElmModel model;
    model.activation = params.activation;
    model.hidden_weights = Matrix(h, d);
    model.hidden_bias.resize(h);
    Rng rng(params.seed);
    const double s = params.hidden_scale;
    for (std::size_t j = 0; j < h; ++j) {
        for (std::size_t c = 0; c < d; ++c) model.hidden_weights.at(j, c) = rng.uniform(-s, s);
        model.hidden_bias[j] = rng.uniform(-s, s);
    }

    Matrix hidden(n, h + 1);  // constant column last
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = x.row(r);
        for (std::size_t j = 0; j < h; ++j) {
            const double z = dot(model.hidden_weights.row(j), row) + model.hidden_bias[j];
            hidden.at(r, j) = activate(params.activation, z);
        }
        hidden.at(r, h) = 1.0;
    }

    const std::size_t cols = h + 1;
    if (cols <= n) {
        Matrix g = gram(hidden);
        double trace = 0.0;
        for (std::size_t i = 0; i < cols; ++i) trace += g.at(i, i);
        const double ridge = params.ridge * (trace / static_cast<double>(cols) + 1.0);
        for (std::size_t i = 0; i < cols; ++i) g.at(i, i) += ridge;
        model.output_weights = solve_linear(std::move(g), mul_transpose(hidden, y));
    } else {
        // Wide case (n_hidden >= n): solve the dual for the least-norm fit.
        Matrix k(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const double v = dot(hidden.row(i), hidden.row(j));
                k.at(i, j) = v;
                k.at(j, i) = v;
            }
        }
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += k.at(i, i);
        const double ridge = params.ridge * (trace / static_cast<double>(n) + 1.0);
        for (std::size_t i = 0; i < n; ++i) k.at(i, i) += ridge;
        const std::vector<double> alpha =
            solve_linear(std::move(k), std::vector<double>(y.begin(), y.end()));
        model.output_weights = mul_transpose(hidden, alpha);
    }
    return model;
}

// ---------------------------------------------------------------------------
// One-hidden-layer MLP, tanh units, full-batch gradient descent

std::size_t mlp_param_count(std::size_t n_inputs, std::size_t n_hidden) {
    return n_hidden * n_inputs + n_hidden + n_hidden + 1;
}

namespace {

struct MlpView {
    std::span<const double> w1;  // h × d row-major
    std::span<const double> b1;  // h
    std::span<const double> w2;  // h
    double b2;
};

MlpView view(std::size_t d, std::size_t h, std::span<const double> theta) {
    return {theta.subspan(0, h * d), theta.subspan(h * d, h), theta.subspan(h * d + h, h),
            theta[h * d + 2 * h]};
}

double forward(std::size_t d, std::size_t h, std::span<const double> theta,
               std::span<const double> x, std::vector<double>* hidden_out) {
    const MlpView v = view(d, h, theta);
    double out = v.b2;
    for (std::size_t j = 0; j < h; ++j) {
        double z = v.b1[j];
        for (std::size_t c = 0; c < d; ++c) z += v.w1[j * d + c] * x[c];
        const double a = std::tanh(z);
        if (hidden_out) (*hidden_out)[j] = a;
        out += v.w2[j] * a;
    }
    return out;
}

}  // namespace

double mlp_loss(std::size_t n_inputs, std::size_t n_hidden, std::span<const double> theta,
                const Matrix& x, std::span<const double> y) {
    double loss = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const double err = forward(n_inputs, n_hidden, theta, x.row(r), nullptr) - y[r];
        loss += err * err;
    }
    return loss / static_cast<double>(x.rows());
}

std::vector<double> mlp_gradient(std::size_t n_inputs, std::size_t n_hidden,
                                 std::span<const double> theta, const Matrix& x,
                                 std::span<const double> y) {
    const std::size_t d = n_inputs;
    const std::size_t h = n_hidden;
    const MlpView v = view(d, h, theta);
    std::vector<double> grad(theta.size(), 0.0);
    std::vector<double> hidden(h);
    const double scale = 2.0 / static_cast<double>(x.rows());

    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto row = x.row(r);
        const double err = forward(d, h, theta, row, &hidden) - y[r];
        const double g_out = scale * err;
        grad[h * d + 2 * h] += g_out;  // b2
        for (std::size_t j = 0; j < h; ++j) {
            grad[h * d + h + j] += g_out * hidden[j];  // w2
            const double g_hidden = g_out * v.w2[j] * (1.0 - hidden[j] * hidden[j]);
            grad[h * d + j] += g_hidden;  // b1
            for (std::size_t c = 0; c < d; ++c) grad[j * d + c] += g_hidden * row[c];
        }
    }
    return grad;
}

double MlpModel::predict_one(std::span<const double> x) const {
    return forward(n_inputs, n_hidden, params, x, nullptr) * y_scale + y_mean;
}

MlpModel fit_mlp(const Matrix& x, std::span<const double> y, const MlpParams& params) {
    if (x.rows() == 0) throw EmptyTrainingSetError("MLP needs training rows");
    if (params.n_hidden == 0 || params.step <= 0.0) {
        throw InvalidArgumentError("MLP needs n_hidden >= 1 and step > 0");
    }

    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const std::size_t h = params.n_hidden;

    MlpModel model;
    model.n_inputs = d;
    model.n_hidden = h;

    // Targets are centred and scaled internally; predictions unscale.
    double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    model.y_mean = mean;
    model.y_scale = var > 0.0 ? std::sqrt(var) : 1.0;
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = (y[i] - mean) / model.y_scale;

    Rng rng(params.seed);
    model.params.resize(mlp_param_count(d, h));
    const double w1_range = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(1, d)));
    const double w2_range = 1.0 / std::sqrt(static_cast<double>(h));
    for (std::size_t i = 0; i < h * d; ++i) model.params[i] = rng.uniform(-w1_range, w1_range);
    for (std::size_t i = 0; i < h; ++i) model.params[h * d + i] = rng.uniform(-0.1, 0.1);
    for (std::size_t i = 0; i < h; ++i) {
        model.params[h * d + h + i] = rng.uniform(-w2_range, w2_range);
    }
    model.params[h * d + 2 * h] = 0.0;

    model.loss_curve.reserve(params.epochs);
    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        const auto grad = mlp_gradient(d, h, model.params, x, scaled);
        for (std::size_t i = 0; i < grad.size(); ++i) model.params[i] -= params.step * grad[i];
        const double loss = mlp_loss(d, h, model.params, x, scaled);
        if (!std::isfinite(loss)) {
            throw DivergenceDetectedError("MLP training diverged at epoch " +
                                          std::to_string(epoch + 1) + " (loss is not finite); " +
                                          "reduce the step size");
        }
        model.loss_curve.push_back(loss);
    }
    return model;
}

}  // namespace effortcast::baselines
