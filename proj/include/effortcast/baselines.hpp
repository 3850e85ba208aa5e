#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "effortcast/dataset.hpp"
#include "effortcast/linalg.hpp"
#include "effortcast/rng.hpp"

namespace effortcast::baselines {

enum class EstimatorKind { Knn, LinReg, Svr, Tree, Forest, AdaBoostR2, Elm, Mlp };

EstimatorKind estimator_kind_from_string(const std::string& name);
/// Short id used in CLI flags and CSV output ("knn", "linreg", "svm", ...).
const char* estimator_id(EstimatorKind kind);
/// Report display name ("KNN Regression", "Support Vector Machine", ...).
const char* estimator_display_name(EstimatorKind kind);

enum class Activation { Sigmoid, Tanh, Relu };

/// One flat bag of knobs; each estimator reads its own fields. Defaults are
/// conventional and echoed into every report.
struct Hyperparams {
    EstimatorKind kind = EstimatorKind::Knn;
    std::uint64_t seed = 42;

    std::size_t knn_k = 5;

    double ridge_lambda = 1e-6;

    double svr_c = 1.0;
    double svr_epsilon = 0.1;
    std::size_t svr_epochs = 500;
    double svr_step = 0.05;

    std::size_t tree_max_depth = 8;
    std::size_t tree_min_leaf = 5;

    std::size_t forest_trees = 100;
    double forest_subsample = 0.8;    // bootstrap fraction; 1.0 = no resampling
    double forest_feature_frac = 1.0 / 3.0;

    std::size_t ab_rounds = 50;
    std::size_t ab_base_depth = 3;

    std::size_t elm_hidden = 200;
    Activation elm_activation = Activation::Sigmoid;

    std::size_t mlp_hidden = 64;
    std::size_t mlp_epochs = 500;
    double mlp_step = 0.05;

    void validate() const;
    std::string describe() const;
};

// ---------------------------------------------------------------------------
// Preprocessing: standardize + mean-impute numerics, one-hot + mode-impute
// categoricals. Fitted on training data only.

struct PreprocessState {
    struct NumericColumn {
        std::string feature;
        double mean = 0.0;
        double stddev = 1.0;
        double impute_value = 0.0;  // train mean
    };
    struct CategoricalColumn {
        std::string feature;
        std::vector<std::string> levels;  // lexicographic
        std::string impute_level;         // train mode
    };

    // Output layout: blocks in schema order; numeric -> one column,
    // categorical -> |levels| one-hot columns.
    struct Block {
        FeatureKind kind;
        std::size_t index;  // into numeric / categorical below
    };

    std::vector<Block> blocks;
    std::vector<NumericColumn> numeric;
    std::vector<CategoricalColumn> categorical;
    std::vector<std::string> dropped;  // zero-variance or all-missing features

    std::size_t dim() const;
};

PreprocessState fit_preprocess(const Dataset& train);
std::vector<double> transform(const PreprocessState& state, const ProjectRecord& record);
Matrix design_matrix(const PreprocessState& state, const Dataset& ds);
std::vector<double> targets(const Dataset& ds);

// ---------------------------------------------------------------------------
// Core fitters over plain matrices (the same code paths back the dataset
// level; exposed so tests can drive them with planted numeric fixtures).

class Regressor {
  public:
    virtual ~Regressor() = default;
    virtual double predict_one(std::span<const double> x) const = 0;
};

struct KnnModel final : Regressor {
    Matrix train_x;
    std::vector<double> train_y;
    std::size_t k = 1;
    double predict_one(std::span<const double> x) const override;
};
KnnModel fit_knn(Matrix x, std::vector<double> y, std::size_t k);

struct LinearModel final : Regressor {
    std::vector<double> weights;  // per input column
    double intercept = 0.0;
    double predict_one(std::span<const double> x) const override;
};
/// Ridge via normal equations; the intercept is unpenalized. With lambda = 0
/// a singular Gram matrix falls back to a tiny ridge unless
/// `singular_fallback` is false (then SingularSystemError).
LinearModel fit_linreg(const Matrix& x, std::span<const double> y, double lambda,
                       bool singular_fallback = true);

struct SvrModel final : Regressor {
    std::vector<double> weights;
    double bias = 0.0;
    double predict_one(std::span<const double> x) const override;
};
struct SvrParams {
    double c = 1.0;
    double epsilon = 0.1;
    std::size_t epochs = 500;
    double step = 0.05;
};
SvrModel fit_svr(const Matrix& x, std::span<const double> y, const SvrParams& params);
/// ½‖w‖² + C · Σ max(0, |w·xᵢ + b − yᵢ| − ε)
double svr_objective(const SvrModel& model, const Matrix& x, std::span<const double> y,
                     const SvrParams& params);

struct TreeModel final : Regressor {
    struct Node {
        bool leaf = true;
        double value = 0.0;       // leaf mean
        std::size_t feature = 0;  // split feature
        double threshold = 0.0;   // x[feature] <= threshold goes left
        std::size_t left = 0;
        std::size_t right = 0;
    };
    std::vector<Node> nodes;  // nodes[0] is the root
    double predict_one(std::span<const double> x) const override;
    std::size_t leaf_count() const;
};
struct TreeParams {
    std::size_t max_depth = 8;
    std::size_t min_leaf = 5;
};
TreeModel fit_tree(const Matrix& x, std::span<const double> y, const TreeParams& params);

struct ForestModel final : Regressor {
    std::vector<TreeModel> trees;
    double predict_one(std::span<const double> x) const override;  // mean of trees
};
struct ForestParams {
    std::size_t n_trees = 100;
    double subsample = 0.8;
    double feature_frac = 1.0 / 3.0;
    TreeParams tree;
    std::uint64_t seed = 42;
};
ForestModel fit_forest(const Matrix& x, std::span<const double> y, const ForestParams& params);

struct AdaBoostModel final : Regressor {
    std::vector<TreeModel> rounds;
    std::vector<double> log_weights;  // ln(1/β) per round
    double predict_one(std::span<const double> x) const override;  // weighted median
};
struct AdaBoostParams {
    std::size_t n_rounds = 50;
    TreeParams base{3, 1};
    std::uint64_t seed = 42;
};
/// Drucker's AdaBoost.R2 with linear loss. Round 1 fits the original sample;
/// later rounds fit weighted resamples. Average loss >= 0.5 stops boosting;
/// a zero-max-error round is kept with a capped weight and stops boosting.
AdaBoostModel fit_adaboost_r2(const Matrix& x, std::span<const double> y,
                              const AdaBoostParams& params);
/// The seeded draw AdaBoost uses: n indices by inverse-CDF over `weights`.
std::vector<std::size_t> weighted_resample(const std::vector<double>& weights, std::size_t n,
                                           Rng& rng);

struct ElmModel final : Regressor {
    Matrix hidden_weights;             // n_hidden × n_inputs
    std::vector<double> hidden_bias;   // n_hidden
    std::vector<double> output_weights;  // n_hidden + 1 (bias last)
    Activation activation = Activation::Sigmoid;
    double predict_one(std::span<const double> x) const override;
};
struct ElmParams {
    std::size_t n_hidden = 200;
    Activation activation = Activation::Sigmoid;
    std::uint64_t seed = 42;
    double ridge = 1e-10;
    /// Range of the random hidden weights/biases. Large enough to push the
    /// sigmoids out of their near-linear region, which is what gives a wide
    /// hidden layer its interpolation power.
    double hidden_scale = 4.0;
};
ElmModel fit_elm(const Matrix& x, std::span<const double> y, const ElmParams& params);

struct MlpModel final : Regressor {
    std::size_t n_inputs = 0;
    std::size_t n_hidden = 0;
    std::vector<double> params;  // [W1 (h×d), b1 (h), w2 (h), b2 (1)]
    double y_mean = 0.0;         // internal target scaling
    double y_scale = 1.0;
    std::vector<double> loss_curve;  // per-epoch training loss
    double predict_one(std::span<const double> x) const override;
};
struct MlpParams {
    std::size_t n_hidden = 64;
    std::size_t epochs = 500;
    double step = 0.05;
    std::uint64_t seed = 42;
};
/// One tanh hidden layer, linear output, full-batch gradient descent on mean
/// squared loss. Throws DivergenceDetectedError when the loss turns
/// non-finite.
MlpModel fit_mlp(const Matrix& x, std::span<const double> y, const MlpParams& params);

/// Parameter count for a given shape: h·d + h + h + 1.
std::size_t mlp_param_count(std::size_t n_inputs, std::size_t n_hidden);
/// Mean squared loss of the network `theta` on (x, y); used with mlp_gradient
/// by the finite-difference check.
double mlp_loss(std::size_t n_inputs, std::size_t n_hidden, std::span<const double> theta,
                const Matrix& x, std::span<const double> y);
std::vector<double> mlp_gradient(std::size_t n_inputs, std::size_t n_hidden,
                                 std::span<const double> theta, const Matrix& x,
                                 std::span<const double> y);

// ---------------------------------------------------------------------------
// Dataset-level training

struct TrainedModel {
    std::string kind;  // display name
    Hyperparams params;
    PreprocessState preprocess;
    std::uint64_t train_seed = 0;
    std::shared_ptr<const Regressor> impl;

    double predict(const ProjectRecord& record) const;
    std::vector<double> predict(const Dataset& ds) const;
};

TrainedModel fit_model(const Dataset& train, const Hyperparams& params);

}  // namespace effortcast::baselines
