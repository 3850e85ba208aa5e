#include <cmath>
#include <sstream>

#include "effortcast/baselines.hpp"
#include "effortcast/strutil.hpp"

namespace effortcast::baselines {

EstimatorKind estimator_kind_from_string(const std::string& name) {
    const std::string id = to_lower(trim(name));
    if (id == "knn") return EstimatorKind::Knn;
    if (id == "linreg" || id == "linear") return EstimatorKind::LinReg;
    if (id == "svm" || id == "svr") return EstimatorKind::Svr;
    if (id == "dt" || id == "tree") return EstimatorKind::Tree;
    if (id == "rf" || id == "forest") return EstimatorKind::Forest;
    if (id == "abreg" || id == "adaboost") return EstimatorKind::AdaBoostR2;
    if (id == "elm") return EstimatorKind::Elm;
    if (id == "mlp") return EstimatorKind::Mlp;
    throw InvalidArgumentError("unknown estimator '" + name +
                               "' (knn, linreg, svm, dt, rf, abreg, elm, mlp)");
}

const char* estimator_id(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::Knn: return "knn";
        case EstimatorKind::LinReg: return "linreg";
        case EstimatorKind::Svr: return "svm";
        case EstimatorKind::Tree: return "dt";
        case EstimatorKind::Forest: return "rf";
        case EstimatorKind::AdaBoostR2: return "abreg";
        case EstimatorKind::Elm: return "elm";
        case EstimatorKind::Mlp: return "mlp";
    }
    return "unknown";
}

const char* estimator_display_name(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::Knn: return "KNN Regression";
        case EstimatorKind::LinReg: return "Linear Regression";
        case EstimatorKind::Svr: return "Support Vector Machine";
        case EstimatorKind::Tree: return "Decision Tree";
        case EstimatorKind::Forest: return "Random Forest";
        case EstimatorKind::AdaBoostR2: return "Ada Boost Regression";
        case EstimatorKind::Elm: return "Extreme Learning Machine";
        case EstimatorKind::Mlp: return "Multi-Layer Perceptron";
    }
    return "unknown";
}

void Hyperparams::validate() const {
    const auto positive_count = [](std::size_t v, const char* what) {
        if (v == 0) throw InvalidArgumentError(std::string(what) + " must be >= 1");
    };
    const auto positive_rate = [](double v, const char* what) {
        if (!(v > 0.0)) throw InvalidArgumentError(std::string(what) + " must be > 0");
    };
    positive_count(knn_k, "knn k");
    if (ridge_lambda < 0.0) throw InvalidArgumentError("ridge lambda must be >= 0");
    if (svr_c < 0.0) throw InvalidArgumentError("svr C must be >= 0");
    if (svr_epsilon < 0.0) throw InvalidArgumentError("svr epsilon must be >= 0");
    positive_count(svr_epochs, "svr epochs");
    positive_rate(svr_step, "svr step");
    positive_count(tree_max_depth, "tree max_depth");
    positive_count(tree_min_leaf, "tree min_leaf");
    positive_count(forest_trees, "forest n_trees");
    if (forest_subsample <= 0.0 || forest_subsample > 1.0) {
        throw InvalidArgumentError("forest subsample must lie in (0, 1]");
    }
    if (forest_feature_frac <= 0.0 || forest_feature_frac > 1.0) {
        throw InvalidArgumentError("forest feature_frac must lie in (0, 1]");
    }
    positive_count(ab_rounds, "adaboost n_rounds");
    positive_count(ab_base_depth, "adaboost base max_depth");
    positive_count(elm_hidden, "elm n_hidden");
    positive_count(mlp_hidden, "mlp n_hidden");
    positive_count(mlp_epochs, "mlp epochs");
    positive_rate(mlp_step, "mlp step");
}

std::string Hyperparams::describe() const {
    std::ostringstream out;
    switch (kind) {
        case EstimatorKind::Knn:
            out << "k=" << knn_k;
            break;
        case EstimatorKind::LinReg:
            out << "lambda=" << format_decimal(ridge_lambda);
            break;
        case EstimatorKind::Svr:
            out << "C=" << format_decimal(svr_c) << " epsilon=" << format_decimal(svr_epsilon)
                << " epochs=" << svr_epochs << " step=" << format_decimal(svr_step);
            break;
        case EstimatorKind::Tree:
            out << "max_depth=" << tree_max_depth << " min_leaf=" << tree_min_leaf;
            break;
        case EstimatorKind::Forest:
            out << "n_trees=" << forest_trees << " subsample=" << format_decimal(forest_subsample)
                << " feature_frac=" << format_decimal(forest_feature_frac)
                << " max_depth=" << tree_max_depth << " min_leaf=" << tree_min_leaf
                << " seed=" << seed;
            break;
        case EstimatorKind::AdaBoostR2:
            out << "n_rounds=" << ab_rounds << " base_max_depth=" << ab_base_depth
                << " seed=" << seed;
            break;
        case EstimatorKind::Elm:
            out << "n_hidden=" << elm_hidden << " activation="
                << (elm_activation == Activation::Sigmoid
                        ? "sigmoid"
                        : (elm_activation == Activation::Tanh ? "tanh" : "relu"))
                << " seed=" << seed;
            break;
        case EstimatorKind::Mlp:
            out << "n_hidden=" << mlp_hidden << " epochs=" << mlp_epochs
                << " step=" << format_decimal(mlp_step) << " seed=" << seed;
            break;
    }
    return out.str();
}

namespace {

/// Wraps a model fitted on standardized targets; predictions unscale.
struct TargetScaledRegressor final : Regressor {
    std::shared_ptr<const Regressor> inner;
    double mean = 0.0;
    double scale = 1.0;
    double predict_one(std::span<const double> x) const override {
        return inner->predict_one(x) * scale + mean;
    }
};

}  // namespace

double TrainedModel::predict(const ProjectRecord& record) const {
    return impl->predict_one(transform(preprocess, record));
}

std::vector<double> TrainedModel::predict(const Dataset& ds) const {
    std::vector<double> out;
    out.reserve(ds.size());
    for (const auto& record : ds.records) out.push_back(predict(record));
    return out;
}

TrainedModel fit_model(const Dataset& train, const Hyperparams& params) {
    params.validate();
    if (train.records.empty()) throw EmptyTrainingSetError("cannot train on an empty dataset");

    TrainedModel model;
    model.kind = estimator_display_name(params.kind);
    model.params = params;
    model.train_seed = params.seed;
    model.preprocess = fit_preprocess(train);

    const Matrix x = design_matrix(model.preprocess, train);
    const std::vector<double> y = targets(train);

    switch (params.kind) {
        case EstimatorKind::Knn:
            model.impl = std::make_shared<KnnModel>(fit_knn(x, y, params.knn_k));
            break;
        case EstimatorKind::LinReg:
            model.impl = std::make_shared<LinearModel>(fit_linreg(x, y, params.ridge_lambda));
            break;
        case EstimatorKind::Svr: {
            // The hinge/ridge balance of the SVR objective only makes sense
            // on a unit target scale, so the pipeline standardizes targets
            // around this estimator; C and epsilon are in standardized units.
            double mean = 0.0;
            for (double v : y) mean += v;
            mean /= static_cast<double>(y.size());
            double var = 0.0;
            for (double v : y) var += (v - mean) * (v - mean);
            var /= static_cast<double>(y.size());
            const double scale = var > 0.0 ? std::sqrt(var) : 1.0;
            std::vector<double> scaled(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) scaled[i] = (y[i] - mean) / scale;

            auto wrapper = std::make_shared<TargetScaledRegressor>();
            wrapper->inner = std::make_shared<SvrModel>(
                fit_svr(x, scaled,
                        {params.svr_c, params.svr_epsilon, params.svr_epochs, params.svr_step}));
            wrapper->mean = mean;
            wrapper->scale = scale;
            model.impl = std::move(wrapper);
            break;
        }
        case EstimatorKind::Tree:
            model.impl = std::make_shared<TreeModel>(
                fit_tree(x, y, {params.tree_max_depth, params.tree_min_leaf}));
            break;
        case EstimatorKind::Forest:
            model.impl = std::make_shared<ForestModel>(
                fit_forest(x, y, {params.forest_trees, params.forest_subsample,
                                  params.forest_feature_frac,
                                  {params.tree_max_depth, params.tree_min_leaf}, params.seed}));
            break;
        case EstimatorKind::AdaBoostR2:
            model.impl = std::make_shared<AdaBoostModel>(
                fit_adaboost_r2(x, y, {params.ab_rounds, {params.ab_base_depth, 1}, params.seed}));
            break;
        case EstimatorKind::Elm: {
            ElmParams elm;
            elm.n_hidden = params.elm_hidden;
            elm.activation = params.elm_activation;
            elm.seed = params.seed;
            model.impl = std::make_shared<ElmModel>(fit_elm(x, y, elm));
            break;
        }
        case EstimatorKind::Mlp:
            model.impl = std::make_shared<MlpModel>(
                fit_mlp(x, y, {params.mlp_hidden, params.mlp_epochs, params.mlp_step,
                               params.seed}));
            break;
    }
    return model;
}

}  // namespace effortcast::baselines
