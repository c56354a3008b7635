#ifndef TEXLAB_SVM_HPP
#define TEXLAB_SVM_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "texlab/types.hpp"

namespace texlab {

struct SvmClass {
    int id{};
    std::string name;
    Eigen::VectorXd weights;
    double bias{};
};

struct SvmModel {
    std::string attribute;
    Eigen::Index feature_len{};
    std::vector<SvmClass> classes;        // ordered by id
    Eigen::VectorXd standardizer_mean;
    Eigen::VectorXd standardizer_std;     // floored at 1e-12
};

struct SvmTrainConfig {
    double C = 1.0;
    int epochs = 200;
    uint32_t seed = 0;
};

inline const std::vector<std::string>& default_class_names() {
    static const std::vector<std::string> names = {"chaotic", "faults", "salt", "other"};
    return names;
}

namespace svmdetail {

// Binary hinge objective: 0.5 ||w||^2 + C * sum_i max(0, 1 - y_i (w.x_i + b))
inline double objective(const std::vector<Eigen::VectorXd>& xs, const std::vector<double>& ys,
                        const Eigen::VectorXd& w, double b, double C) {
    double hinge = 0.0;
    for (size_t i = 0; i < xs.size(); ++i)
        hinge += std::max(0.0, 1.0 - ys[i] * (w.dot(xs[i]) + b));
    return 0.5 * w.squaredNorm() + C * hinge;
}

// Epoch-shuffled subgradient descent with step 1/(lambda t), lambda = 1/(C n).
// The bias takes unregularized steps of size 1/t. Weights with the lowest
// end-of-epoch objective are retained.
inline void train_binary(const std::vector<Eigen::VectorXd>& xs, const std::vector<double>& ys,
                         double C, int epochs, uint32_t seed, Eigen::VectorXd& w_out,
                         double& b_out) {
    const size_t n = xs.size();
    const Eigen::Index dim = xs[0].size();
    const double lambda = 1.0 / (C * static_cast<double>(n));

    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
    double b = 0.0;
    Eigen::VectorXd best_w = w;
    double best_b = b;
    double best_obj = objective(xs, ys, w, b, C);
    double prev_obj = best_obj;

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::mt19937 rng(seed);
    long t = 0;

    for (int epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t idx : order) {
            ++t;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double margin = ys[idx] * (w.dot(xs[idx]) + b);
            w *= (1.0 - eta * lambda);
            if (margin < 1.0) {
                w += (eta * ys[idx]) * xs[idx];
                b += ys[idx] / static_cast<double>(t);
            }
        }
        const double obj = objective(xs, ys, w, b, C);
        if (obj < best_obj) {
            best_obj = obj;
            best_w = w;
            best_b = b;
        }
        if (std::abs(prev_obj - obj) < 1e-6 * std::max(1.0, std::abs(prev_obj))) break;
        prev_obj = obj;
    }
    w_out = best_w;
    b_out = best_b;
}

}  // namespace svmdetail

/// One-vs-all linear SVMs over z-scored features. Deterministic for a fixed
/// (data, C, epochs, seed).
inline SvmModel train_classifier(const std::vector<Eigen::VectorXd>& features,
                                 const std::vector<int>& labels, const SvmTrainConfig& cfg = {},
                                 const std::vector<std::string>& class_names = default_class_names(),
                                 const std::string& attribute = "") {
    if (features.empty() || features.size() != labels.size())
        throw ArgumentError("train_classifier: features/labels size mismatch");
    const Eigen::Index dim = features[0].size();
    for (const auto& f : features)
        if (f.size() != dim) throw ArgumentError("train_classifier: inconsistent feature lengths");
    std::set<int> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) throw TrainingError("train_classifier: need at least 2 classes");
    const int n_classes = *distinct.rbegin() + 1;
    if (*distinct.begin() < 0) throw ArgumentError("train_classifier: negative class id");

    SvmModel model;
    model.attribute = attribute;
    model.feature_len = dim;
    model.standardizer_mean = Eigen::VectorXd::Zero(dim);
    for (const auto& f : features) model.standardizer_mean += f;
    model.standardizer_mean /= static_cast<double>(features.size());
    Eigen::VectorXd var = Eigen::VectorXd::Zero(dim);
    for (const auto& f : features) var += (f - model.standardizer_mean).cwiseAbs2();
    var /= static_cast<double>(features.size());
    model.standardizer_std = var.cwiseSqrt().cwiseMax(1e-12);

    std::vector<Eigen::VectorXd> xs;
    xs.reserve(features.size());
    for (const auto& f : features)
        xs.push_back((f - model.standardizer_mean).cwiseQuotient(model.standardizer_std));

    for (int cls = 0; cls < n_classes; ++cls) {
        std::vector<double> ys(labels.size());
        for (size_t i = 0; i < labels.size(); ++i) ys[i] = labels[i] == cls ? 1.0 : -1.0;
        SvmClass sc;
        sc.id = cls;
        sc.name = static_cast<size_t>(cls) < class_names.size()
                      ? class_names[static_cast<size_t>(cls)]
                      : "class" + std::to_string(cls);
        svmdetail::train_binary(xs, ys, cfg.C, cfg.epochs, cfg.seed + static_cast<uint32_t>(cls),
                                sc.weights, sc.bias);
        model.classes.push_back(std::move(sc));
    }
    return model;
}

/// Argmax of per-class scores w_c . z(x) + b_c; ties go to the lowest id.
inline std::pair<int, Eigen::VectorXd> predict(const SvmModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.feature_len) throw ArgumentError("predict: feature length mismatch");
    const Eigen::VectorXd z =
        (x - model.standardizer_mean).cwiseQuotient(model.standardizer_std);
    Eigen::VectorXd scores(static_cast<Eigen::Index>(model.classes.size()));
    for (size_t c = 0; c < model.classes.size(); ++c)
        scores(static_cast<Eigen::Index>(c)) = model.classes[c].weights.dot(z) + model.classes[c].bias;
    int best = 0;
    for (Eigen::Index c = 1; c < scores.size(); ++c)
        if (scores(c) > scores(best)) best = static_cast<int>(c);
    return {best, scores};
}

inline nlohmann::json svm_to_json(const SvmModel& model) {
    nlohmann::json j;
    j["attribute"] = model.attribute;
    j["feature_len"] = model.feature_len;
    j["classes"] = nlohmann::json::array();
    for (const auto& c : model.classes) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["name"] = c.name;
        jc["bias"] = c.bias;
        jc["weights"] = std::vector<double>(c.weights.data(), c.weights.data() + c.weights.size());
        j["classes"].push_back(jc);
    }
    j["standardizer"]["mean"] = std::vector<double>(
        model.standardizer_mean.data(), model.standardizer_mean.data() + model.standardizer_mean.size());
    j["standardizer"]["std"] = std::vector<double>(
        model.standardizer_std.data(), model.standardizer_std.data() + model.standardizer_std.size());
    return j;
}

inline SvmModel svm_from_json(const nlohmann::json& j) {
    SvmModel model;
    model.attribute = j.at("attribute").get<std::string>();
    model.feature_len = j.at("feature_len").get<Eigen::Index>();
    for (const auto& jc : j.at("classes")) {
        SvmClass c;
        c.id = jc.at("id").get<int>();
        c.name = jc.at("name").get<std::string>();
        c.bias = jc.at("bias").get<double>();
        const auto w = jc.at("weights").get<std::vector<double>>();
        c.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
        model.classes.push_back(std::move(c));
    }
    const auto mean = j.at("standardizer").at("mean").get<std::vector<double>>();
    const auto sd = j.at("standardizer").at("std").get<std::vector<double>>();
    model.standardizer_mean =
        Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    model.standardizer_std =
        Eigen::Map<const Eigen::VectorXd>(sd.data(), static_cast<Eigen::Index>(sd.size()));
    if (model.standardizer_mean.size() != model.feature_len)
        throw FormatError("svm_from_json: standardizer length mismatch");
    for (const auto& c : model.classes)
        if (c.weights.size() != model.feature_len)
            throw FormatError("svm_from_json: weight length mismatch");
    return model;
}

}  // namespace texlab

#endif
