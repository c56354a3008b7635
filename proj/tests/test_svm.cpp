#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "texlab/svm.hpp"

using namespace texlab;

namespace {

// four gaussian blobs at the unit-square corners
void four_blobs(std::vector<Eigen::VectorXd>& xs, std::vector<int>& ys, int per_class,
                uint32_t seed) {
    const double centers[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd(0.0, 0.1);
    for (int cls = 0; cls < 4; ++cls)
        for (int i = 0; i < per_class; ++i) {
            Eigen::VectorXd x(2);
            x << centers[cls][0] + nd(rng), centers[cls][1] + nd(rng);
            xs.push_back(x);
            ys.push_back(cls);
        }
}

double train_accuracy(const SvmModel& model, const std::vector<Eigen::VectorXd>& xs,
                      const std::vector<int>& ys) {
    int ok = 0;
    for (size_t i = 0; i < xs.size(); ++i)
        if (predict(model, xs[i]).first == ys[i]) ++ok;
    return static_cast<double>(ok) / static_cast<double>(xs.size());
}

}  // namespace

TEST_CASE("four separable blobs reach training accuracy 1.0") {
    std::vector<Eigen::VectorXd> xs;
    std::vector<int> ys;
    four_blobs(xs, ys, 100, 7);
    const SvmModel model = train_classifier(xs, ys);
    REQUIRE(model.classes.size() == 4);
    CHECK(train_accuracy(model, xs, ys) == 1.0);
}

TEST_CASE("training is deterministic") {
    std::vector<Eigen::VectorXd> xs;
    std::vector<int> ys;
    four_blobs(xs, ys, 50, 7);
    const SvmModel a = train_classifier(xs, ys);
    const SvmModel b = train_classifier(xs, ys);
    for (size_t c = 0; c < a.classes.size(); ++c) {
        CHECK(a.classes[c].weights == b.classes[c].weights);
        CHECK(a.classes[c].bias == b.classes[c].bias);
    }
    CHECK(svm_to_json(a).dump() == svm_to_json(b).dump());
}

TEST_CASE("duplicating every training point leaves held-out predictions unchanged") {
    std::vector<Eigen::VectorXd> xs;
    std::vector<int> ys;
    four_blobs(xs, ys, 40, 7);
    std::vector<Eigen::VectorXd> xs2 = xs;
    std::vector<int> ys2 = ys;
    xs2.insert(xs2.end(), xs.begin(), xs.end());
    ys2.insert(ys2.end(), ys.begin(), ys.end());

    const SvmModel m1 = train_classifier(xs, ys);
    const SvmModel m2 = train_classifier(xs2, ys2);
    // per-sample averaging makes the objective duplication-invariant; compare
    // argmax away from the exact inter-blob boundaries, where finite training
    // leaves a sliver of ambiguity
    for (double gx = -0.3; gx <= 1.3; gx += 0.1)
        for (double gy = -0.3; gy <= 1.3; gy += 0.1) {
            if (std::abs(gx - 0.5) < 0.15 || std::abs(gy - 0.5) < 0.15) continue;
            Eigen::VectorXd p(2);
            p << gx, gy;
            CHECK(predict(m1, p).first == predict(m2, p).first);
        }
}

TEST_CASE("a single class cannot be trained") {
    std::vector<Eigen::VectorXd> xs(10, Eigen::VectorXd::Random(3));
    std::vector<int> ys(10, 0);
    CHECK_THROWS_AS(train_classifier(xs, ys), TrainingError);
}

TEST_CASE("predict evaluates the linear scores by hand") {
    SvmModel model;
    model.feature_len = 2;
    model.standardizer_mean = Eigen::VectorXd::Zero(2);
    model.standardizer_std = Eigen::VectorXd::Ones(2);
    for (int c = 0; c < 3; ++c) {
        SvmClass sc;
        sc.id = c;
        sc.name = "class" + std::to_string(c);
        sc.weights = Eigen::VectorXd::Zero(2);
        sc.bias = 0.0;
        model.classes.push_back(sc);
    }
    model.classes[1].weights << 1.0, 0.0;

    Eigen::VectorXd x(2);
    x << 2.0, 0.0;
    const auto [cls, scores] = predict(model, x);
    CHECK(cls == 1);
    CHECK(scores(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(scores(0) == 0.0);
    CHECK(scores(2) == 0.0);
}

TEST_CASE("all-equal scores break ties to class 0") {
    SvmModel model;
    model.feature_len = 2;
    model.standardizer_mean = Eigen::VectorXd::Zero(2);
    model.standardizer_std = Eigen::VectorXd::Ones(2);
    for (int c = 0; c < 4; ++c) {
        SvmClass sc;
        sc.id = c;
        sc.weights = Eigen::VectorXd::Zero(2);
        sc.bias = 0.0;
        model.classes.push_back(sc);
    }
    CHECK(predict(model, Eigen::VectorXd::Random(2)).first == 0);

    // adding a constant to all biases leaves the argmax unchanged
    for (auto& c : model.classes) c.bias += 3.5;
    CHECK(predict(model, Eigen::VectorXd::Random(2)).first == 0);
}

TEST_CASE("model JSON roundtrip preserves everything") {
    std::vector<Eigen::VectorXd> xs;
    std::vector<int> ys;
    four_blobs(xs, ys, 25, 3);
    SvmModel model = train_classifier(xs, ys, {}, {"a", "b", "c", "d"}, "dwt");
    const SvmModel back = svm_from_json(svm_to_json(model));
    CHECK(back.attribute == "dwt");
    CHECK(back.feature_len == model.feature_len);
    CHECK(back.standardizer_mean == model.standardizer_mean);
    CHECK(back.standardizer_std == model.standardizer_std);
    for (size_t c = 0; c < model.classes.size(); ++c) {
        CHECK(back.classes[c].name == model.classes[c].name);
        CHECK(back.classes[c].weights == model.classes[c].weights);
        CHECK(back.classes[c].bias == model.classes[c].bias);
    }
}

TEST_CASE("argument contracts") {
    std::vector<Eigen::VectorXd> xs;
    std::vector<int> ys;
    CHECK_THROWS_AS(train_classifier(xs, ys), ArgumentError);
    four_blobs(xs, ys, 5, 1);
    xs[3] = Eigen::VectorXd::Zero(7);
    CHECK_THROWS_AS(train_classifier(xs, ys), ArgumentError);

    std::vector<Eigen::VectorXd> good;
    std::vector<int> ylab;
    four_blobs(good, ylab, 10, 2);
    const SvmModel model = train_classifier(good, ylab);
    CHECK_THROWS_AS(predict(model, Eigen::VectorXd::Zero(5)), ArgumentError);
}
