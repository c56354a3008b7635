#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "texlab/metrics.hpp"

using namespace texlab;

namespace {

Mat<int> strip(std::initializer_list<int> vals) {
    Mat<int> m(1, static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (int v : vals) m(0, i++) = v;
    return m;
}

Mat<int> random_labels(Eigen::Index rows, Eigen::Index cols, int n_classes, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0, n_classes - 1);
    Mat<int> m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = d(rng);
    return m;
}

// independent set-counting oracle over pixel index sets
struct Oracle {
    double pa;
    std::vector<double> iou;  // -1 for absent classes
    double miu, fwiu;
};

Oracle oracle_metrics(const Mat<int>& pred, const Mat<int>& ref, int n_classes) {
    const Eigen::Index n = pred.size();
    Oracle o;
    long correct = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (pred(i) == ref(i)) ++correct;
    o.pa = static_cast<double>(correct) / static_cast<double>(n);

    double miu_sum = 0;
    long miu_n = 0;
    double fw_sum = 0;
    long fw_w = 0;
    for (int c = 0; c < n_classes; ++c) {
        std::set<Eigen::Index> G, F;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (ref(i) == c) G.insert(i);
            if (pred(i) == c) F.insert(i);
        }
        std::set<Eigen::Index> uni = G;
        uni.insert(F.begin(), F.end());
        long inter = 0;
        for (Eigen::Index i : G)
            if (F.count(i)) ++inter;
        if (uni.empty()) {
            o.iou.push_back(-1.0);
            continue;
        }
        const double iu = static_cast<double>(inter) / static_cast<double>(uni.size());
        o.iou.push_back(iu);
        miu_sum += iu;
        ++miu_n;
        fw_sum += static_cast<double>(G.size()) * iu;
        fw_w += static_cast<long>(G.size());
    }
    o.miu = miu_n > 0 ? miu_sum / static_cast<double>(miu_n) : 0.0;
    o.fwiu = fw_w > 0 ? fw_sum / static_cast<double>(fw_w) : 0.0;
    return o;
}

}  // namespace

TEST_CASE("confusion matrix on the strip fixture") {
    const Mat<int> ref = strip({0, 0, 1, 1});
    const Mat<int> pred = strip({0, 1, 1, 1});
    const Mat<long> cm = confusion_matrix(pred, ref, 2);
    CHECK(cm(0, 0) == 1);
    CHECK(cm(0, 1) == 1);
    CHECK(cm(1, 0) == 0);
    CHECK(cm(1, 1) == 2);

    CHECK(pixel_accuracy(cm) == doctest::Approx(0.75).epsilon(1e-14));
    const std::vector<double> iou = intersection_over_union(cm);
    CHECK(iou[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(iou[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    const MetricsReport rep = aggregate_metrics(cm);
    CHECK(rep.miu == doctest::Approx(7.0 / 12.0).epsilon(1e-14));
    CHECK(rep.fwiu == doctest::Approx(7.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("perfect and degenerate agreements") {
    std::mt19937 rng(301);
    const Mat<int> m = random_labels(6, 6, 3, rng);
    const Mat<long> cm = confusion_matrix(m, m, 3);
    CHECK(pixel_accuracy(cm) == 1.0);
    for (double v : intersection_over_union(cm))
        if (v >= 0.0) CHECK(v == 1.0);

    // complement prediction on two classes: empty diagonal
    const Mat<int> ones = Mat<int>::Constant(3, 3, 1);
    const Mat<int> zeros = Mat<int>::Zero(3, 3);
    CHECK(pixel_accuracy(confusion_matrix(ones, zeros, 2)) == 0.0);
    const std::vector<double> iou = intersection_over_union(confusion_matrix(ones, zeros, 2));
    CHECK(iou[0] == 0.0);
    CHECK(iou[1] == 0.0);
}

TEST_CASE("absent classes are flagged and excluded from averages") {
    const Mat<int> ref = strip({0, 0, 1, 1});
    const Mat<int> pred = strip({0, 0, 1, 1});
    const MetricsReport rep = aggregate_metrics(confusion_matrix(pred, ref, 4));
    CHECK(rep.iou_valid[0]);
    CHECK(rep.iou_valid[1]);
    CHECK_FALSE(rep.iou_valid[2]);
    CHECK_FALSE(rep.iou_valid[3]);
    CHECK(rep.iou[2] == -1.0);
    CHECK(rep.miu == 1.0);
    CHECK(rep.fwiu == 1.0);
}

TEST_CASE("published per-class IU rows reproduce their printed means") {
    CHECK(std::abs(mean_iou({0.7672, 0.5128, 0.2656, 0.5261}) - 0.5179) < 0.00005);
    CHECK(std::abs(mean_iou({0.7070, 0.4645, 0.2257, 0.4724}) - 0.4674) < 0.00005);
}

TEST_CASE("all four metrics match the set-counting oracle on random maps") {
    std::mt19937 rng(307);
    for (int n_classes : {2, 3, 4})
        for (int trial = 0; trial < 10; ++trial) {
            const Mat<int> ref = random_labels(10, 10, n_classes, rng);
            const Mat<int> pred = random_labels(10, 10, n_classes, rng);
            const MetricsReport rep = aggregate_metrics(confusion_matrix(pred, ref, n_classes));
            const Oracle o = oracle_metrics(pred, ref, n_classes);
            CHECK(rep.pixel_accuracy == o.pa);
            for (int c = 0; c < n_classes; ++c)
                CHECK(rep.iou[static_cast<size_t>(c)] ==
                      doctest::Approx(o.iou[static_cast<size_t>(c)]).epsilon(1e-14));
            CHECK(rep.miu == doctest::Approx(o.miu).epsilon(1e-14));
            CHECK(rep.fwiu == doctest::Approx(o.fwiu).epsilon(1e-14));
        }
}

TEST_CASE("metrics are invariant under consistent class-id permutation") {
    std::mt19937 rng(311);
    const int n_classes = 4;
    const Mat<int> ref = random_labels(10, 10, n_classes, rng);
    const Mat<int> pred = random_labels(10, 10, n_classes, rng);
    const int perm[4] = {2, 0, 3, 1};
    Mat<int> ref_p = ref, pred_p = pred;
    for (Eigen::Index i = 0; i < ref.size(); ++i) {
        ref_p(i) = perm[ref(i)];
        pred_p(i) = perm[pred(i)];
    }
    const MetricsReport a = aggregate_metrics(confusion_matrix(pred, ref, n_classes));
    const MetricsReport b = aggregate_metrics(confusion_matrix(pred_p, ref_p, n_classes));
    CHECK(a.pixel_accuracy == b.pixel_accuracy);
    CHECK(a.miu == doctest::Approx(b.miu).epsilon(1e-14));
    CHECK(a.fwiu == doctest::Approx(b.fwiu).epsilon(1e-14));
    for (int c = 0; c < n_classes; ++c)
        CHECK(a.iou[static_cast<size_t>(c)] ==
              doctest::Approx(b.iou[static_cast<size_t>(perm[c])]).epsilon(1e-14));
}

TEST_CASE("argument contracts") {
    CHECK_THROWS_AS(confusion_matrix(Mat<int>::Zero(2, 2), Mat<int>::Zero(3, 3), 2),
                    ArgumentError);
    CHECK_THROWS_AS(confusion_matrix(Mat<int>::Constant(2, 2, 5), Mat<int>::Zero(2, 2), 2),
                    ArgumentError);
    CHECK_THROWS_AS(pixel_accuracy(Mat<long>::Zero(2, 2)), ArgumentError);
    CHECK_THROWS_AS(mean_iou({}), ArgumentError);
}
