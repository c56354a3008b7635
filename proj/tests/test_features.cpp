#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "texlab/features.hpp"

using namespace texlab;

namespace {

Image random_image(Eigen::Index rows, Eigen::Index cols, std::mt19937& rng) {
    std::normal_distribution<double> nd;
    Image img(rows, cols);
    for (auto& v : img.reshaped()) v = nd(rng);
    return img;
}

// sqrt of eigenvalues of M^T M, sorted descending
Eigen::VectorXd sv_oracle(const Image& m) {
    const Eigen::MatrixXd gram = m.transpose() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
    Eigen::VectorXd out = ev.head(std::min(m.rows(), m.cols()));
    return out;
}

Eigen::VectorXd descriptor_oracle(const Image& m) {
    Eigen::VectorXd sv = sv_oracle(m);
    const double total = sv.sum();
    double entropy = 0.0;
    if (total > 0.0)
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            const double p = sv(i) / total;
            if (p > 0.0) entropy -= p * std::log(p);
        }
    const double erank = total > 0.0 ? std::exp(entropy) : 1.0;
    const Eigen::Index keep = static_cast<Eigen::Index>(std::ceil(erank));
    for (Eigen::Index i = keep; i < sv.size(); ++i) sv(i) = 0.0;
    return sv;
}

}  // namespace

TEST_CASE("singular values of simple matrices") {
    CHECK((singular_values(Image::Identity(4, 4)).array() - 1.0).abs().maxCoeff() < 1e-12);
    Image d = Image::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    const Eigen::VectorXd sv = singular_values(d);
    CHECK(sv(0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sv(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("singular values match the gram-matrix eigensolve oracle") {
    std::mt19937 rng(71);
    const Image m = random_image(6, 4, rng);
    const Eigen::VectorXd sv = singular_values(m);
    const Eigen::VectorXd ref = sv_oracle(m);
    REQUIRE(sv.size() == ref.size());
    CHECK((sv - ref).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("effective rank closed forms") {
    Eigen::VectorXd uniform(4);
    uniform << 1, 1, 1, 1;
    CHECK(effective_rank(uniform) == doctest::Approx(4.0).epsilon(1e-12));

    Eigen::VectorXd point(3);
    point << 7, 0, 0;
    CHECK(effective_rank(point) == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::VectorXd single(1);
    single << 5;
    CHECK(effective_rank(single) == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::VectorXd two(2);
    two << 2, 1;
    const double expect = std::exp(std::log(3.0) - (2.0 / 3.0) * std::log(2.0));
    CHECK(expect == doctest::Approx(1.8899).epsilon(1e-4));
    CHECK(effective_rank(two) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("descriptor of degenerate grids") {
    const Eigen::VectorXd z = subband_descriptor(Image(Image::Zero(5, 8)));
    CHECK(z.size() == 5);
    CHECK(z.cwiseAbs().maxCoeff() == 0.0);

    // rank-1 grid keeps exactly the leading value
    Eigen::VectorXd u(4), v(6);
    u << 1, 2, 3, 4;
    v << 1, -1, 2, 0.5, 3, -2;
    const Image grid = u * v.transpose();
    const Eigen::VectorXd d = subband_descriptor(grid);
    REQUIRE(d.size() == 4);
    CHECK(d(0) == doctest::Approx(u.norm() * v.norm()).epsilon(1e-10));
    CHECK(d.tail(3).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("descriptor matches the step-by-step oracle on random grids") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        const Image m = random_image(25, 25, rng);
        const Eigen::VectorXd got = subband_descriptor(m);
        const Eigen::VectorXd ref = descriptor_oracle(m);
        REQUIRE(got.size() == ref.size());
        CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("feature vector lengths on a 99x99 patch") {
    std::mt19937 rng(79);
    const Image patch = random_image(99, 99, rng);
    AttributeConfig cfg;

    cfg.attribute = Attribute::amplitude;
    CHECK(attribute_features(patch, cfg).values.size() == 99);

    cfg.attribute = Attribute::dwt;
    CHECK(attribute_features(patch, cfg).values.size() == 3 * 50 + 3 * 25 + 3 * 13 + 13);

    cfg.attribute = Attribute::pyramid;
    CHECK(attribute_features(patch, cfg).values.size() == 99 + 50 + 25);

    cfg.attribute = Attribute::gabor;
    CHECK(attribute_features(patch, cfg).values.size() == 12 * 99);

    cfg.attribute = Attribute::curvelet;
    const FeatureVector fv = attribute_features(patch, cfg);
    CHECK(fv.layout.size() == 49);  // 1 + 16 + 32 bands
}

TEST_CASE("lengths do not depend on patch content; extraction is deterministic") {
    std::mt19937 rng(83);
    AttributeConfig cfg;
    cfg.attribute = Attribute::dwt;
    const Image a = random_image(99, 99, rng), b = random_image(99, 99, rng);
    CHECK(attribute_features(a, cfg).values.size() == attribute_features(b, cfg).values.size());
    const Eigen::VectorXd v1 = attribute_features(a, cfg).values;
    const Eigen::VectorXd v2 = attribute_features(a, cfg).values;
    CHECK(v1 == v2);
}

TEST_CASE("descriptor tails past ceil(effective rank) are exactly zero") {
    std::mt19937 rng(89);
    AttributeConfig cfg;
    cfg.attribute = Attribute::pyramid;
    const FeatureVector fv = attribute_features(random_image(99, 99, rng), cfg);
    for (const auto& [off, len] : fv.layout) {
        const Eigen::VectorXd d = fv.values.segment(off, len);
        // entries are descending singular values with the tail zeroed, so the
        // retained prefix is positive and everything after the first zero is 0
        bool in_tail = false;
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            if (d(i) == 0.0) in_tail = true;
            if (in_tail)
                CHECK(d(i) == 0.0);
            else
                CHECK(d(i) > 0.0);
        }
    }
}

TEST_CASE("singular values are invariant to sign flips") {
    std::mt19937 rng(97);
    AttributeConfig cfg;
    cfg.attribute = Attribute::amplitude;
    const Image patch = random_image(99, 99, rng);
    const Eigen::VectorXd a = attribute_features(patch, cfg).values;
    const Eigen::VectorXd b = attribute_features(Image(-patch), cfg).values;
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("attribute names roundtrip") {
    for (Attribute a : {Attribute::amplitude, Attribute::pyramid, Attribute::dwt,
                        Attribute::gabor, Attribute::curvelet})
        CHECK(attribute_from_name(attribute_name(a)) == a);
    CHECK_THROWS_AS(attribute_from_name("wavelonia"), ArgumentError);
}
