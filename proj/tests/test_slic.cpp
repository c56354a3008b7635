#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>
#include <random>

#include "texlab/slic.hpp"

using namespace texlab;

namespace {

Image random_image(Eigen::Index rows, Eigen::Index cols, std::mt19937& rng) {
    std::normal_distribution<double> nd;
    Image img(rows, cols);
    for (auto& v : img.reshaped()) v = nd(rng);
    return img;
}

// flood-fill count of 4-connected regions per label id
bool all_labels_connected(const Mat<int>& labels, int count) {
    std::vector<int> regions(static_cast<size_t>(count), 0);
    Mat<int> seen = Mat<int>::Zero(labels.rows(), labels.cols());
    for (Eigen::Index r = 0; r < labels.rows(); ++r)
        for (Eigen::Index c = 0; c < labels.cols(); ++c)
            if (!seen(r, c)) {
                const int id = labels(r, c);
                regions[static_cast<size_t>(id)] += 1;
                std::queue<std::pair<Eigen::Index, Eigen::Index>> q;
                q.push({r, c});
                seen(r, c) = 1;
                while (!q.empty()) {
                    auto [cr, cc] = q.front();
                    q.pop();
                    const Eigen::Index nb[4][2] = {
                        {cr - 1, cc}, {cr + 1, cc}, {cr, cc - 1}, {cr, cc + 1}};
                    for (const auto& pos : nb) {
                        const Eigen::Index nr = pos[0], nc = pos[1];
                        if (nr < 0 || nr >= labels.rows() || nc < 0 || nc >= labels.cols())
                            continue;
                        if (!seen(nr, nc) && labels(nr, nc) == id) {
                            seen(nr, nc) = 1;
                            q.push({nr, nc});
                        }
                    }
                }
            }
    for (int n : regions)
        if (n != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("labels form a gapless partition") {
    std::mt19937 rng(201);
    const Image img = random_image(60, 45, rng);
    const SuperpixelMap map = slic_segment(img, 20);
    CHECK(map.count >= 1);
    std::vector<long> sizes(static_cast<size_t>(map.count), 0);
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c) {
            REQUIRE(map.labels(r, c) >= 0);
            REQUIRE(map.labels(r, c) < map.count);
            sizes[static_cast<size_t>(map.labels(r, c))] += 1;
        }
    for (long s : sizes) CHECK(s > 0);
}

TEST_CASE("every superpixel is 4-connected on random rasters") {
    std::mt19937 rng(203);
    for (int trial = 0; trial < 10; ++trial) {
        const Image img = random_image(40, 40, rng);
        const SuperpixelMap map = slic_segment(img, 12);
        CHECK(all_labels_connected(map.labels, map.count));
    }
}

TEST_CASE("segmentation is deterministic") {
    std::mt19937 rng(207);
    const Image img = random_image(50, 50, rng);
    const SuperpixelMap a = slic_segment(img, 16);
    const SuperpixelMap b = slic_segment(img, 16);
    CHECK(a.count == b.count);
    CHECK(a.labels == b.labels);
}

TEST_CASE("constant raster gives a near-regular grid") {
    const SuperpixelMap map = slic_segment(Image::Constant(100, 100, 0.5), 16);
    CHECK(map.count == 16);
    std::vector<long> sizes(16, 0);
    for (Eigen::Index r = 0; r < 100; ++r)
        for (Eigen::Index c = 0; c < 100; ++c) sizes[static_cast<size_t>(map.labels(r, c))] += 1;
    for (long s : sizes) {
        CHECK(s >= 500);   // 625 - 20%
        CHECK(s <= 750);   // 625 + 20%
    }
}

TEST_CASE("target 1 yields a single superpixel with the coordinate centroid") {
    std::mt19937 rng(211);
    const Image img = random_image(9, 13, rng);
    const SuperpixelMap map = slic_segment(img, 1);
    CHECK(map.count == 1);
    CHECK(map.centroids[0].first == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(map.centroids[0].second == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("centroid arithmetic on hand-built maps") {
    // one superpixel covering a 3x3 image
    SuperpixelMap one;
    one.labels = Mat<int>::Zero(3, 3);
    one.count = 1;
    one.centroids = {{1.0, 1.0}};
    CHECK(centroid_pixel(one, 0) == std::pair<Eigen::Index, Eigen::Index>{1, 1});

    // two equal vertical halves of a 4x4 image
    SuperpixelMap halves;
    halves.labels.resize(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index c = 0; c < 4; ++c) halves.labels(r, c) = c < 2 ? 0 : 1;
    halves.count = 2;
    std::vector<double> sr(2, 0), sc(2, 0);
    std::vector<long> n(2, 0);
    for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index c = 0; c < 4; ++c) {
            const size_t k = static_cast<size_t>(halves.labels(r, c));
            sr[k] += r;
            sc[k] += c;
            n[k] += 1;
        }
    halves.centroids = {{sr[0] / n[0], sc[0] / n[0]}, {sr[1] / n[1], sc[1] / n[1]}};
    CHECK(halves.centroids[0] == std::pair<double, double>{1.5, 0.5});
    CHECK(halves.centroids[1] == std::pair<double, double>{1.5, 2.5});
    // rounding is half-up
    CHECK(centroid_pixel(halves, 0) == std::pair<Eigen::Index, Eigen::Index>{2, 1});
    CHECK(centroid_pixel(halves, 1) == std::pair<Eigen::Index, Eigen::Index>{2, 3});
}

TEST_CASE("each centroid pixel belongs to its own superpixel") {
    std::mt19937 rng(213);
    for (int trial = 0; trial < 5; ++trial) {
        const Image img = random_image(48, 64, rng);
        const SuperpixelMap map = slic_segment(img, 15);
        for (int id = 0; id < map.count; ++id) {
            const auto [r, c] = centroid_pixel(map, id);
            CHECK(map.labels(r, c) == id);
        }
    }
}

TEST_CASE("argument contracts") {
    CHECK_THROWS_AS(slic_segment(Image::Zero(10, 10), 0), ArgumentError);
    CHECK_THROWS_AS(slic_segment(Image::Zero(10, 10), 101), ArgumentError);
    CHECK_THROWS_AS(slic_segment(Image::Zero(10, 10), 4, -1.0), ArgumentError);
}
