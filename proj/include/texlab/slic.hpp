#ifndef TEXLAB_SLIC_HPP
#define TEXLAB_SLIC_HPP

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "texlab/gradient.hpp"
#include "texlab/types.hpp"

namespace texlab {

struct SuperpixelMap {
    Mat<int> labels;  // per-pixel superpixel id, compact in [0, count)
    std::vector<std::pair<double, double>> centroids;  // (row, col) pixel-coordinate means
    int count{};
};

namespace slicdetail {

inline Image minmax_normalize(const Image& in) {
    const double lo = in.minCoeff(), hi = in.maxCoeff();
    if (hi - lo < 1e-30) return Image::Zero(in.rows(), in.cols());
    return (in.array() - lo) / (hi - lo);
}

}  // namespace slicdetail

/// SLIC over the [l, gx, gy, x, y] space: amplitude plus both gradients,
/// each min-max normalized to [0,1]. Seeds sit on a regular grid, nudged to
/// the lowest-gradient pixel in a 3x3 neighborhood; a final pass absorbs
/// fragments so every superpixel is 4-connected.
inline SuperpixelMap slic_segment(const Image& raster, int target_count,
                                  double compactness = 10.0, int max_iters = 10) {
    const Eigen::Index rows = raster.rows(), cols = raster.cols();
    const Eigen::Index n_pixels = rows * cols;
    if (target_count < 1 || target_count > n_pixels)
        throw ArgumentError("slic_segment: bad target_count");
    if (compactness <= 0.0) throw ArgumentError("slic_segment: compactness must be > 0");

    auto [gx, gy] = gradient2d(raster);
    const Image l_n = slicdetail::minmax_normalize(raster);
    const Image gx_n = slicdetail::minmax_normalize(gx);
    const Image gy_n = slicdetail::minmax_normalize(gy);
    const Image grad_mag = (gx.array().square() + gy.array().square()).sqrt();

    const double S = std::sqrt(static_cast<double>(n_pixels) / target_count);

    // regular seed grid, roughly target_count cells
    const int grid_cols = std::max(1, static_cast<int>(std::round(cols / S)));
    const int grid_rows = std::max(1, (target_count + grid_cols - 1) / grid_cols);

    struct Center {
        double l, gx, gy, r, c;
        double sum_l, sum_gx, sum_gy, sum_r, sum_c;
        long n;
    };
    std::vector<Center> centers;
    for (int i = 0; i < grid_rows && static_cast<int>(centers.size()) < target_count; ++i)
        for (int j = 0; j < grid_cols && static_cast<int>(centers.size()) < target_count; ++j) {
            Eigen::Index r = static_cast<Eigen::Index>((i + 0.5) * rows / grid_rows);
            Eigen::Index c = static_cast<Eigen::Index>((j + 0.5) * cols / grid_cols);
            r = std::min(r, rows - 1);
            c = std::min(c, cols - 1);
            // perturb to the lowest-gradient pixel in a 3x3 window; scan order
            // breaks ties
            Eigen::Index br = r, bc = c;
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index dr = -1; dr <= 1; ++dr)
                for (Eigen::Index dc = -1; dc <= 1; ++dc) {
                    const Eigen::Index rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
                    if (grad_mag(rr, cc) < best) {
                        best = grad_mag(rr, cc);
                        br = rr;
                        bc = cc;
                    }
                }
            centers.push_back({l_n(br, bc), gx_n(br, bc), gy_n(br, bc),
                               static_cast<double>(br), static_cast<double>(bc),
                               0, 0, 0, 0, 0, 0});
        }

    const double ratio = compactness / S;
    const double ratio2 = ratio * ratio;
    Mat<int> labels = Mat<int>::Constant(rows, cols, -1);
    Mat<double> dists(rows, cols);
    const Eigen::Index search = static_cast<Eigen::Index>(std::ceil(2.0 * S));

    for (int iter = 0; iter < max_iters; ++iter) {
        dists.setConstant(std::numeric_limits<double>::infinity());
        for (size_t k = 0; k < centers.size(); ++k) {
            const Center& ct = centers[k];
            const Eigen::Index r0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(ct.r) - search);
            const Eigen::Index r1 = std::min(rows - 1, static_cast<Eigen::Index>(ct.r) + search);
            const Eigen::Index c0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(ct.c) - search);
            const Eigen::Index c1 = std::min(cols - 1, static_cast<Eigen::Index>(ct.c) + search);
            for (Eigen::Index r = r0; r <= r1; ++r)
                for (Eigen::Index c = c0; c <= c1; ++c) {
                    const double dl = l_n(r, c) - ct.l;
                    const double dgx = gx_n(r, c) - ct.gx;
                    const double dgy = gy_n(r, c) - ct.gy;
                    const double dr = r - ct.r, dc = c - ct.c;
                    const double d2 = dl * dl + dgx * dgx + dgy * dgy + ratio2 * (dr * dr + dc * dc);
                    if (d2 < dists(r, c)) {
                        dists(r, c) = d2;
                        labels(r, c) = static_cast<int>(k);
                    }
                }
        }
        // any pixel outside every search window: claim by nearest center
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                if (labels(r, c) < 0) {
                    double best = std::numeric_limits<double>::infinity();
                    for (size_t k = 0; k < centers.size(); ++k) {
                        const double dr = r - centers[k].r, dc = c - centers[k].c;
                        const double d2 = dr * dr + dc * dc;
                        if (d2 < best) {
                            best = d2;
                            labels(r, c) = static_cast<int>(k);
                        }
                    }
                }

        for (auto& ct : centers) {
            ct.sum_l = ct.sum_gx = ct.sum_gy = ct.sum_r = ct.sum_c = 0;
            ct.n = 0;
        }
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c) {
                Center& ct = centers[static_cast<size_t>(labels(r, c))];
                ct.sum_l += l_n(r, c);
                ct.sum_gx += gx_n(r, c);
                ct.sum_gy += gy_n(r, c);
                ct.sum_r += r;
                ct.sum_c += c;
                ct.n += 1;
            }
        for (auto& ct : centers)
            if (ct.n > 0) {
                ct.l = ct.sum_l / ct.n;
                ct.gx = ct.sum_gx / ct.n;
                ct.gy = ct.sum_gy / ct.n;
                ct.r = ct.sum_r / ct.n;
                ct.c = ct.sum_c / ct.n;
            }
    }

    // connectivity: repeatedly absorb non-main fragments into the largest
    // adjacent superpixel until every label forms one 4-connected region
    Mat<int> comp(rows, cols);
    std::vector<long> comp_size;
    std::vector<int> comp_label;
    std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> comp_pixels;

    auto find_components = [&]() {
        comp.setConstant(-1);
        comp_size.clear();
        comp_label.clear();
        comp_pixels.clear();
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                if (comp(r, c) < 0) {
                    const int id = static_cast<int>(comp_size.size());
                    const int lab = labels(r, c);
                    std::vector<std::pair<Eigen::Index, Eigen::Index>> px;
                    std::queue<std::pair<Eigen::Index, Eigen::Index>> q;
                    q.push({r, c});
                    comp(r, c) = id;
                    while (!q.empty()) {
                        auto [cr, cc] = q.front();
                        q.pop();
                        px.push_back({cr, cc});
                        const Eigen::Index nb[4][2] = {
                            {cr - 1, cc}, {cr + 1, cc}, {cr, cc - 1}, {cr, cc + 1}};
                        for (const auto& pos : nb) {
                            const Eigen::Index nr = pos[0], nc = pos[1];
                            if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
                            if (comp(nr, nc) < 0 && labels(nr, nc) == lab) {
                                comp(nr, nc) = id;
                                q.push({nr, nc});
                            }
                        }
                    }
                    comp_size.push_back(static_cast<long>(px.size()));
                    comp_label.push_back(lab);
                    comp_pixels.push_back(std::move(px));
                }
    };

    for (int pass = 0; pass < 32; ++pass) {
        find_components();
        std::vector<int> main_comp(centers.size(), -1);
        for (size_t cid = 0; cid < comp_size.size(); ++cid) {
            const size_t lab = static_cast<size_t>(comp_label[cid]);
            if (main_comp[lab] < 0 ||
                comp_size[cid] > comp_size[static_cast<size_t>(main_comp[lab])])
                main_comp[lab] = static_cast<int>(cid);
        }
        bool changed = false;
        for (size_t cid = 0; cid < comp_size.size(); ++cid) {
            if (static_cast<int>(cid) == main_comp[static_cast<size_t>(comp_label[cid])]) continue;
            long best_size = -1;
            int best_label = -1;
            for (const auto& [r, c] : comp_pixels[cid]) {
                const Eigen::Index nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
                for (const auto& pos : nb) {
                    const Eigen::Index nr = pos[0], nc = pos[1];
                    if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
                    const size_t ocid = static_cast<size_t>(comp(nr, nc));
                    if (ocid == cid) continue;
                    if (comp_size[ocid] > best_size) {
                        best_size = comp_size[ocid];
                        best_label = comp_label[ocid];
                    }
                }
            }
            if (best_label >= 0) {
                for (const auto& [r, c] : comp_pixels[cid]) labels(r, c) = best_label;
                changed = true;
            }
        }
        if (!changed) break;
    }

    // compact ids and recompute centroids
    std::vector<int> remap(centers.size(), -1);
    int next = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            int& lab = remap[static_cast<size_t>(labels(r, c))];
            if (lab < 0) lab = next++;
            labels(r, c) = lab;
        }

    SuperpixelMap out;
    out.labels = std::move(labels);
    out.count = next;
    std::vector<double> sr(static_cast<size_t>(next), 0.0), sc(static_cast<size_t>(next), 0.0);
    std::vector<long> cnt(static_cast<size_t>(next), 0);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const size_t k = static_cast<size_t>(out.labels(r, c));
            sr[k] += r;
            sc[k] += c;
            cnt[k] += 1;
        }
    out.centroids.resize(static_cast<size_t>(next));
    for (int k = 0; k < next; ++k)
        out.centroids[static_cast<size_t>(k)] = {sr[static_cast<size_t>(k)] / cnt[static_cast<size_t>(k)],
                                                 sc[static_cast<size_t>(k)] / cnt[static_cast<size_t>(k)]};
    return out;
}

/// Raw centroids (pixel-coordinate means), by superpixel id.
inline std::vector<std::pair<double, double>> superpixel_centroids(const SuperpixelMap& map) {
    return map.centroids;
}

/// Centroid rounded half-up, snapped to the nearest member pixel when the
/// rounded position falls outside the superpixel.
inline std::pair<Eigen::Index, Eigen::Index> centroid_pixel(const SuperpixelMap& map, int id) {
    const auto [cr, cc] = map.centroids[static_cast<size_t>(id)];
    Eigen::Index r = static_cast<Eigen::Index>(std::floor(cr + 0.5));
    Eigen::Index c = static_cast<Eigen::Index>(std::floor(cc + 0.5));
    r = std::min(std::max<Eigen::Index>(r, 0), map.labels.rows() - 1);
    c = std::min(std::max<Eigen::Index>(c, 0), map.labels.cols() - 1);
    if (map.labels(r, c) == id) return {r, c};
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index br = r, bc = c;
    for (Eigen::Index rr = 0; rr < map.labels.rows(); ++rr)
        for (Eigen::Index cc2 = 0; cc2 < map.labels.cols(); ++cc2)
            if (map.labels(rr, cc2) == id) {
                const double d = (rr - cr) * (rr - cr) + (cc2 - cc) * (cc2 - cc);
                if (d < best) {
                    best = d;
                    br = rr;
                    bc = cc2;
                }
            }
    return {br, bc};
}

}  // namespace texlab

#endif
