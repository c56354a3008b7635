#ifndef TEXLAB_WAVELET_HPP
#define TEXLAB_WAVELET_HPP

#include <array>
#include <cmath>
#include <vector>

#include "texlab/types.hpp"

namespace texlab {

struct DwtLevel {
    Image lh, hl, hh;           // first letter: horizontal filter, second: vertical
    Eigen::Index orig_rows{};   // dims of the grid this level analyzed
    Eigen::Index orig_cols{};
};

struct DwtSubbands {
    std::vector<DwtLevel> levels;
    Image ll;  // approximation after the last level

    int num_levels() const { return static_cast<int>(levels.size()); }
    int subband_count() const { return 3 * num_levels() + 1; }
};

namespace detail {

constexpr double kInvSqrt2 = 0.7071067811865476;

// Haar analysis of one row/column; odd lengths are extended by repeating the
// last sample, so the trailing detail coefficient is exactly zero.
inline void haar_analyze(const double* x, Eigen::Index n, Eigen::Index stride, double* approx,
                         double* detail) {
    const Eigen::Index half = (n + 1) / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
        const double a = x[2 * i * stride];
        const double b = (2 * i + 1 < n) ? x[(2 * i + 1) * stride] : a;
        approx[i] = (a + b) * kInvSqrt2;
        detail[i] = (b - a) * kInvSqrt2;
    }
}

inline void haar_synthesize(const double* approx, const double* detail, Eigen::Index n,
                            Eigen::Index stride, double* x) {
    const Eigen::Index half = (n + 1) / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
        const double a = approx[i], d = detail[i];
        x[2 * i * stride] = (a - d) * kInvSqrt2;
        if (2 * i + 1 < n) x[(2 * i + 1) * stride] = (a + d) * kInvSqrt2;
    }
}

}  // namespace detail

/// Single-level 2-D Haar analysis. Returns {LL, LH, HL, HH}; each detail grid
/// has dims ceil(input dims / 2).
inline std::array<Image, 4> dwt2_single(const Image& in) {
    const Eigen::Index rows = in.rows(), cols = in.cols();
    const Eigen::Index hc = (cols + 1) / 2, hr = (rows + 1) / 2;

    // horizontal pass
    Image low(rows, hc), high(rows, hc);
    for (Eigen::Index r = 0; r < rows; ++r)
        detail::haar_analyze(in.row(r).data(), cols, 1, low.row(r).data(), high.row(r).data());

    // vertical pass (column stride is 1 within a column of a row-major matrix
    // only along rows, so work through temporaries)
    auto vertical = [&](const Image& g, Image& lo, Image& hi) {
        lo.resize(hr, g.cols());
        hi.resize(hr, g.cols());
        std::vector<double> col(static_cast<size_t>(rows)), a(static_cast<size_t>(hr)),
            d(static_cast<size_t>(hr));
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            for (Eigen::Index r = 0; r < rows; ++r) col[r] = g(r, c);
            detail::haar_analyze(col.data(), rows, 1, a.data(), d.data());
            for (Eigen::Index r = 0; r < hr; ++r) {
                lo(r, c) = a[r];
                hi(r, c) = d[r];
            }
        }
    };
    Image ll, lh, hl, hh;
    vertical(low, ll, lh);
    vertical(high, hl, hh);
    return {ll, lh, hl, hh};
}

/// Multi-level Haar DWT: 3L detail grids plus one approximation.
inline DwtSubbands dwt2_multi(const Image& raster, int num_levels) {
    if (num_levels < 1) throw ArgumentError("dwt2_multi: num_levels must be >= 1");
    const Eigen::Index min_dim = std::min(raster.rows(), raster.cols());
    const int max_levels = static_cast<int>(std::floor(std::log2(double(min_dim)))) + 1;
    if (num_levels > max_levels) throw ArgumentError("dwt2_multi: too many levels for raster size");

    DwtSubbands out;
    Image cur = raster;
    for (int l = 0; l < num_levels; ++l) {
        DwtLevel lvl;
        lvl.orig_rows = cur.rows();
        lvl.orig_cols = cur.cols();
        auto [ll, lh, hl, hh] = dwt2_single(cur);
        lvl.lh = std::move(lh);
        lvl.hl = std::move(hl);
        lvl.hh = std::move(hh);
        out.levels.push_back(std::move(lvl));
        cur = std::move(ll);
    }
    out.ll = std::move(cur);
    return out;
}

/// Exact inverse of dwt2_multi.
inline Image idwt2_multi(const DwtSubbands& sb) {
    if (sb.levels.empty()) throw ArgumentError("idwt2_multi: no levels");
    Image cur = sb.ll;
    for (auto it = sb.levels.rbegin(); it != sb.levels.rend(); ++it) {
        const DwtLevel& lvl = *it;
        const Eigen::Index hr = (lvl.orig_rows + 1) / 2, hc = (lvl.orig_cols + 1) / 2;
        if (cur.rows() != hr || cur.cols() != hc || lvl.lh.rows() != hr || lvl.lh.cols() != hc ||
            lvl.hl.rows() != hr || lvl.hl.cols() != hc || lvl.hh.rows() != hr ||
            lvl.hh.cols() != hc)
            throw ArgumentError("idwt2_multi: inconsistent subband shapes");

        // invert vertical pass
        Image low(lvl.orig_rows, hc), high(lvl.orig_rows, hc);
        std::vector<double> colbuf(static_cast<size_t>(lvl.orig_rows));
        auto vertical_inv = [&](const Image& a, const Image& d, Image& g) {
            std::vector<double> av(static_cast<size_t>(hr)), dv(static_cast<size_t>(hr));
            for (Eigen::Index c = 0; c < hc; ++c) {
                for (Eigen::Index r = 0; r < hr; ++r) {
                    av[r] = a(r, c);
                    dv[r] = d(r, c);
                }
                detail::haar_synthesize(av.data(), dv.data(), lvl.orig_rows, 1, colbuf.data());
                for (Eigen::Index r = 0; r < lvl.orig_rows; ++r) g(r, c) = colbuf[r];
            }
        };
        vertical_inv(cur, lvl.lh, low);
        vertical_inv(lvl.hl, lvl.hh, high);

        // invert horizontal pass
        Image rec(lvl.orig_rows, lvl.orig_cols);
        for (Eigen::Index r = 0; r < lvl.orig_rows; ++r)
            detail::haar_synthesize(low.row(r).data(), high.row(r).data(), lvl.orig_cols, 1,
                                    rec.row(r).data());
        cur = std::move(rec);
    }
    return cur;
}

}  // namespace texlab

#endif
