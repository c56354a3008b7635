#ifndef TEXLAB_CURVELET_HPP
#define TEXLAB_CURVELET_HPP

#include <cmath>
#include <vector>

#include "texlab/fft.hpp"
#include "texlab/types.hpp"

namespace texlab {

// Frequency-plane partition for the wrapping curvelet transform.
//
// Band 0 is a non-directional low-pass ring; directional rings j = 1..J-1 run
// coarse to fine with K(j) = 16 * 2^ceil((j-1)/2) wedges tiling the full
// plane. Windows are raised-cosine (Meyer-step) profiles in log2-radius and
// in angle, built so that the squared windows sum to exactly 1 at every
// frequency sample. Wedge k pairs with wedge k + K/2 under spectrum negation.

namespace curvedetail {

// C1 Meyer auxiliary step: v(0)=0, v(1)=1, v(s)+v(1-s)=1.
inline double meyer_step(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return s * s * s * s * (35.0 - 84.0 * s + 70.0 * s * s - 20.0 * s * s * s);
}

// rises 0 -> 1 over [b - 0.5, b + 0.5] in log2-radius
inline double radial_rise(double t, double b) {
    return std::sin(0.5 * M_PI * meyer_step(t - b + 0.5));
}
inline double radial_fall(double t, double b) {
    return std::cos(0.5 * M_PI * meyer_step(t - b + 0.5));
}

inline Eigen::Index centered(Eigen::Index k, Eigen::Index n) {
    return k < (n + 1) / 2 ? k : k - n;
}

// grid negation: maps centered index to the centered index of its conjugate
inline Eigen::Index neg_centered(Eigen::Index c, Eigen::Index n) {
    Eigen::Index k = (-c) % n;
    if (k < 0) k += n;
    return centered(k, n);
}

inline Eigen::Index pos_mod(Eigen::Index a, Eigen::Index m) {
    Eigen::Index r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace curvedetail

struct CurveletWedge {
    int scale{};                    // 0 = low-pass, 1..J-1 directional
    int wedge{};                    // index within the scale
    double orientation_deg{-1.0};   // spatial orientation this wedge responds to
    Eigen::Index box_rows{}, box_cols{};  // wrapped grid dims
    bool negated_wrap{};            // wedge uses its pair's box with negated slots
    // support samples: centered frequency indices, window value, wrap slot
    std::vector<Eigen::Index> c1, c2, slot_r, slot_c;
    std::vector<double> w;
};

struct CurveletPartition {
    Eigen::Index rows{}, cols{};
    int num_scales{};                    // J, counting the low-pass band
    std::vector<int> wedges_per_scale;   // [1, K(1), ..., K(J-1)]
    std::vector<CurveletWedge> bands;    // low-pass first, then rings coarse->fine

    int total_bands() const { return static_cast<int>(bands.size()); }
};

inline int curvelet_max_scales(Eigen::Index rows, Eigen::Index cols) {
    const double m = static_cast<double>(std::min(rows, cols));
    return static_cast<int>(std::ceil(std::log2(m) - 3.0));
}

inline int curvelet_wedge_count(int j) {
    return 16 * (1 << ((j - 1 + 1) / 2));  // 16 * 2^ceil((j-1)/2)
}

inline CurveletPartition curvelet_partition(Eigen::Index rows, Eigen::Index cols, int num_scales) {
    using namespace curvedetail;
    if (num_scales < 2) throw ArgumentError("curvelet_partition: need at least 2 scales");
    if (num_scales > curvelet_max_scales(rows, cols))
        throw ArgumentError("curvelet_partition: too many scales for raster size");

    const int J = num_scales;
    CurveletPartition part;
    part.rows = rows;
    part.cols = cols;
    part.num_scales = J;
    part.wedges_per_scale.push_back(1);
    for (int j = 1; j < J; ++j) part.wedges_per_scale.push_back(curvelet_wedge_count(j));

    // per-sample normalized radius (log2) and angle over the centered grid
    Mat<double> logr(rows, cols), ang(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double u = 2.0 * static_cast<double>(centered(r, rows)) / static_cast<double>(rows);
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double v = 2.0 * static_cast<double>(centered(c, cols)) / static_cast<double>(cols);
            const double rho = std::sqrt(u * u + v * v);
            logr(r, c) = rho > 0.0 ? std::log2(rho) : -1e30;
            ang(r, c) = std::atan2(u, v);  // 0 along +column-frequency axis
        }
    }

    // radial band profiles; boundary m sits at log2-radius m - (J-1)
    auto radial_band = [&](int band, double t) -> double {
        const double t_lo = static_cast<double>(band) - (J - 1);      // inner boundary
        const double t_hi = static_cast<double>(band + 1) - (J - 1);  // outer boundary
        if (band == 0) return radial_fall(t, t_hi);
        if (band == J - 1) return radial_rise(t, t_lo);
        return radial_rise(t, t_lo) * radial_fall(t, t_hi);
    };

    auto finalize_wedge = [&](CurveletWedge& wd, const Mat<double>& win) {
        // support bounding box in centered coordinates
        Eigen::Index min1 = rows, max1 = -rows, min2 = cols, max2 = -cols;
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                if (win(r, c) > 0.0) {
                    const Eigen::Index a = centered(r, rows), b = centered(c, cols);
                    min1 = std::min(min1, a);
                    max1 = std::max(max1, a);
                    min2 = std::min(min2, b);
                    max2 = std::max(max2, b);
                }
        if (max1 < min1) throw ArgumentError("curvelet_partition: empty wedge support");
        wd.box_rows = max1 - min1 + 1;
        wd.box_cols = max2 - min2 + 1;
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                if (win(r, c) > 0.0) {
                    const Eigen::Index a = centered(r, rows), b = centered(c, cols);
                    wd.c1.push_back(a);
                    wd.c2.push_back(b);
                    wd.w.push_back(win(r, c));
                    const Eigen::Index sr = wd.negated_wrap
                                                ? pos_mod(neg_centered(a, rows), wd.box_rows)
                                                : pos_mod(a, wd.box_rows);
                    const Eigen::Index sc = wd.negated_wrap
                                                ? pos_mod(neg_centered(b, cols), wd.box_cols)
                                                : pos_mod(b, wd.box_cols);
                    wd.slot_r.push_back(sr);
                    wd.slot_c.push_back(sc);
                }
    };

    // low-pass band
    {
        CurveletWedge wd;
        wd.scale = 0;
        wd.wedge = 0;
        Mat<double> win(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c) win(r, c) = radial_band(0, logr(r, c));
        finalize_wedge(wd, win);
        part.bands.push_back(std::move(wd));
    }

    // directional rings
    for (int j = 1; j < J; ++j) {
        const int K = part.wedges_per_scale[static_cast<size_t>(j)];
        const double delta = 2.0 * M_PI / K;

        // raw angular windows, then pairwise symmetrization so that
        // V_{k+K/2}(-w) == V_k(w) holds exactly on the grid
        std::vector<Mat<double>> raw(static_cast<size_t>(K));
        for (int k = 0; k < K; ++k) {
            const double theta_k = -M_PI + (k + 0.5) * delta;
            raw[static_cast<size_t>(k)].resize(rows, cols);
            for (Eigen::Index r = 0; r < rows; ++r)
                for (Eigen::Index c = 0; c < cols; ++c) {
                    double d = ang(r, c) - theta_k;
                    while (d > M_PI) d -= 2.0 * M_PI;
                    while (d <= -M_PI) d += 2.0 * M_PI;
                    const double s = std::abs(d) / delta;
                    raw[static_cast<size_t>(k)](r, c) =
                        s < 1.0 ? std::cos(0.5 * M_PI * meyer_step(s)) : 0.0;
                }
        }

        std::vector<CurveletWedge> ring(static_cast<size_t>(K));
        for (int k = 0; k < K; ++k) {
            const int kp = (k + K / 2) % K;
            CurveletWedge& wd = ring[static_cast<size_t>(k)];
            wd.scale = j;
            wd.wedge = k;
            wd.negated_wrap = k >= K / 2;
            const double theta_k = -M_PI + (k + 0.5) * delta;
            double od = (theta_k - M_PI / 2.0) * 180.0 / M_PI;
            od = std::fmod(std::fmod(od, 180.0) + 180.0, 180.0);
            wd.orientation_deg = od;

            Mat<double> win(rows, cols);
            for (Eigen::Index r = 0; r < rows; ++r)
                for (Eigen::Index c = 0; c < cols; ++c) {
                    const Eigen::Index nr =
                        pos_mod(neg_centered(centered(r, rows), rows), rows);
                    const Eigen::Index nc =
                        pos_mod(neg_centered(centered(c, cols), cols), cols);
                    const double a = raw[static_cast<size_t>(k)](r, c);
                    const double b = raw[static_cast<size_t>(kp)](nr, nc);
                    const double v = std::sqrt(0.5 * (a * a + b * b));
                    win(r, c) = v * radial_band(j, logr(r, c));
                    if (logr(r, c) < -1e29) win(r, c) = 0.0;
                }
            finalize_wedge(wd, win);
        }
        // paired wedges must share a box for the negated wrap to line up
        for (int k = 0; k < K / 2; ++k) {
            CurveletWedge& a = ring[static_cast<size_t>(k)];
            CurveletWedge& b = ring[static_cast<size_t>((k + K / 2) % K)];
            const Eigen::Index br = std::max(a.box_rows, b.box_rows);
            const Eigen::Index bc = std::max(a.box_cols, b.box_cols);
            auto rewrap = [&](CurveletWedge& wd) {
                wd.box_rows = br;
                wd.box_cols = bc;
                for (size_t i = 0; i < wd.c1.size(); ++i) {
                    wd.slot_r[i] = wd.negated_wrap ? pos_mod(neg_centered(wd.c1[i], rows), br)
                                                   : pos_mod(wd.c1[i], br);
                    wd.slot_c[i] = wd.negated_wrap ? pos_mod(neg_centered(wd.c2[i], cols), bc)
                                                   : pos_mod(wd.c2[i], bc);
                }
            };
            rewrap(a);
            rewrap(b);
        }
        for (auto& wd : ring) part.bands.push_back(std::move(wd));
    }
    return part;
}

struct CurveletCoeffs {
    Eigen::Index rows{}, cols{};
    int num_scales{};
    std::vector<CImage> bands;  // same order as CurveletPartition::bands
};

/// Forward wrapping curvelet transform (tight frame: coefficient energy
/// equals input energy).
inline CurveletCoeffs fdct2(const Image& raster, const CurveletPartition& part) {
    using namespace curvedetail;
    if (raster.rows() != part.rows || raster.cols() != part.cols)
        throw ArgumentError("fdct2: raster shape does not match partition");

    const CImage spec = fft2(raster);
    const double n_total = static_cast<double>(part.rows * part.cols);

    CurveletCoeffs out;
    out.rows = part.rows;
    out.cols = part.cols;
    out.num_scales = part.num_scales;
    out.bands.reserve(part.bands.size());
    for (const CurveletWedge& wd : part.bands) {
        CImage wrapped = CImage::Zero(wd.box_rows, wd.box_cols);
        for (size_t i = 0; i < wd.c1.size(); ++i) {
            const Eigen::Index gr = pos_mod(wd.c1[i], part.rows);
            const Eigen::Index gc = pos_mod(wd.c2[i], part.cols);
            wrapped(wd.slot_r[i], wd.slot_c[i]) = spec(gr, gc) * wd.w[i];
        }
        CImage coeff = ifft2(wrapped);
        coeff *= std::sqrt(static_cast<double>(wd.box_rows * wd.box_cols) / n_total);
        out.bands.push_back(std::move(coeff));
    }
    return out;
}

inline CurveletCoeffs fdct2(const Image& raster, int num_scales) {
    return fdct2(raster, curvelet_partition(raster.rows(), raster.cols(), num_scales));
}

/// Inverse transform; exact up to roundoff because the squared windows
/// partition unity and wrapping never aliases within a wedge support.
inline Image ifdct2(const CurveletCoeffs& coeffs, const CurveletPartition& part) {
    using namespace curvedetail;
    if (coeffs.rows != part.rows || coeffs.cols != part.cols ||
        coeffs.num_scales != part.num_scales ||
        coeffs.bands.size() != part.bands.size())
        throw ArgumentError("ifdct2: coefficients do not match partition");
    const double n_total = static_cast<double>(part.rows * part.cols);

    CImage acc = CImage::Zero(part.rows, part.cols);
    for (size_t b = 0; b < part.bands.size(); ++b) {
        const CurveletWedge& wd = part.bands[b];
        const CImage& coeff = coeffs.bands[b];
        if (coeff.rows() != wd.box_rows || coeff.cols() != wd.box_cols)
            throw ArgumentError("ifdct2: corrupted band shape");
        CImage wrapped = fft2(coeff);
        wrapped *= std::sqrt(n_total / static_cast<double>(wd.box_rows * wd.box_cols));
        for (size_t i = 0; i < wd.c1.size(); ++i) {
            const Eigen::Index gr = pos_mod(wd.c1[i], part.rows);
            const Eigen::Index gc = pos_mod(wd.c2[i], part.cols);
            acc(gr, gc) += wrapped(wd.slot_r[i], wd.slot_c[i]) * wd.w[i];
        }
    }
    return ifft2(acc).real();
}

inline Image ifdct2(const CurveletCoeffs& coeffs) {
    return ifdct2(coeffs, curvelet_partition(coeffs.rows, coeffs.cols, coeffs.num_scales));
}

}  // namespace texlab

#endif
