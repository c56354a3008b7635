#ifndef TEXLAB_GABOR_HPP
#define TEXLAB_GABOR_HPP

#include <cmath>
#include <vector>

#include "texlab/fft.hpp"
#include "texlab/types.hpp"

namespace texlab {

struct GaborFilter {
    CImage kernel;       // odd side, DC-corrected real part
    int scale{};         // 0 = finest (highest frequency)
    int orientation{};   // index into theta = k*pi/num_orientations
    double frequency{};  // cycles/pixel
    double theta{};      // radians
};

struct GaborBank {
    std::vector<GaborFilter> filters;
    int num_scales{};
    int num_orientations{};
};

/// Octave-spaced bank: f_s = 0.25 / 2^s, sigma_s = 0.56 / f_s (about one
/// octave bandwidth), support truncated at +-3 sigma.
inline GaborBank build_gabor_bank(int num_scales = 3, int num_orientations = 4) {
    if (num_scales < 1 || num_orientations < 1)
        throw ArgumentError("build_gabor_bank: counts must be >= 1");

    GaborBank bank;
    bank.num_scales = num_scales;
    bank.num_orientations = num_orientations;
    for (int s = 0; s < num_scales; ++s) {
        const double f = 0.25 / std::pow(2.0, s);
        const double sigma = 0.56 / f;
        const Eigen::Index half = static_cast<Eigen::Index>(std::ceil(3.0 * sigma));
        const Eigen::Index side = 2 * half + 1;
        for (int o = 0; o < num_orientations; ++o) {
            const double theta = o * M_PI / num_orientations;
            const double ct = std::cos(theta), st = std::sin(theta);
            GaborFilter flt;
            flt.scale = s;
            flt.orientation = o;
            flt.frequency = f;
            flt.theta = theta;
            flt.kernel.resize(side, side);
            for (Eigen::Index r = 0; r < side; ++r)
                for (Eigen::Index c = 0; c < side; ++c) {
                    const double y = static_cast<double>(r - half);
                    const double x = static_cast<double>(c - half);
                    const double env = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
                    const double phase = 2.0 * M_PI * f * (x * ct + y * st);
                    flt.kernel(r, c) = {env * std::cos(phase), env * std::sin(phase)};
                }
            // DC-correct the real (even) part so constants give zero response
            const double mean = flt.kernel.real().mean();
            flt.kernel.array() -= std::complex<double>(mean, 0.0);
            bank.filters.push_back(std::move(flt));
        }
    }
    return bank;
}

/// Magnitude response of the raster to one complex kernel, symmetric border.
/// Runs as a circular convolution on a reflection-padded grid, which matches
/// direct symmetric-border convolution exactly on the interior window.
inline Image gabor_response(const Image& raster, const GaborFilter& flt) {
    const Eigen::Index kr = flt.kernel.rows(), kc = flt.kernel.cols();
    if (raster.rows() < kr || raster.cols() < kc)
        throw ArgumentError("gabor_response: raster smaller than kernel");
    const Eigen::Index hr = kr / 2, hc = kc / 2;
    const Eigen::Index pr = raster.rows() + 2 * hr, pc = raster.cols() + 2 * hc;

    CImage padded = CImage::Zero(pr, pc);
    for (Eigen::Index r = 0; r < pr; ++r)
        for (Eigen::Index c = 0; c < pc; ++c)
            padded(r, c) = raster(reflect_index(r - hr, raster.rows()),
                                  reflect_index(c - hc, raster.cols()));

    // centered kernel embedded at the origin of the padded grid
    CImage kgrid = CImage::Zero(pr, pc);
    for (Eigen::Index r = 0; r < kr; ++r)
        for (Eigen::Index c = 0; c < kc; ++c) {
            const Eigen::Index rr = (r - hr + pr) % pr;
            const Eigen::Index cc = (c - hc + pc) % pc;
            kgrid(rr, cc) = flt.kernel(r, c);
        }

    CImage spec = fft2(padded).cwiseProduct(fft2(kgrid));
    CImage conv = ifft2(spec);

    Image out(raster.rows(), raster.cols());
    for (Eigen::Index r = 0; r < raster.rows(); ++r)
        for (Eigen::Index c = 0; c < raster.cols(); ++c) out(r, c) = std::abs(conv(r + hr, c + hc));
    return out;
}

namespace gabordetail {

// smallest 5-smooth number >= n, for fast mixed-radix FFTs
inline Eigen::Index next_fast_size(Eigen::Index n) {
    for (Eigen::Index m = n;; ++m) {
        Eigen::Index v = m;
        for (Eigen::Index f : {2, 3, 5})
            while (v % f == 0) v /= f;
        if (v == 1) return m;
    }
}

}  // namespace gabordetail

/// Precomputed kernel spectra on one shared padded grid, reused across
/// rasters of the same shape.
struct GaborPlan {
    Eigen::Index rows{}, cols{};     // raster shape
    Eigen::Index half{};             // largest kernel half-extent
    Eigen::Index prows{}, pcols{};   // padded FFT grid
    std::vector<CImage> kernel_spectra;
};

inline GaborPlan make_gabor_plan(const GaborBank& bank, Eigen::Index rows, Eigen::Index cols) {
    GaborPlan plan;
    plan.rows = rows;
    plan.cols = cols;
    Eigen::Index half = 0;
    for (const auto& flt : bank.filters) half = std::max(half, flt.kernel.rows() / 2);
    if (rows < 2 * half + 1 || cols < 2 * half + 1)
        throw ArgumentError("make_gabor_plan: raster smaller than largest kernel");
    plan.half = half;
    plan.prows = gabordetail::next_fast_size(rows + 2 * half);
    plan.pcols = gabordetail::next_fast_size(cols + 2 * half);
    for (const auto& flt : bank.filters) {
        const Eigen::Index kr = flt.kernel.rows(), kc = flt.kernel.cols();
        const Eigen::Index hr = kr / 2, hc = kc / 2;
        CImage kgrid = CImage::Zero(plan.prows, plan.pcols);
        for (Eigen::Index r = 0; r < kr; ++r)
            for (Eigen::Index c = 0; c < kc; ++c)
                kgrid((r - hr + plan.prows) % plan.prows, (c - hc + plan.pcols) % plan.pcols) =
                    flt.kernel(r, c);
        plan.kernel_spectra.push_back(fft2(kgrid));
    }
    return plan;
}

/// One magnitude subband per filter, in bank order. All filters run against
/// a single reflection-padded spectrum of the raster.
inline std::vector<Image> apply_gabor_bank(const Image& raster, const GaborBank& bank,
                                           const GaborPlan& plan) {
    if (raster.rows() != plan.rows || raster.cols() != plan.cols)
        throw ArgumentError("apply_gabor_bank: raster shape does not match plan");
    const Eigen::Index h = plan.half;
    CImage padded = CImage::Zero(plan.prows, plan.pcols);
    for (Eigen::Index r = 0; r < plan.rows + 2 * h; ++r)
        for (Eigen::Index c = 0; c < plan.cols + 2 * h; ++c)
            padded(r, c) =
                raster(reflect_index(r - h, raster.rows()), reflect_index(c - h, raster.cols()));
    const CImage spec = fft2(padded);

    std::vector<Image> out;
    out.reserve(bank.filters.size());
    for (size_t i = 0; i < bank.filters.size(); ++i) {
        const CImage conv = ifft2(CImage(spec.cwiseProduct(plan.kernel_spectra[i])));
        Image mag(raster.rows(), raster.cols());
        for (Eigen::Index r = 0; r < raster.rows(); ++r)
            for (Eigen::Index c = 0; c < raster.cols(); ++c) mag(r, c) = std::abs(conv(r + h, c + h));
        out.push_back(std::move(mag));
    }
    return out;
}

inline std::vector<Image> apply_gabor_bank(const Image& raster, const GaborBank& bank) {
    return apply_gabor_bank(raster, bank, make_gabor_plan(bank, raster.rows(), raster.cols()));
}

}  // namespace texlab

#endif
