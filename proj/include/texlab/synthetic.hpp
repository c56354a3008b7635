#ifndef TEXLAB_SYNTHETIC_HPP
#define TEXLAB_SYNTHETIC_HPP

#include <cmath>
#include <random>

#include "texlab/convolve.hpp"
#include "texlab/types.hpp"

namespace texlab {

// Deterministic texture generators for the 4-class synthetic benchmark:
// two oriented sinusoid classes, band-limited noise, and smooth layering.

inline Image oriented_sinusoid(Eigen::Index side, double orientation_deg, std::mt19937& rng) {
    std::uniform_real_distribution<double> jitter(-5.0, 5.0);
    // keep the stripes inside the directional rings of a 3-scale curvelet
    // partition: the low-pass ring reaches normalized radius 2^-1 (f = 0.25),
    // so sample above it
    std::uniform_real_distribution<double> freq(0.28, 0.40);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::normal_distribution<double> noise(0.0, 0.15);

    const double alpha = (orientation_deg + jitter(rng)) * M_PI / 180.0;
    const double f = freq(rng);
    const double ph = phase(rng);
    // wave vector perpendicular to the stripe orientation
    const double kx = std::cos(alpha + M_PI / 2.0), ky = std::sin(alpha + M_PI / 2.0);
    Image img(side, side);
    for (Eigen::Index r = 0; r < side; ++r)
        for (Eigen::Index c = 0; c < side; ++c)
            img(r, c) = std::sin(2.0 * M_PI * f * (c * kx + r * ky) + ph) + noise(rng);
    return img;
}

inline Image bandlimited_noise(Eigen::Index side, std::mt19937& rng) {
    std::normal_distribution<double> noise(0.0, 1.0);
    Image img(side, side);
    for (Eigen::Index r = 0; r < side; ++r)
        for (Eigen::Index c = 0; c < side; ++c) img(r, c) = noise(rng);
    Eigen::VectorXd k(5);
    k << 1, 4, 6, 4, 1;
    k /= 16.0;
    img = convolve_separable(img, k);
    img = convolve_separable(img, k);
    return img;
}

inline Image smooth_layers(Eigen::Index side, std::mt19937& rng) {
    std::uniform_real_distribution<double> freq(0.02, 0.05);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> warp(0.0, 3.0);
    std::normal_distribution<double> noise(0.0, 0.05);

    const double f = freq(rng);
    const double ph = phase(rng);
    const double w = warp(rng);
    Image img(side, side);
    for (Eigen::Index r = 0; r < side; ++r)
        for (Eigen::Index c = 0; c < side; ++c) {
            const double bend = w * std::sin(2.0 * M_PI * c / static_cast<double>(side));
            img(r, c) = std::sin(2.0 * M_PI * f * (r + bend) + ph) + noise(rng);
        }
    return img;
}

/// Benchmark class order: 0 sinusoid 30deg, 1 sinusoid 120deg, 2 chaotic,
/// 3 layered.
inline Image synthetic_patch(int cls, Eigen::Index side, std::mt19937& rng) {
    switch (cls) {
        case 0: return oriented_sinusoid(side, 30.0, rng);
        case 1: return oriented_sinusoid(side, 120.0, rng);
        case 2: return bandlimited_noise(side, rng);
        case 3: return smooth_layers(side, rng);
        default: throw ArgumentError("synthetic_patch: class must be 0..3");
    }
}

}  // namespace texlab

#endif
