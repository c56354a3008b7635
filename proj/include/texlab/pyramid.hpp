#ifndef TEXLAB_PYRAMID_HPP
#define TEXLAB_PYRAMID_HPP

#include <vector>

#include "texlab/convolve.hpp"
#include "texlab/types.hpp"

namespace texlab {

struct Pyramid {
    std::vector<Image> levels;  // levels[0] is full resolution
};

/// Burt-Adelson style pyramid: separable [1,4,6,4,1]/16 blur, then keep
/// even-indexed rows and columns. Level k+1 dims are ceil(level k dims / 2).
inline Pyramid gaussian_pyramid(const Image& raster, int num_scales) {
    if (num_scales < 1) throw ArgumentError("gaussian_pyramid: num_scales must be >= 1");
    const Eigen::Index min_dim = std::min(raster.rows(), raster.cols());
    if (min_dim < (Eigen::Index{1} << (num_scales - 1)))
        throw ArgumentError("gaussian_pyramid: raster too small for requested scales");

    Eigen::VectorXd k(5);
    k << 1, 4, 6, 4, 1;
    k /= 16.0;

    Pyramid p;
    p.levels.push_back(raster);
    for (int s = 1; s < num_scales; ++s) {
        const Image& prev = p.levels.back();
        Image blurred = convolve_separable(prev, k);
        const Eigen::Index nr = (prev.rows() + 1) / 2, nc = (prev.cols() + 1) / 2;
        Image down(nr, nc);
        for (Eigen::Index r = 0; r < nr; ++r)
            for (Eigen::Index c = 0; c < nc; ++c) down(r, c) = blurred(2 * r, 2 * c);
        p.levels.push_back(std::move(down));
    }
    return p;
}

}  // namespace texlab

#endif
