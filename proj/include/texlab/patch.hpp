#ifndef TEXLAB_PATCH_HPP
#define TEXLAB_PATCH_HPP

#include <cmath>

#include "texlab/types.hpp"

namespace texlab {

struct Patch {
    Image data;                 // side x side, Gaussian-tapered
    Eigen::Index center_row{};  // in the parent raster
    Eigen::Index center_col{};
};

/// Gaussian taper whose corner weight is exactly 1%: sigma = d_corner / sqrt(2 ln 100).
inline Image gaussian_taper(Eigen::Index side) {
    if (side < 1 || side % 2 == 0) throw ArgumentError("gaussian_taper: side must be odd");
    const double half = (side - 1) / 2.0;
    const double d_corner = half * std::sqrt(2.0);
    const double sigma = side == 1 ? 1.0 : d_corner / std::sqrt(2.0 * std::log(100.0));
    Image w(side, side);
    for (Eigen::Index r = 0; r < side; ++r)
        for (Eigen::Index c = 0; c < side; ++c) {
            const double dr = r - half, dc = c - half;
            w(r, c) = std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
        }
    return w;
}

/// Extract a side x side patch centered at (row, col) with symmetric-reflection
/// padding, then multiply by the Gaussian taper.
inline Patch extract_weighted_patch(const Image& raster, Eigen::Index row, Eigen::Index col,
                                    Eigen::Index side) {
    if (side < 1 || side % 2 == 0) throw ArgumentError("extract_weighted_patch: side must be odd");
    if (row < 0 || row >= raster.rows() || col < 0 || col >= raster.cols())
        throw ArgumentError("extract_weighted_patch: center outside raster");

    const Eigen::Index half = side / 2;
    const Image taper = gaussian_taper(side);
    Patch p;
    p.center_row = row;
    p.center_col = col;
    p.data.resize(side, side);
    for (Eigen::Index r = 0; r < side; ++r) {
        const Eigen::Index rr = reflect_index(row - half + r, raster.rows());
        for (Eigen::Index c = 0; c < side; ++c) {
            const Eigen::Index cc = reflect_index(col - half + c, raster.cols());
            p.data(r, c) = raster(rr, cc) * taper(r, c);
        }
    }
    return p;
}

}  // namespace texlab

#endif
