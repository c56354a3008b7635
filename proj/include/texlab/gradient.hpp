#ifndef TEXLAB_GRADIENT_HPP
#define TEXLAB_GRADIENT_HPP

#include <utility>

#include "texlab/types.hpp"

namespace texlab {

/// Central differences at interior pixels, one-sided at the borders.
/// gx differentiates along columns (x), gy along rows (y).
inline std::pair<Image, Image> gradient2d(const Image& in) {
    const Eigen::Index rows = in.rows(), cols = in.cols();
    if (rows < 2 || cols < 2) throw ArgumentError("gradient2d: both dimensions must be >= 2");

    Image gx(rows, cols), gy(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        gx(r, 0) = in(r, 1) - in(r, 0);
        for (Eigen::Index c = 1; c + 1 < cols; ++c)
            gx(r, c) = (in(r, c + 1) - in(r, c - 1)) / 2.0;
        gx(r, cols - 1) = in(r, cols - 1) - in(r, cols - 2);
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
        gy(0, c) = in(1, c) - in(0, c);
        for (Eigen::Index r = 1; r + 1 < rows; ++r)
            gy(r, c) = (in(r + 1, c) - in(r - 1, c)) / 2.0;
        gy(rows - 1, c) = in(rows - 1, c) - in(rows - 2, c);
    }
    return {std::move(gx), std::move(gy)};
}

}  // namespace texlab

#endif
