#ifndef TEXLAB_CONVOLVE_HPP
#define TEXLAB_CONVOLVE_HPP

#include "texlab/types.hpp"

namespace texlab {

/// 2-D convolution with half-sample symmetric border extension.
/// Kernel sides must be odd; output has the shape of the input.
template <typename Scalar, typename KScalar>
Mat<decltype(Scalar{} * KScalar{})> convolve2d(const Mat<Scalar>& in,
                                               const Mat<KScalar>& kernel) {
    using Out = decltype(Scalar{} * KScalar{});
    const Eigen::Index kr = kernel.rows(), kc = kernel.cols();
    if (kr % 2 == 0 || kc % 2 == 0)
        throw ArgumentError("convolve2d: kernel sides must be odd");
    const Eigen::Index hr = kr / 2, hc = kc / 2;
    const Eigen::Index rows = in.rows(), cols = in.cols();

    Mat<Out> out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            Out acc{};
            for (Eigen::Index i = 0; i < kr; ++i) {
                const Eigen::Index rr = reflect_index(r + i - hr, rows);
                for (Eigen::Index j = 0; j < kc; ++j) {
                    const Eigen::Index cc = reflect_index(c + j - hc, cols);
                    acc += in(rr, cc) * kernel(kr - 1 - i, kc - 1 - j);
                }
            }
            out(r, c) = acc;
        }
    }
    return out;
}

/// Separable convolution with a 1-D kernel applied along rows then columns.
template <typename Scalar>
Mat<Scalar> convolve_separable(const Mat<Scalar>& in,
                               const Eigen::Vector<Scalar, Eigen::Dynamic>& k) {
    const Eigen::Index n = k.size();
    if (n % 2 == 0) throw ArgumentError("convolve_separable: kernel length must be odd");
    const Eigen::Index h = n / 2;
    const Eigen::Index rows = in.rows(), cols = in.cols();

    Mat<Scalar> tmp(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            Scalar acc{};
            for (Eigen::Index j = 0; j < n; ++j)
                acc += in(r, reflect_index(c + j - h, cols)) * k(n - 1 - j);
            tmp(r, c) = acc;
        }
    Mat<Scalar> out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            Scalar acc{};
            for (Eigen::Index i = 0; i < n; ++i)
                acc += tmp(reflect_index(r + i - h, rows), c) * k(n - 1 - i);
            out(r, c) = acc;
        }
    return out;
}

}  // namespace texlab

#endif
