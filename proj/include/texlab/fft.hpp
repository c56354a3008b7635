#ifndef TEXLAB_FFT_HPP
#define TEXLAB_FFT_HPP

#include <vector>

#include <unsupported/Eigen/FFT>

#include "texlab/types.hpp"

namespace texlab {

enum class SpectralDirection { forward, inverse };

/// 2-D DFT of arbitrary (mixed-radix) size. Forward is unscaled; inverse
/// divides by width*height, so inverse(forward(x)) == x.
inline CImage spectral_transform(const CImage& in, SpectralDirection dir) {
    const Eigen::Index rows = in.rows(), cols = in.cols();
    CImage out = in;
    Eigen::FFT<double> fft;

    std::vector<std::complex<double>> buf_in, buf_out;
    // rows
    buf_in.resize(static_cast<size_t>(cols));
    buf_out.resize(static_cast<size_t>(cols));
    if (cols > 1) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) buf_in[c] = out(r, c);
            if (dir == SpectralDirection::forward)
                fft.fwd(buf_out, buf_in);
            else
                fft.inv(buf_out, buf_in);
            for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = buf_out[c];
        }
    }
    // columns
    buf_in.resize(static_cast<size_t>(rows));
    buf_out.resize(static_cast<size_t>(rows));
    if (rows > 1) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            for (Eigen::Index r = 0; r < rows; ++r) buf_in[r] = out(r, c);
            if (dir == SpectralDirection::forward)
                fft.fwd(buf_out, buf_in);
            else
                fft.inv(buf_out, buf_in);
            for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = buf_out[r];
        }
    }
    return out;
}

inline CImage fft2(const Image& in) {
    return spectral_transform(in.cast<std::complex<double>>(), SpectralDirection::forward);
}

inline CImage fft2(const CImage& in) {
    return spectral_transform(in, SpectralDirection::forward);
}

inline CImage ifft2(const CImage& in) {
    return spectral_transform(in, SpectralDirection::inverse);
}

}  // namespace texlab

#endif
