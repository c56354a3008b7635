#ifndef TEXLAB_TYPES_HPP
#define TEXLAB_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace texlab {

// Rasters are row-major so that in-memory layout matches the serialized
// formats (SGRD, PGM) without a transpose.
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Image  = Mat<double>;
using CImage = Mat<std::complex<double>>;

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Half-sample symmetric reflection of index i into [0, n).
inline Eigen::Index reflect_index(Eigen::Index i, Eigen::Index n) {
    if (n == 1) return 0;
    const Eigen::Index period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

}  // namespace texlab

#endif
