#ifndef TEXLAB_RASTER_IO_HPP
#define TEXLAB_RASTER_IO_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "texlab/types.hpp"

namespace texlab {

enum class RasterFormat { pgm, sgrd };

namespace detail {

inline void skip_pnm_whitespace(std::istream& is) {
    int c = is.peek();
    while (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#') {
        if (c == '#') {
            while (is.good() && is.get() != '\n') {}
        } else {
            is.get();
        }
        c = is.peek();
    }
}

inline long read_pnm_int(std::istream& is) {
    skip_pnm_whitespace(is);
    long v = -1;
    if (!(is >> v)) return -1;
    return v;
}

inline uint32_t read_u32le(std::istream& is) {
    std::array<unsigned char, 4> b{};
    is.read(reinterpret_cast<char*>(b.data()), 4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

inline void write_u32le(std::ostream& os, uint32_t v) {
    const std::array<unsigned char, 4> b{
        static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
        static_cast<unsigned char>((v >> 16) & 0xff), static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b.data()), 4);
}

}  // namespace detail

/// PGM pixels map to [0,1] by /255; SGRD payloads are verbatim float32.
inline Image read_raster(const std::string& path, RasterFormat format) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);

    if (format == RasterFormat::pgm) {
        char m0 = 0, m1 = 0;
        is.get(m0);
        is.get(m1);
        if (!is || m0 != 'P' || m1 != '5') throw FormatError(path + ": not a P5 PGM");
        const long w = detail::read_pnm_int(is);
        const long h = detail::read_pnm_int(is);
        const long maxval = detail::read_pnm_int(is);
        if (w <= 0 || h <= 0) throw FormatError(path + ": bad PGM dimensions");
        if (maxval <= 0 || maxval > 255) throw FormatError(path + ": unsupported PGM maxval");
        is.get();  // single whitespace byte after maxval
        std::vector<unsigned char> buf(static_cast<size_t>(w) * static_cast<size_t>(h));
        is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (static_cast<size_t>(is.gcount()) != buf.size())
            throw FormatError(path + ": truncated PGM payload");
        Image img(h, w);
        for (long r = 0; r < h; ++r)
            for (long c = 0; c < w; ++c)
                img(r, c) = buf[static_cast<size_t>(r) * w + c] / 255.0;
        return img;
    }

    char magic[4] = {0, 0, 0, 0};
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "SGRD", 4) != 0) throw FormatError(path + ": bad SGRD magic");
    const uint32_t w = detail::read_u32le(is);
    const uint32_t h = detail::read_u32le(is);
    if (!is) throw FormatError(path + ": truncated SGRD header");
    if (w == 0 || h == 0) throw FormatError(path + ": zero SGRD dimension");
    std::vector<float> buf(static_cast<size_t>(w) * h);
    is.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (static_cast<size_t>(is.gcount()) != buf.size() * sizeof(float))
        throw FormatError(path + ": truncated SGRD payload");
    Image img(h, w);
    for (uint32_t r = 0; r < h; ++r)
        for (uint32_t c = 0; c < w; ++c) img(r, c) = buf[static_cast<size_t>(r) * w + c];
    return img;
}

/// PGM output clamps to [0,1] and rounds half-up to 0..255.
inline void write_raster(const Image& img, const std::string& path, RasterFormat format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path);

    if (format == RasterFormat::pgm) {
        os << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
        for (Eigen::Index r = 0; r < img.rows(); ++r)
            for (Eigen::Index c = 0; c < img.cols(); ++c) {
                const double v = std::min(1.0, std::max(0.0, img(r, c)));
                const unsigned char b = static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));
                os.put(static_cast<char>(b));
            }
    } else {
        os.write("SGRD", 4);
        detail::write_u32le(os, static_cast<uint32_t>(img.cols()));
        detail::write_u32le(os, static_cast<uint32_t>(img.rows()));
        for (Eigen::Index r = 0; r < img.rows(); ++r)
            for (Eigen::Index c = 0; c < img.cols(); ++c) {
                const float f = static_cast<float>(img(r, c));
                static_assert(sizeof(float) == 4);
                char b[4];
                std::memcpy(b, &f, 4);
                os.write(b, 4);
            }
    }
    if (!os) throw IoError("write failed: " + path);
}

struct Rgb {
    unsigned char r, g, b;
};

/// Binary P6 PPM; `palette[id]` colors each pixel of an integer label grid.
inline void write_label_ppm(const Mat<int>& labels, const std::vector<Rgb>& palette,
                            const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path);
    os << "P6\n" << labels.cols() << " " << labels.rows() << "\n255\n";
    for (Eigen::Index r = 0; r < labels.rows(); ++r)
        for (Eigen::Index c = 0; c < labels.cols(); ++c) {
            const int id = labels(r, c);
            if (id < 0 || static_cast<size_t>(id) >= palette.size())
                throw ArgumentError("label id outside palette");
            const Rgb& p = palette[static_cast<size_t>(id)];
            os.put(static_cast<char>(p.r));
            os.put(static_cast<char>(p.g));
            os.put(static_cast<char>(p.b));
        }
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace texlab

#endif
