#ifndef TEXLAB_FEATURES_HPP
#define TEXLAB_FEATURES_HPP

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/SVD>

#include "texlab/curvelet.hpp"
#include "texlab/gabor.hpp"
#include "texlab/patch.hpp"
#include "texlab/pyramid.hpp"
#include "texlab/types.hpp"
#include "texlab/wavelet.hpp"

namespace texlab {

enum class Attribute { amplitude, pyramid, dwt, gabor, curvelet };

inline std::string attribute_name(Attribute a) {
    switch (a) {
        case Attribute::amplitude: return "amplitude";
        case Attribute::pyramid: return "pyramid";
        case Attribute::dwt: return "dwt";
        case Attribute::gabor: return "gabor";
        case Attribute::curvelet: return "curvelet";
    }
    throw ArgumentError("unknown attribute");
}

inline Attribute attribute_from_name(const std::string& s) {
    if (s == "amplitude") return Attribute::amplitude;
    if (s == "pyramid") return Attribute::pyramid;
    if (s == "dwt") return Attribute::dwt;
    if (s == "gabor") return Attribute::gabor;
    if (s == "curvelet") return Attribute::curvelet;
    throw ArgumentError("unknown attribute: " + s);
}

struct AttributeConfig {
    Attribute attribute = Attribute::curvelet;
    int scales = 3;              // decomposition depth for multiscale attributes
    int gabor_orientations = 4;  // gabor only
    Eigen::Index patch_side = 99;
};

struct FeatureVector {
    Eigen::VectorXd values;
    Attribute attribute{};
    // per-subband (offset, length) into `values`
    std::vector<std::pair<Eigen::Index, Eigen::Index>> layout;
};

/// Singular values, descending.
inline Eigen::VectorXd singular_values(const Image& m) {
    if (m.rows() == 0 || m.cols() == 0) throw ArgumentError("singular_values: empty matrix");
    if (std::min(m.rows(), m.cols()) <= 16) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        return svd.singularValues();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues();
}

/// Effective rank: exp of the entropy of the l1-normalized singular values.
/// All-zero input degenerates to 1.
inline double effective_rank(const Eigen::VectorXd& sv) {
    if (sv.size() == 0) throw ArgumentError("effective_rank: empty vector");
    const double total = sv.sum();
    if (total <= 0.0) return 1.0;
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double p = sv(i) / total;
        if (p > 0.0) entropy -= p * std::log(p);
    }
    return std::exp(entropy);
}

/// Fixed-length descriptor of one subband: the full singular-value list with
/// entries past ceil(effective rank) zeroed.
inline Eigen::VectorXd subband_descriptor(const Image& grid) {
    const Eigen::VectorXd sv = singular_values(grid);
    const Eigen::Index keep = static_cast<Eigen::Index>(std::ceil(effective_rank(sv)));
    Eigen::VectorXd out = sv;
    for (Eigen::Index i = keep; i < out.size(); ++i) out(i) = 0.0;
    return out;
}

inline Eigen::VectorXd subband_descriptor(const CImage& grid) {
    return subband_descriptor(Image(grid.cwiseAbs()));
}

namespace detail {

inline void append_descriptor(FeatureVector& fv, std::vector<double>& buf,
                              const Eigen::VectorXd& d) {
    fv.layout.emplace_back(static_cast<Eigen::Index>(buf.size()), d.size());
    buf.insert(buf.end(), d.data(), d.data() + d.size());
}

// per-shape caches so repeated extraction does not rebuild partitions/plans
struct GaborCacheEntry {
    GaborBank bank;
    GaborPlan plan;
};

inline std::shared_ptr<const GaborCacheEntry> cached_gabor(int scales, int orientations,
                                                           Eigen::Index rows, Eigen::Index cols) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, Eigen::Index, Eigen::Index>,
                    std::shared_ptr<const GaborCacheEntry>>
        cache;
    const auto key = std::make_tuple(scales, orientations, rows, cols);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto entry = std::make_shared<GaborCacheEntry>();
    entry->bank = build_gabor_bank(scales, orientations);
    entry->plan = make_gabor_plan(entry->bank, rows, cols);
    return cache[key] = entry;
}

inline std::shared_ptr<const CurveletPartition> cached_partition(Eigen::Index rows,
                                                                 Eigen::Index cols, int scales) {
    static std::mutex mu;
    static std::map<std::tuple<Eigen::Index, Eigen::Index, int>,
                    std::shared_ptr<const CurveletPartition>>
        cache;
    const auto key = std::make_tuple(rows, cols, scales);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto part = std::make_shared<CurveletPartition>(curvelet_partition(rows, cols, scales));
    return cache[key] = part;
}

}  // namespace detail

/// Concatenated effective-singular-value features of one Gaussian-weighted
/// patch. Subband order: detail/directional bands coarse to fine, within a
/// scale by orientation index, approximation/low-pass last.
inline FeatureVector attribute_features(const Image& patch, const AttributeConfig& cfg) {
    FeatureVector fv;
    fv.attribute = cfg.attribute;
    std::vector<double> buf;

    switch (cfg.attribute) {
        case Attribute::amplitude:
            detail::append_descriptor(fv, buf, subband_descriptor(patch));
            break;
        case Attribute::pyramid: {
            Pyramid p = gaussian_pyramid(patch, cfg.scales);
            for (auto it = p.levels.rbegin(); it != p.levels.rend(); ++it)
                detail::append_descriptor(fv, buf, subband_descriptor(*it));
            break;
        }
        case Attribute::dwt: {
            DwtSubbands sb = dwt2_multi(patch, cfg.scales);
            for (auto it = sb.levels.rbegin(); it != sb.levels.rend(); ++it) {
                detail::append_descriptor(fv, buf, subband_descriptor(it->lh));
                detail::append_descriptor(fv, buf, subband_descriptor(it->hl));
                detail::append_descriptor(fv, buf, subband_descriptor(it->hh));
            }
            detail::append_descriptor(fv, buf, subband_descriptor(sb.ll));
            break;
        }
        case Attribute::gabor: {
            auto entry = detail::cached_gabor(cfg.scales, cfg.gabor_orientations, patch.rows(),
                                              patch.cols());
            const std::vector<Image> resp = apply_gabor_bank(patch, entry->bank, entry->plan);
            // bank order is finest scale first; emit coarse to fine
            for (int s = cfg.scales - 1; s >= 0; --s)
                for (int o = 0; o < cfg.gabor_orientations; ++o)
                    detail::append_descriptor(
                        fv, buf,
                        subband_descriptor(resp[static_cast<size_t>(s * cfg.gabor_orientations + o)]));
            break;
        }
        case Attribute::curvelet: {
            CurveletCoeffs cc =
                fdct2(patch, *detail::cached_partition(patch.rows(), patch.cols(), cfg.scales));
            for (size_t b = 1; b < cc.bands.size(); ++b)
                detail::append_descriptor(fv, buf, subband_descriptor(cc.bands[b]));
            detail::append_descriptor(fv, buf, subband_descriptor(cc.bands[0]));
            break;
        }
    }

    fv.values = Eigen::Map<Eigen::VectorXd>(buf.data(), static_cast<Eigen::Index>(buf.size()));
    return fv;
}

}  // namespace texlab

#endif
