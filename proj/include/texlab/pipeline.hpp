#ifndef TEXLAB_PIPELINE_HPP
#define TEXLAB_PIPELINE_HPP

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "texlab/features.hpp"
#include "texlab/metrics.hpp"
#include "texlab/raster_io.hpp"
#include "texlab/slic.hpp"
#include "texlab/svm.hpp"
#include "texlab/types.hpp"

namespace texlab {

struct RunConfig {
    AttributeConfig attr;
    int superpixel_count = 0;  // 0: pixels / 2500
    double compactness = 10.0;
    int slic_iters = 10;
    SvmTrainConfig svm;
    std::vector<std::string> class_names = default_class_names();
};

/// Figure-8 style overlay palette: chaotic blue, faults green, salt red,
/// other gray; classes beyond four cycle through a fallback ramp.
inline std::vector<Rgb> default_palette(size_t n_classes) {
    std::vector<Rgb> pal = {{0, 0, 255}, {0, 255, 0}, {255, 0, 0}, {128, 128, 128}};
    while (pal.size() < n_classes) {
        const unsigned char v = static_cast<unsigned char>(32 * (pal.size() % 8));
        pal.push_back({v, static_cast<unsigned char>(255 - v), 128});
    }
    pal.resize(std::max(pal.size(), n_classes));
    return pal;
}

namespace pipedetail {

inline Image read_any_raster(const std::filesystem::path& p) {
    const std::string ext = p.extension().string();
    if (ext == ".pgm") return read_raster(p.string(), RasterFormat::pgm);
    if (ext == ".sgrd") return read_raster(p.string(), RasterFormat::sgrd);
    throw FormatError("unsupported raster extension: " + p.string());
}

inline std::string json_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace pipedetail

/// Train on a directory of class subdirectories holding PGM/SGRD patches.
/// Returns the model; per-class counts come back through `counts` when given.
inline SvmModel cmd_train(const RunConfig& cfg, const std::string& dataset_root,
                          std::vector<std::pair<std::string, size_t>>* counts = nullptr) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dataset_root)) throw IoError("dataset root not found: " + dataset_root);

    std::vector<std::string> dirs;
    for (const auto& e : fs::directory_iterator(dataset_root))
        if (e.is_directory()) dirs.push_back(e.path().filename().string());
    std::sort(dirs.begin(), dirs.end());

    // the canonical four-class layout keeps its fixed id order; anything else
    // is ordered lexicographically
    std::vector<std::string> ordered = dirs;
    {
        std::vector<std::string> canon = cfg.class_names;
        std::vector<std::string> canon_sorted = canon;
        std::sort(canon_sorted.begin(), canon_sorted.end());
        if (dirs == canon_sorted) ordered = canon;
    }

    const Image taper = gaussian_taper(cfg.attr.patch_side);
    std::vector<Eigen::VectorXd> features;
    std::vector<int> labels;
    std::vector<std::pair<std::string, size_t>> class_counts;

    for (size_t cls = 0; cls < ordered.size(); ++cls) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(fs::path(dataset_root) / ordered[cls]))
            if (e.is_regular_file()) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw TrainingError("empty class directory: " + ordered[cls]);

        const size_t first = features.size();
        for (const auto& f : files) {
            Image img = pipedetail::read_any_raster(f);
            if (img.rows() != cfg.attr.patch_side || img.cols() != cfg.attr.patch_side)
                throw FormatError("patch of wrong size: " + f.string());
            Image weighted = img.cwiseProduct(taper);
            features.push_back(attribute_features(weighted, cfg.attr).values);
            labels.push_back(static_cast<int>(cls));
        }
        class_counts.emplace_back(ordered[cls], features.size() - first);
    }

    SvmModel model = train_classifier(features, labels, cfg.svm, ordered,
                                      attribute_name(cfg.attr.attribute));
    if (counts) *counts = class_counts;
    return model;
}

inline void save_model(const SvmModel& model, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    os << pipedetail::json_dump(svm_to_json(model));
}

inline SvmModel load_model(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad model JSON: ") + e.what());
    }
    return svm_from_json(j);
}

struct LabelResult {
    Mat<int> labels;         // per-pixel class id
    SuperpixelMap superpixels;
    std::vector<int> superpixel_class;  // by superpixel id
};

/// Label a whole section: SLIC, classify the tapered patch at each superpixel
/// centroid, spread the class over the superpixel.
inline LabelResult cmd_label(const RunConfig& cfg, const Image& section, const SvmModel& model) {
    if (model.attribute != attribute_name(cfg.attr.attribute))
        throw ConfigError("model attribute '" + model.attribute + "' does not match config '" +
                          attribute_name(cfg.attr.attribute) + "'");

    LabelResult res;
    const int target = cfg.superpixel_count > 0
                           ? cfg.superpixel_count
                           : std::max<int>(1, static_cast<int>(section.size() / 2500));
    res.superpixels = slic_segment(section, target, cfg.compactness, cfg.slic_iters);

    res.superpixel_class.assign(static_cast<size_t>(res.superpixels.count), 0);
    const int n = res.superpixels.count;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int n_workers = static_cast<int>(std::min<unsigned>(hw, 8));
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (int t = 0; t < n_workers; ++t)
        workers.emplace_back([&]() {
            for (int k = next.fetch_add(1); k < n; k = next.fetch_add(1)) {
                const auto [r, c] = centroid_pixel(res.superpixels, k);
                const Patch p = extract_weighted_patch(section, r, c, cfg.attr.patch_side);
                const FeatureVector fv = attribute_features(p.data, cfg.attr);
                res.superpixel_class[static_cast<size_t>(k)] = predict(model, fv.values).first;
            }
        });
    for (auto& w : workers) w.join();

    res.labels.resize(section.rows(), section.cols());
    for (Eigen::Index r = 0; r < section.rows(); ++r)
        for (Eigen::Index c = 0; c < section.cols(); ++c)
            res.labels(r, c) =
                res.superpixel_class[static_cast<size_t>(res.superpixels.labels(r, c))];
    return res;
}

inline void write_labelmap_sgrd(const Mat<int>& labels, const std::string& path) {
    Image img(labels.rows(), labels.cols());
    for (Eigen::Index r = 0; r < labels.rows(); ++r)
        for (Eigen::Index c = 0; c < labels.cols(); ++c) img(r, c) = labels(r, c);
    write_raster(img, path, RasterFormat::sgrd);
}

inline Mat<int> read_labelmap_sgrd(const std::string& path) {
    const Image img = read_raster(path, RasterFormat::sgrd);
    Mat<int> out(img.rows(), img.cols());
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c)
            out(r, c) = static_cast<int>(std::lround(img(r, c)));
    return out;
}

inline nlohmann::json metrics_to_json(const MetricsReport& rep) {
    nlohmann::json j;
    j["pixel_accuracy"] = rep.pixel_accuracy;
    j["miu"] = rep.miu;
    j["fwiu"] = rep.fwiu;
    j["iou"] = nlohmann::json::array();
    for (size_t i = 0; i < rep.iou.size(); ++i) {
        if (rep.iou_valid[i])
            j["iou"].push_back(rep.iou[i]);
        else
            j["iou"].push_back(nullptr);
    }
    j["class_frequency"] = rep.class_frequency;
    return j;
}

/// Plain-text table with the results-table columns (PA, per-class IU, MIU,
/// FWIU) plus class frequencies.
inline std::string metrics_to_table(const MetricsReport& rep) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    os << "PA      ";
    for (size_t i = 0; i < rep.iou.size(); ++i) os << "IU" << i << "     ";
    os << "MIU     FWIU\n";
    os << rep.pixel_accuracy << "  ";
    for (size_t i = 0; i < rep.iou.size(); ++i) {
        if (rep.iou_valid[i])
            os << rep.iou[i] << "  ";
        else
            os << "n/a     ";
    }
    os << rep.miu << "  " << rep.fwiu << "\n";
    os << "freq    ";
    for (double f : rep.class_frequency) os << std::setprecision(4) << f << "  ";
    os << "\n";
    return os.str();
}

inline MetricsReport cmd_eval(const Mat<int>& pred, const Mat<int>& ref, int n_classes) {
    return aggregate_metrics(confusion_matrix(pred, ref, n_classes));
}

/// Arithmetic mean of reports, metric by metric (per-class IU means skip
/// not-applicable entries).
inline MetricsReport average_reports(const std::vector<MetricsReport>& reports) {
    if (reports.empty()) throw ArgumentError("average_reports: no reports");
    MetricsReport out = reports[0];
    const size_t nc = out.iou.size();
    std::vector<double> iou_sum(nc, 0.0), freq_sum(nc, 0.0);
    std::vector<long> iou_n(nc, 0);
    double pa = 0, miu = 0, fwiu = 0;
    for (const auto& r : reports) {
        if (r.iou.size() != nc) throw ArgumentError("average_reports: class count mismatch");
        pa += r.pixel_accuracy;
        miu += r.miu;
        fwiu += r.fwiu;
        for (size_t i = 0; i < nc; ++i) {
            if (r.iou_valid[i]) {
                iou_sum[i] += r.iou[i];
                iou_n[i] += 1;
            }
            freq_sum[i] += r.class_frequency[i];
        }
    }
    const double n = static_cast<double>(reports.size());
    out.pixel_accuracy = pa / n;
    out.miu = miu / n;
    out.fwiu = fwiu / n;
    for (size_t i = 0; i < nc; ++i) {
        out.iou_valid[i] = iou_n[i] > 0;
        out.iou[i] = iou_n[i] > 0 ? iou_sum[i] / static_cast<double>(iou_n[i]) : -1.0;
        out.class_frequency[i] = freq_sum[i] / n;
    }
    out.confusion.setZero();
    return out;
}

/// Dump every subband of one attribute decomposition as SGRD plus an index.
inline nlohmann::json cmd_decompose(const RunConfig& cfg, const Image& image,
                                    const std::string& outdir) {
    namespace fs = std::filesystem;
    fs::create_directories(outdir);
    nlohmann::json index;
    index["attribute"] = attribute_name(cfg.attr.attribute);
    index["bands"] = nlohmann::json::array();

    auto dump = [&](const Image& band, const std::string& name, int scale, int orientation) {
        const std::string file = name + ".sgrd";
        write_raster(band, (fs::path(outdir) / file).string(), RasterFormat::sgrd);
        index["bands"].push_back({{"file", file},
                                  {"scale", scale},
                                  {"orientation", orientation},
                                  {"rows", band.rows()},
                                  {"cols", band.cols()}});
    };

    switch (cfg.attr.attribute) {
        case Attribute::amplitude:
            dump(image, "amplitude", 0, -1);
            break;
        case Attribute::pyramid: {
            Pyramid p = gaussian_pyramid(image, cfg.attr.scales);
            for (size_t s = 0; s < p.levels.size(); ++s)
                dump(p.levels[s], "scale" + std::to_string(s), static_cast<int>(s), -1);
            break;
        }
        case Attribute::dwt: {
            DwtSubbands sb = dwt2_multi(image, cfg.attr.scales);
            for (int l = 0; l < sb.num_levels(); ++l) {
                const auto& lvl = sb.levels[static_cast<size_t>(l)];
                dump(lvl.lh, "level" + std::to_string(l + 1) + "_lh", l + 1, 0);
                dump(lvl.hl, "level" + std::to_string(l + 1) + "_hl", l + 1, 1);
                dump(lvl.hh, "level" + std::to_string(l + 1) + "_hh", l + 1, 2);
            }
            dump(sb.ll, "level" + std::to_string(sb.num_levels()) + "_ll", sb.num_levels(), -1);
            break;
        }
        case Attribute::gabor: {
            GaborBank bank = build_gabor_bank(cfg.attr.scales, cfg.attr.gabor_orientations);
            for (const auto& flt : bank.filters)
                dump(gabor_response(image, flt),
                     "scale" + std::to_string(flt.scale) + "_orient" +
                         std::to_string(flt.orientation),
                     flt.scale, flt.orientation);
            break;
        }
        case Attribute::curvelet: {
            CurveletPartition part =
                curvelet_partition(image.rows(), image.cols(), cfg.attr.scales);
            CurveletCoeffs cc = fdct2(image, part);
            for (size_t b = 0; b < cc.bands.size(); ++b) {
                const auto& wd = part.bands[b];
                dump(Image(cc.bands[b].cwiseAbs()),
                     "scale" + std::to_string(wd.scale) + "_wedge" + std::to_string(wd.wedge),
                     wd.scale, wd.wedge);
            }
            break;
        }
    }

    std::ofstream os(fs::path(outdir) / "index.json");
    if (!os) throw IoError("cannot write index.json in " + outdir);
    os << pipedetail::json_dump(index);
    return index;
}

/// Feature CSV: one row per patch, label id first (-1 when unlabeled).
inline void write_features_csv(const std::vector<FeatureVector>& fvs, const std::vector<int>& labels,
                               const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    os << std::setprecision(17);
    for (size_t i = 0; i < fvs.size(); ++i) {
        os << (i < labels.size() ? labels[i] : -1);
        const auto& v = fvs[i].values;
        for (Eigen::Index k = 0; k < v.size(); ++k) os << "," << v(k);
        os << "\n";
    }
}

}  // namespace texlab

#endif
