#ifndef TEXLAB_METRICS_HPP
#define TEXLAB_METRICS_HPP

#include <vector>

#include "texlab/types.hpp"

namespace texlab {

struct MetricsReport {
    Mat<long> confusion;            // (ref class, predicted class) counts
    double pixel_accuracy{};
    std::vector<double> iou;        // per class; -1 marks not-applicable
    std::vector<bool> iou_valid;
    double miu{};
    double fwiu{};
    std::vector<double> class_frequency;  // reference class share of all pixels
};

/// Entry (i, j) counts pixels with reference class i and predicted class j.
inline Mat<long> confusion_matrix(const Mat<int>& pred, const Mat<int>& ref, int n_classes) {
    if (pred.rows() != ref.rows() || pred.cols() != ref.cols())
        throw ArgumentError("confusion_matrix: shape mismatch");
    Mat<long> cm = Mat<long>::Zero(n_classes, n_classes);
    for (Eigen::Index r = 0; r < pred.rows(); ++r)
        for (Eigen::Index c = 0; c < pred.cols(); ++c) {
            const int g = ref(r, c), f = pred(r, c);
            if (g < 0 || g >= n_classes || f < 0 || f >= n_classes)
                throw ArgumentError("confusion_matrix: class id out of range");
            cm(g, f) += 1;
        }
    return cm;
}

inline double pixel_accuracy(const Mat<long>& cm) {
    const long total = cm.sum();
    if (total == 0) throw ArgumentError("pixel_accuracy: empty confusion matrix");
    return static_cast<double>(cm.diagonal().sum()) / static_cast<double>(total);
}

/// IU_i = |F_i n G_i| / |F_i u G_i|; classes absent from both maps get -1.
inline std::vector<double> intersection_over_union(const Mat<long>& cm) {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < cm.rows(); ++i) {
        const long inter = cm(i, i);
        const long uni = cm.row(i).sum() + cm.col(i).sum() - inter;
        out.push_back(uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : -1.0);
    }
    return out;
}

/// MIU averages the applicable IU values; FWIU weights them by reference
/// class size.
inline MetricsReport aggregate_metrics(const Mat<long>& cm) {
    MetricsReport rep;
    rep.confusion = cm;
    rep.pixel_accuracy = pixel_accuracy(cm);
    rep.iou = intersection_over_union(cm);
    const long total = cm.sum();

    double miu_sum = 0.0;
    long miu_n = 0;
    double fw_sum = 0.0;
    long fw_weight = 0;
    for (Eigen::Index i = 0; i < cm.rows(); ++i) {
        const long gsize = cm.row(i).sum();
        rep.class_frequency.push_back(static_cast<double>(gsize) / static_cast<double>(total));
        const bool valid = rep.iou[static_cast<size_t>(i)] >= 0.0;
        rep.iou_valid.push_back(valid);
        if (valid) {
            miu_sum += rep.iou[static_cast<size_t>(i)];
            miu_n += 1;
            fw_sum += static_cast<double>(gsize) * rep.iou[static_cast<size_t>(i)];
            fw_weight += gsize;
        }
    }
    rep.miu = miu_n > 0 ? miu_sum / static_cast<double>(miu_n) : 0.0;
    rep.fwiu = fw_weight > 0 ? fw_sum / static_cast<double>(fw_weight) : 0.0;
    return rep;
}

/// MIU of an explicit IU list (e.g. one per-class row of a results table).
inline double mean_iou(const std::vector<double>& iou) {
    double s = 0.0;
    long n = 0;
    for (double v : iou)
        if (v >= 0.0) {
            s += v;
            ++n;
        }
    if (n == 0) throw ArgumentError("mean_iou: no applicable classes");
    return s / static_cast<double>(n);
}

}  // namespace texlab

#endif
