#include "specadapt/calibration.hpp"

#include <cmath>

namespace specadapt {

namespace {

// 0-based bin index for a confidence value: ceil(c * n_bins) clamped to
// [1, n_bins], minus one.
size_t bin_index(double confidence, int n_bins) {
    int b = static_cast<int>(std::ceil(confidence * n_bins));
    if (b < 1) b = 1;
    if (b > n_bins) b = n_bins;
    return static_cast<size_t>(b - 1);
}

}  // namespace

std::vector<ReliabilityBin> reliability_bins(const PredictionLog& log, int n_bins) {
    log.validate();
    require(log.size() >= 1, "reliability_bins: empty log");
    require(n_bins >= 1, "reliability_bins: need at least one bin");

    std::vector<ReliabilityBin> bins(static_cast<size_t>(n_bins));
    for (int b = 0; b < n_bins; ++b) {
        bins[b].lower = static_cast<double>(b) / n_bins;
        bins[b].upper = static_cast<double>(b + 1) / n_bins;
    }
    std::vector<double> conf_sum(bins.size(), 0.0);
    std::vector<size_t> correct(bins.size(), 0);
    for (size_t i = 0; i < log.size(); ++i) {
        const size_t b = bin_index(log.confidences[i], n_bins);
        bins[b].count += 1;
        conf_sum[b] += log.confidences[i];
        if (log.predicted[i] == log.actual[i]) correct[b] += 1;
    }
    for (size_t b = 0; b < bins.size(); ++b) {
        if (bins[b].count == 0) continue;
        bins[b].mean_confidence = conf_sum[b] / static_cast<double>(bins[b].count);
        bins[b].accuracy =
            static_cast<double>(correct[b]) / static_cast<double>(bins[b].count);
    }
    return bins;
}

double ece(const PredictionLog& log, int n_bins) {
    const auto bins = reliability_bins(log, n_bins);
    const double n = static_cast<double>(log.size());
    double total = 0.0;
    for (const auto& bin : bins) {
        if (bin.count == 0) continue;
        total += (static_cast<double>(bin.count) / n) *
                 std::abs(bin.accuracy - bin.mean_confidence);
    }
    return total;
}

ClassAccuracy per_class_accuracy(const PredictionLog& log, int num_classes) {
    log.validate();
    require(num_classes >= 1, "per_class_accuracy: need at least one class");
    for (int a : log.actual)
        require(a >= 0 && a < num_classes, "per_class_accuracy: class out of range");

    std::vector<size_t> total(static_cast<size_t>(num_classes), 0);
    std::vector<size_t> correct(static_cast<size_t>(num_classes), 0);
    for (size_t i = 0; i < log.size(); ++i) {
        total[log.actual[i]] += 1;
        if (log.predicted[i] == log.actual[i]) correct[log.actual[i]] += 1;
    }

    ClassAccuracy result;
    result.per_class.resize(static_cast<size_t>(num_classes));
    double sum = 0.0;
    int defined = 0;
    for (int k = 0; k < num_classes; ++k) {
        if (total[k] == 0) continue;
        const double acc =
            100.0 * static_cast<double>(correct[k]) / static_cast<double>(total[k]);
        result.per_class[k] = acc;
        sum += acc;
        ++defined;
    }
    result.macro_average = defined > 0 ? sum / defined : 0.0;
    return result;
}

}  // namespace specadapt
