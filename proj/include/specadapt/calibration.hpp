#pragma once

#include <optional>
#include <vector>

#include "specadapt/common.hpp"

namespace specadapt {

/// Per-sample record of a model's confidence, predicted class, and the
/// ground-truth class.
struct PredictionLog {
    std::vector<double> confidences;  // in (0,1]
    std::vector<int> predicted;
    std::vector<int> actual;

    size_t size() const { return confidences.size(); }

    void validate() const {
        require(predicted.size() == confidences.size() &&
                    actual.size() == confidences.size(),
                "PredictionLog: column lengths differ");
        for (double c : confidences)
            require(c > 0.0 && c <= 1.0, "PredictionLog: confidence outside (0,1]");
    }
};

/// One equal-width confidence bin over (lower, upper].
struct ReliabilityBin {
    double lower = 0.0;
    double upper = 0.0;
    size_t count = 0;
    double mean_confidence = 0.0;  // 0 when the bin is empty
    double accuracy = 0.0;         // 0 when the bin is empty
};

/// Expected calibration error over n_bins equal-width bins of (0,1].
/// A sample with confidence c lands in bin ceil(c * n_bins), clamped to
/// [1, n_bins]; empty bins contribute nothing.
double ece(const PredictionLog& log, int n_bins = 10);

/// The per-bin breakdown behind ece(); aggregating the returned bins with
/// sum (count/N) * |accuracy - mean_confidence| reproduces ece() exactly.
std::vector<ReliabilityBin> reliability_bins(const PredictionLog& log, int n_bins);

struct ClassAccuracy {
    /// Percent accuracy per class; nullopt when no sample of that class
    /// appears in the log.
    std::vector<std::optional<double>> per_class;
    /// Unweighted mean over the defined classes, percent.
    double macro_average = 0.0;
};

ClassAccuracy per_class_accuracy(const PredictionLog& log, int num_classes);

}  // namespace specadapt
