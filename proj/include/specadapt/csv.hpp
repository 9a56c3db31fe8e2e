#pragma once

#include <string>
#include <vector>

#include "specadapt/calibration.hpp"

namespace specadapt {

/// Formats a double so that parsing it back reproduces the exact value.
std::string csv_double(double v);

/// Reads a (confidence, predicted, actual) CSV; a leading header line is
/// skipped when its first field is not numeric.
PredictionLog read_prediction_log_csv(const std::string& path);
void write_prediction_log_csv(const PredictionLog& log, const std::string& path);

/// Per-bin reliability table plus a trailing summary row carrying the ECE.
void write_reliability_csv(const std::vector<ReliabilityBin>& bins, double ece_value,
                           const std::string& path);
struct ReliabilityCsv {
    std::vector<ReliabilityBin> bins;
    double ece = 0.0;
};
ReliabilityCsv read_reliability_csv(const std::string& path);

}  // namespace specadapt
