#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "specadapt/common.hpp"

namespace specadapt {

enum class Domain : uint8_t { source = 0, target = 1 };

/// N x D feature matrix with optional labels and per-sample domain tags.
/// Stored as f64 in memory; the on-disk format is f32.
struct FeatureSet {
    size_t num_samples = 0;
    size_t feature_dim = 0;
    std::vector<double> features;     // row-major N x D
    std::vector<int32_t> labels;      // empty when unlabeled
    std::vector<uint8_t> domain_tags; // 0 source, 1 target

    std::span<const double> row(size_t i) const {
        return {&features[i * feature_dim], feature_dim};
    }

    bool has_labels() const { return !labels.empty(); }

    void validate() const {
        require(features.size() == num_samples * feature_dim,
                "FeatureSet: feature buffer size mismatch");
        require(labels.empty() || labels.size() == num_samples,
                "FeatureSet: label count mismatch");
        require(domain_tags.empty() || domain_tags.size() == num_samples,
                "FeatureSet: domain tag count mismatch");
        require(all_finite(features), "FeatureSet: non-finite features");
    }

    void append_row(std::span<const double> f, int32_t label, uint8_t tag) {
        require(f.size() == feature_dim || num_samples == 0,
                "FeatureSet: appended row has wrong dimension");
        if (num_samples == 0 && feature_dim == 0) feature_dim = f.size();
        features.insert(features.end(), f.begin(), f.end());
        labels.push_back(label);
        domain_tags.push_back(tag);
        ++num_samples;
    }
};

}  // namespace specadapt
