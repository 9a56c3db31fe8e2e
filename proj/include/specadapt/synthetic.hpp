#pragma once

#include <cstdint>
#include <vector>

#include "specadapt/dataset.hpp"
#include "specadapt/image.hpp"

namespace specadapt {

/// Two-domain Gaussian-cluster benchmark: class means sit on a circle in the
/// first two feature dimensions; the target domain applies a translation
/// followed by a rotation to the means.
struct GaussianBenchSpec {
    int num_classes = 3;
    int feature_dim = 2;
    int samples_per_class = 200;  // per domain
    double class_mean_radius = 3.0;
    double noise_sigma = 1.0;
    double rotation_angle = 0.0;      // radians, acts on dims 0 and 1
    std::vector<double> translation;  // length feature_dim; empty = zeros
    uint64_t seed = 0;

    void validate() const {
        require(num_classes >= 2, "GaussianBenchSpec: need at least two classes");
        require(feature_dim >= 2, "GaussianBenchSpec: feature_dim must be >= 2");
        require(samples_per_class >= 1, "GaussianBenchSpec: empty classes");
        require(noise_sigma > 0.0, "GaussianBenchSpec: noise_sigma must be positive");
        require(translation.empty() ||
                    translation.size() == static_cast<size_t>(feature_dim),
                "GaussianBenchSpec: translation length mismatch");
    }
};

struct GaussianBench {
    FeatureSet source;       // labeled, domain tag 0
    FeatureSet target_pool;  // ground-truth labels carried for the oracle
    FeatureSet target_test;  // labeled held-out split
};

/// Deterministic per (spec, seed); the target set is split 80/20 into
/// pool/test stratified by class.
GaussianBench make_gaussian_bench(const GaussianBenchSpec& spec);

/// One low-frequency cosine mode of a domain's style field. `jitter` is the
/// half-width of the per-sample relative amplitude perturbation.
struct LowFreqMode {
    int freq_y = 0;
    int freq_x = 0;
    double amplitude = 0.0;
    double jitter = 0.0;
};

/// Per-domain illumination profile: a base brightness plus a handful of
/// low-frequency modes. Domains share mode phases, so the domain gap lives
/// entirely in the amplitude spectrum.
struct DomainStyle {
    double base_level = 0.5;
    double base_jitter = 0.0;
    std::vector<LowFreqMode> modes;
};

/// Class-identifying stripe pattern at a high-frequency bin.
struct ClassPattern {
    int freq_y = 0;
    int freq_x = 0;
    double amplitude = 0.1;
    double phase_jitter = 0.3;  // radians, uniform per sample
};

/// Styled-texture image benchmark. Class identity is carried by
/// high-frequency stripes, domain identity by the low-frequency amplitude
/// profile; the two bands are disjoint by construction, with
/// `style_band_beta` the mask half-width ratio that separates them.
struct TextureBenchSpec {
    int num_classes = 3;
    int image_size = 32;         // power of two
    int samples_per_class = 300;  // per domain
    double noise_sigma = 0.02;
    double style_band_beta = 0.1;
    std::vector<ClassPattern> class_patterns;  // defaulted per class when empty
    DomainStyle source_style;                  // defaulted when modes empty
    DomainStyle target_style;
    uint64_t seed = 0;

    /// Copy with all empty fields replaced by the stock desk-scale setup.
    TextureBenchSpec resolved() const;
    void validate() const;
};

struct TextureBench {
    ImageSet source;
    ImageSet target_pool;
    ImageSet target_test;
};

TextureBench make_texture_bench(const TextureBenchSpec& spec);

/// Featurizes every image in the set (labels copied through).
FeatureSet featurize_images(const ImageSet& set, const class Featurizer& featurizer,
                            Domain domain);

}  // namespace specadapt
