#pragma once

#include <optional>
#include <string>

#include "specadapt/active_loop.hpp"
#include "specadapt/synthetic.hpp"

namespace specadapt {

enum class BenchKind { gaussian, texture };

struct FeaturizerSpec {
    std::string kind = "identity-flatten";
    int output_dim = 0;  // for fixed-random-projection
    uint64_t seed = 0;
};

/// Everything a `simulate` or `train` invocation needs: protocol config plus
/// the benchmark description and featurizer choice.
struct SimulationSpec {
    ExperimentConfig config;
    std::optional<BenchKind> bench_kind;
    GaussianBenchSpec gaussian;
    TextureBenchSpec texture;
    FeaturizerSpec featurizer;
};

/// Parses the JSON document at `path`. All ExperimentConfig fields are
/// optional and mirror the struct names; the benchmark lives under "bench"
/// with a "kind" discriminator.
SimulationSpec load_simulation_spec(const std::string& path);

/// Builds the featurizer for an image benchmark of the given input size.
Featurizer make_featurizer(const FeaturizerSpec& spec, int input_dim);

}  // namespace specadapt
