#include "specadapt/config_json.hpp"

#include <fstream>

#include <json.hpp>

namespace specadapt {

namespace {

using nlohmann::json;

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void parse_config(const json& j, ExperimentConfig& config) {
    read_field(j, "rounds", config.rounds);
    read_field(j, "per_round_fraction", config.per_round_fraction);
    read_field(j, "selection_epochs", config.selection_epochs);
    read_field(j, "total_epochs", config.total_epochs);
    read_field(j, "batch_size", config.batch_size);
    read_field(j, "lambda", config.lambda);
    read_field(j, "beta", config.beta);
    read_field(j, "margin", config.margin);
    read_field(j, "use_fda", config.use_fda);
    read_field(j, "seed", config.seed);
    read_field(j, "learning_rate", config.learning_rate);
    read_field(j, "rho", config.rho);
    read_field(j, "epsilon", config.epsilon);
    if (j.contains("strategy"))
        config.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    if (j.contains("optimizer")) {
        const auto name = j.at("optimizer").get<std::string>();
        if (name == "adadelta")
            config.optimizer = OptimizerKind::adadelta;
        else if (name == "sgd")
            config.optimizer = OptimizerKind::sgd;
        else
            throw IoError(IoError::Code::bad_value,
                          "config: unknown optimizer '" + name + "'");
    }
}

LowFreqMode parse_mode(const json& j) {
    LowFreqMode m;
    read_field(j, "freq_y", m.freq_y);
    read_field(j, "freq_x", m.freq_x);
    read_field(j, "amplitude", m.amplitude);
    read_field(j, "jitter", m.jitter);
    return m;
}

void parse_style(const json& j, DomainStyle& style) {
    read_field(j, "base_level", style.base_level);
    read_field(j, "base_jitter", style.base_jitter);
    if (j.contains("modes")) {
        style.modes.clear();
        for (const auto& m : j.at("modes")) style.modes.push_back(parse_mode(m));
    }
}

void parse_bench(const json& j, SimulationSpec& spec) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "gaussian") {
        spec.bench_kind = BenchKind::gaussian;
        auto& g = spec.gaussian;
        read_field(j, "num_classes", g.num_classes);
        read_field(j, "feature_dim", g.feature_dim);
        read_field(j, "samples_per_class", g.samples_per_class);
        read_field(j, "class_mean_radius", g.class_mean_radius);
        read_field(j, "noise_sigma", g.noise_sigma);
        read_field(j, "rotation_angle", g.rotation_angle);
        read_field(j, "translation", g.translation);
        read_field(j, "seed", g.seed);
    } else if (kind == "texture") {
        spec.bench_kind = BenchKind::texture;
        auto& t = spec.texture;
        read_field(j, "num_classes", t.num_classes);
        read_field(j, "image_size", t.image_size);
        read_field(j, "samples_per_class", t.samples_per_class);
        read_field(j, "noise_sigma", t.noise_sigma);
        read_field(j, "style_band_beta", t.style_band_beta);
        read_field(j, "seed", t.seed);
        if (j.contains("class_patterns")) {
            for (const auto& p : j.at("class_patterns")) {
                ClassPattern cp;
                read_field(p, "freq_y", cp.freq_y);
                read_field(p, "freq_x", cp.freq_x);
                read_field(p, "amplitude", cp.amplitude);
                read_field(p, "phase_jitter", cp.phase_jitter);
                t.class_patterns.push_back(cp);
            }
        }
        if (j.contains("source_style")) parse_style(j.at("source_style"), t.source_style);
        if (j.contains("target_style")) parse_style(j.at("target_style"), t.target_style);
    } else {
        throw IoError(IoError::Code::bad_value,
                      "config: unknown bench kind '" + kind + "'");
    }
}

}  // namespace

SimulationSpec load_simulation_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError(IoError::Code::open_failed, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw IoError(IoError::Code::bad_header,
                      path + ": invalid JSON: " + e.what());
    }

    SimulationSpec spec;
    try {
        parse_config(j, spec.config);
        if (j.contains("bench")) parse_bench(j.at("bench"), spec);
        if (j.contains("featurizer")) {
            const auto& f = j.at("featurizer");
            read_field(f, "kind", spec.featurizer.kind);
            read_field(f, "output_dim", spec.featurizer.output_dim);
            read_field(f, "seed", spec.featurizer.seed);
        }
    } catch (const json::exception& e) {
        throw IoError(IoError::Code::bad_value,
                      path + ": bad config value: " + e.what());
    }
    return spec;
}

Featurizer make_featurizer(const FeaturizerSpec& spec, int input_dim) {
    if (spec.kind == "identity-flatten") return Featurizer::identity(input_dim);
    if (spec.kind == "external-features") return Featurizer::external(input_dim);
    if (spec.kind == "fixed-random-projection") {
        require(spec.output_dim >= 1,
                "featurizer: fixed-random-projection needs output_dim");
        return Featurizer::random_projection(input_dim, spec.output_dim, spec.seed);
    }
    throw IoError(IoError::Code::bad_value,
                  "featurizer: unknown kind '" + spec.kind + "'");
}

}  // namespace specadapt
