// Command-line front end: spectral transfer between images, synthetic
// benchmark generation, head training, one-shot selection, full simulated
// experiments, and calibration reports.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "specadapt/active_loop.hpp"
#include "specadapt/config_json.hpp"
#include "specadapt/csv.hpp"
#include "specadapt/feature_file.hpp"
#include "specadapt/netpbm.hpp"
#include "specadapt/spectral.hpp"
#include "specadapt/synthetic.hpp"

namespace fs = std::filesystem;
using namespace specadapt;

namespace {

struct BenchData {
    bool image_mode = false;
    GaussianBench gaussian;
    TextureBench texture;
};

BenchData build_bench(const SimulationSpec& spec) {
    if (!spec.bench_kind)
        throw std::invalid_argument("config has no \"bench\" section");
    BenchData data;
    if (*spec.bench_kind == BenchKind::gaussian) {
        data.gaussian = make_gaussian_bench(spec.gaussian);
    } else {
        data.image_mode = true;
        data.texture = make_texture_bench(spec.texture);
    }
    return data;
}

MetricsHistory run_from_spec(const SimulationSpec& spec, const BenchData& bench,
                             Featurizer& featurizer_storage) {
    if (!bench.image_mode) {
        FeatureExperimentData data;
        data.source = &bench.gaussian.source;
        data.target_pool = &bench.gaussian.target_pool;
        data.target_test = &bench.gaussian.target_test;
        return run_experiment(spec.config, data);
    }
    const auto& first = bench.texture.source.images.at(0);
    featurizer_storage = make_featurizer(
        spec.featurizer, first.height * first.width * first.channels);
    ImageExperimentData data;
    data.source = &bench.texture.source;
    data.target_pool = &bench.texture.target_pool;
    data.target_test = &bench.texture.target_test;
    data.featurizer = &featurizer_storage;
    return run_experiment(spec.config, data);
}

int cmd_fda_transform(const std::string& source_path, const std::string& target_path,
                      double beta, const std::string& out_path) {
    const Image source = read_netpbm(source_path);
    const Image target = read_netpbm(target_path);
    const Image result = fda_transfer(source, target, beta);
    write_netpbm(result, out_path);  // writer clamps to [0,1]
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    const SimulationSpec spec = load_simulation_spec(config_path);
    const BenchData bench = build_bench(spec);
    Featurizer featurizer = Featurizer::identity(1);
    const MetricsHistory history = run_from_spec(spec, bench, featurizer);
    write_metrics(history, out_dir);
    std::cout << "macro_accuracy " << history.test_accuracy.macro_average << "\n"
              << "ece " << history.test_ece << "\n"
              << "labeled "
              << (history.labeled_count.empty() ? 0 : history.labeled_count.back())
              << "\n";
    return 0;
}

// Trains on the labeled source set (spectrally transferred when use_fda)
// without any selection rounds, then saves the head.
int cmd_train(const std::string& config_path, const std::string& out_path) {
    SimulationSpec spec = load_simulation_spec(config_path);
    const BenchData bench = build_bench(spec);

    FeatureSet train_set;
    if (!bench.image_mode) {
        train_set = bench.gaussian.source;
    } else {
        const auto& first = bench.texture.source.images.at(0);
        Featurizer f = make_featurizer(spec.featurizer,
                                       first.height * first.width * first.channels);
        if (spec.config.use_fda) {
            SeededRng pairing = seeded_stream(spec.config.seed, "pairing");
            const auto transformed =
                apply_fda_to_source(bench.texture.source.images,
                                    bench.texture.target_pool.images,
                                    spec.config.beta, pairing);
            ImageSet transformed_set{transformed, bench.texture.source.labels};
            train_set = featurize_images(transformed_set, f, Domain::source);
        } else {
            train_set = featurize_images(bench.texture.source, f, Domain::source);
        }
    }
    int num_classes = 0;
    for (int32_t y : train_set.labels) num_classes = std::max(num_classes, y + 1);
    const LinearHead init(num_classes, static_cast<int>(train_set.feature_dim));
    const TrainResult result =
        train_head(init, train_set, spec.config.train_options());
    write_head_file(result.head, out_path);
    std::cout << "final_loss " << result.epoch_loss.back() << "\n"
              << "wrote " << out_path << "\n";
    return 0;
}

int cmd_select(const std::string& head_path, const std::string& features_path,
               size_t k, const std::string& strategy_name, double lambda,
               double margin, uint64_t seed) {
    const LinearHead head = read_head_file(head_path);
    const FeatureSet features = read_feature_file(features_path);
    std::vector<size_t> candidates(features.num_samples);
    for (size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
    SeededRng rng = seeded_stream(seed, "selection");
    const MarginParams params{margin, lambda};
    const auto picked = select_batch(head, features, candidates, k,
                                     strategy_from_string(strategy_name), params, rng);
    for (size_t idx : picked) std::cout << idx << "\n";
    return 0;
}

int cmd_gen_bench(const std::string& kind, const std::string& spec_path,
                  const std::string& out_dir) {
    std::ifstream probe(spec_path);
    if (!probe)
        throw IoError(IoError::Code::open_failed, "cannot open " + spec_path);
    probe.close();
    SimulationSpec spec = load_simulation_spec(spec_path);
    if (!spec.bench_kind) {
        // allow a bare bench object as the whole document
        throw std::invalid_argument(
            "spec file has no \"bench\" section; wrap the parameters in "
            "{\"bench\": {\"kind\": ..., ...}}");
    }
    const auto declared =
        *spec.bench_kind == BenchKind::gaussian ? "gaussian" : "texture";
    require(kind == declared, "gen-bench: --kind does not match the spec file");

    fs::create_directories(out_dir);
    if (*spec.bench_kind == BenchKind::gaussian) {
        const GaussianBench bench = make_gaussian_bench(spec.gaussian);
        write_feature_file(bench.source, (fs::path(out_dir) / "source.feat").string());
        write_feature_file(bench.target_pool,
                           (fs::path(out_dir) / "target_pool.feat").string());
        write_feature_file(bench.target_test,
                           (fs::path(out_dir) / "target_test.feat").string());
        std::cout << "wrote 3 feature files to " << out_dir << "\n";
        return 0;
    }

    const TextureBench bench = make_texture_bench(spec.texture);
    std::ofstream labels(fs::path(out_dir) / "labels.csv");
    labels << "file,label,domain,split\n";
    auto dump = [&](const ImageSet& set, const std::string& split,
                    const std::string& domain) {
        fs::create_directories(fs::path(out_dir) / split);
        for (size_t i = 0; i < set.images.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "%05zu.pgm", i);
            const auto rel = split + "/" + name;
            write_netpbm(set.images[i], (fs::path(out_dir) / rel).string());
            labels << rel << "," << set.labels[i] << "," << domain << "," << split
                   << "\n";
        }
    };
    dump(bench.source, "source", "source");
    dump(bench.target_pool, "target_pool", "target");
    dump(bench.target_test, "target_test", "target");
    std::cout << "wrote images and labels.csv to " << out_dir << "\n";
    return 0;
}

int cmd_calibrate(const std::string& log_path, int bins, const std::string& out_path) {
    const PredictionLog log = read_prediction_log_csv(log_path);
    const auto table = reliability_bins(log, bins);
    const double e = ece(log, bins);
    write_reliability_csv(table, e, out_path);
    std::cout << "ece " << e << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral-transfer active adaptation toolkit"};
    app.require_subcommand(1);

    std::string source_path, target_path, out_path, config_path, out_dir;
    std::string head_path, features_path, strategy = "sdm", kind, spec_path, log_path;
    double beta = 0.033, lambda = 0.001, margin = 1.0;
    size_t k = 0;
    uint64_t seed = 0;
    int bins = 10;

    auto* fda = app.add_subcommand("fda-transform",
                                   "swap low-frequency amplitudes of two images");
    fda->add_option("--source", source_path)->required();
    fda->add_option("--target", target_path)->required();
    fda->add_option("--beta", beta)->required();
    fda->add_option("--out", out_path)->required();

    auto* simulate = app.add_subcommand("simulate", "run a full experiment");
    simulate->add_option("--config", config_path)->required();
    simulate->add_option("--out-dir", out_dir)->required();

    auto* train = app.add_subcommand("train", "train a head and save it");
    train->add_option("--config", config_path)->required();
    train->add_option("--out", out_path)->required();

    auto* select = app.add_subcommand("select", "one-shot batch selection");
    select->add_option("--head", head_path)->required();
    select->add_option("--features", features_path)->required();
    select->add_option("--k", k)->required();
    select->add_option("--strategy", strategy);
    select->add_option("--lambda", lambda);
    select->add_option("--margin", margin);
    select->add_option("--seed", seed);

    auto* gen = app.add_subcommand("gen-bench", "generate a synthetic benchmark");
    gen->add_option("--kind", kind)->required()->check(CLI::IsMember({"gaussian", "texture"}));
    gen->add_option("--spec", spec_path)->required();
    gen->add_option("--out-dir", out_dir)->required();

    auto* calibrate = app.add_subcommand("calibrate", "reliability bins and ECE");
    calibrate->add_option("--log", log_path)->required();
    calibrate->add_option("--bins", bins);
    calibrate->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(fda))
            return cmd_fda_transform(source_path, target_path, beta, out_path);
        if (app.got_subcommand(simulate)) return cmd_simulate(config_path, out_dir);
        if (app.got_subcommand(train)) return cmd_train(config_path, out_path);
        if (app.got_subcommand(select))
            return cmd_select(head_path, features_path, k, strategy, lambda, margin,
                              seed);
        if (app.got_subcommand(gen)) return cmd_gen_bench(kind, spec_path, out_dir);
        if (app.got_subcommand(calibrate))
            return cmd_calibrate(log_path, bins, out_path);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
