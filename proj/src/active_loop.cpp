#include "specadapt/active_loop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "specadapt/spectral.hpp"
#include "specadapt/synthetic.hpp"

namespace specadapt {

Strategy strategy_from_string(const std::string& name) {
    if (name == "sdm") return Strategy::sdm;
    if (name == "random") return Strategy::random;
    if (name == "entropy") return Strategy::entropy;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string strategy_name(Strategy strategy) {
    switch (strategy) {
        case Strategy::sdm: return "sdm";
        case Strategy::random: return "random";
        default: return "entropy";
    }
}

void ExperimentConfig::validate() const {
    require(rounds >= 0, "config: rounds must be non-negative");
    require(static_cast<int>(selection_epochs.size()) == rounds,
            "config: selection_epochs length must equal rounds");
    require(total_epochs >= 1, "config: total_epochs must be positive");
    for (size_t i = 0; i < selection_epochs.size(); ++i) {
        require(selection_epochs[i] >= 1 && selection_epochs[i] < total_epochs,
                "config: selection epochs must lie in [1, total_epochs)");
        require(i == 0 || selection_epochs[i] > selection_epochs[i - 1],
                "config: selection epochs must be strictly increasing");
    }
    require(per_round_fraction >= 0.0 && per_round_fraction <= 1.0,
            "config: per_round_fraction outside [0,1]");
    require(batch_size >= 1, "config: batch_size must be positive");
    require(lambda >= 0.0, "config: lambda must be non-negative");
    require(beta > 0.0 && beta < 1.0, "config: beta outside (0,1)");
    require(margin > 0.0, "config: margin must be positive");
    require(learning_rate >= 0.0, "config: negative learning rate");
    require(rho >= 0.0 && rho < 1.0, "config: rho outside [0,1)");
    require(epsilon > 0.0, "config: epsilon must be positive");
}

TrainOptions ExperimentConfig::train_options() const {
    TrainOptions options;
    options.optimizer = optimizer;
    options.learning_rate = learning_rate;
    options.rho = rho;
    options.epsilon = epsilon;
    options.batch_size = batch_size;
    options.margin = margin;
    options.epochs = total_epochs;
    options.seed = seed;
    return options;
}

Pool::Pool(std::vector<int32_t> ground_truth, size_t budget)
    : ground_truth_(std::move(ground_truth)),
      labeled_(ground_truth_.size(), 0), budget_(budget) {
    require(budget_ <= ground_truth_.size(), "Pool: budget exceeds pool size");
}

std::vector<size_t> Pool::unlabeled_indices() const {
    std::vector<size_t> out;
    out.reserve(size() - labeled_count());
    for (size_t i = 0; i < labeled_.size(); ++i)
        if (!labeled_[i]) out.push_back(i);
    return out;
}

std::vector<int32_t> Pool::annotate(std::span<const size_t> indices) {
    require(labeled_count() + indices.size() <= budget_,
            "Pool: annotation would exceed the budget");
    for (size_t idx : indices) {
        require(idx < size(), "Pool: index out of range");
        require(!labeled_[idx], "Pool: sample already labeled");
        labeled_[idx] = 1;  // marks eagerly so duplicate indices in one batch fail
    }
    std::vector<int32_t> revealed;
    revealed.reserve(indices.size());
    for (size_t idx : indices) {
        labeled_order_.push_back(idx);
        revealed.push_back(ground_truth_[idx]);
    }
    round_records_.emplace_back(indices.begin(), indices.end());
    return revealed;
}

std::vector<size_t> select_batch(const LinearHead& head, const FeatureSet& pool_features,
                                 std::span<const size_t> candidates, size_t k,
                                 Strategy strategy, const MarginParams& params,
                                 SeededRng& selection_rng) {
    require(k <= candidates.size(), "select_batch: k larger than candidate pool");
    if (k == 0) return {};

    if (strategy == Strategy::random)
        return selection_rng.sample_without_replacement(candidates, k);

    std::vector<std::pair<double, size_t>> scored;
    scored.reserve(candidates.size());
    for (size_t idx : candidates) {
        const auto f = pool_features.row(idx);
        double score;
        if (strategy == Strategy::sdm) {
            score = query_score(head, f, params, idx).q_value;
        } else {
            const auto p = softmax_probs(logits(head, f));
            double entropy = 0.0;
            for (double v : p) entropy -= v * std::log(v);
            score = entropy;
        }
        scored.emplace_back(score, idx);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<size_t> picked(k);
    for (size_t i = 0; i < k; ++i) picked[i] = scored[i].second;
    return picked;
}

std::vector<Image> apply_fda_to_source(const std::vector<Image>& source,
                                       const std::vector<Image>& target, double beta,
                                       SeededRng& pairing_rng) {
    require(!target.empty(), "apply_fda_to_source: empty target set");
    std::vector<Image> out;
    out.reserve(source.size());
    for (const auto& img : source) {
        const size_t j = static_cast<size_t>(pairing_rng.bounded(target.size()));
        out.push_back(fda_transfer(img, target[j], beta));
    }
    return out;
}

namespace {

int infer_num_classes(std::initializer_list<const FeatureSet*> sets) {
    int32_t max_label = -1;
    for (const auto* s : sets)
        for (int32_t y : s->labels) max_label = std::max(max_label, y);
    require(max_label >= 1, "run_experiment: need at least two classes");
    return static_cast<int>(max_label) + 1;
}

PredictionLog evaluate_head(const LinearHead& head, const FeatureSet& test) {
    PredictionLog log;
    log.confidences.reserve(test.num_samples);
    for (size_t i = 0; i < test.num_samples; ++i) {
        const auto pred = predict_features(head, test.row(i));
        log.confidences.push_back(pred.confidence);
        log.predicted.push_back(pred.class_index);
        log.actual.push_back(static_cast<int>(test.labels[i]));
    }
    return log;
}

// Shared protocol loop. `source_for_epoch(e)` supplies the (possibly
// spectrally transferred) labeled source features for epoch e; annotated
// target samples are appended to it each epoch.
template <typename SourceFn>
MetricsHistory run_core(const ExperimentConfig& config, SourceFn&& source_for_epoch,
                        const FeatureSet& pool_features, const FeatureSet& test_features,
                        int num_classes) {
    const size_t n_t = pool_features.num_samples;
    require(n_t > 0, "run_experiment: empty target pool");
    require(pool_features.has_labels(),
            "run_experiment: pool needs ground-truth labels for the oracle");
    const size_t per_round = static_cast<size_t>(
        std::ceil(config.per_round_fraction * static_cast<double>(n_t)));
    const size_t budget = per_round * static_cast<size_t>(config.rounds);
    require(budget <= n_t, "run_experiment: budget exceeds target pool");

    Pool pool(pool_features.labels, budget);
    Trainer trainer(LinearHead(num_classes, static_cast<int>(pool_features.feature_dim)),
                    config.train_options());
    SeededRng selection_rng = seeded_stream(config.seed, "selection");
    const MarginParams params{config.margin, config.lambda};

    MetricsHistory history;
    history.budget = budget;

    int next_selection = 0;
    for (int epoch = 1; epoch <= config.total_epochs; ++epoch) {
        if (next_selection < config.rounds && per_round > 0 &&
            epoch == config.selection_epochs[next_selection]) {
            const auto candidates = pool.unlabeled_indices();
            const auto picked =
                select_batch(trainer.head(), pool_features, candidates, per_round,
                             config.strategy, params, selection_rng);
            pool.annotate(picked);
            history.selections.push_back({next_selection + 1, epoch, picked});
            ++next_selection;
        }

        FeatureSet train_set = source_for_epoch(epoch);
        for (size_t idx : pool.labeled_order())
            train_set.append_row(pool_features.row(idx), pool.label(idx), 1);

        history.epoch_loss.push_back(trainer.run_epoch(train_set));
        history.labeled_count.push_back(pool.labeled_count());
    }

    history.test_log = evaluate_head(trainer.head(), test_features);
    history.test_accuracy = per_class_accuracy(history.test_log, num_classes);
    history.test_ece = ece(history.test_log, 10);
    return history;
}

}  // namespace

MetricsHistory run_experiment(const ExperimentConfig& config,
                              const FeatureExperimentData& data) {
    config.validate();
    require(data.source && data.target_pool && data.target_test,
            "run_experiment: missing datasets");
    require(!config.use_fda,
            "run_experiment: use_fda requires image data, not features");
    data.source->validate();
    data.target_pool->validate();
    data.target_test->validate();
    require(data.source->has_labels() && data.target_test->has_labels(),
            "run_experiment: source and test sets must be labeled");
    const int num_classes =
        infer_num_classes({data.source, data.target_pool, data.target_test});

    return run_core(
        config, [&](int /*epoch*/) { return *data.source; }, *data.target_pool,
        *data.target_test, num_classes);
}

MetricsHistory run_experiment(const ExperimentConfig& config,
                              const ImageExperimentData& data) {
    config.validate();
    require(data.source && data.target_pool && data.target_test && data.featurizer,
            "run_experiment: missing datasets or featurizer");
    require(!data.source->images.empty() && !data.target_pool->images.empty(),
            "run_experiment: empty image sets");

    const Featurizer& featurizer = *data.featurizer;
    const FeatureSet pool_features =
        featurize_images(*data.target_pool, featurizer, Domain::target);
    const FeatureSet test_features =
        featurize_images(*data.target_test, featurizer, Domain::target);
    const FeatureSet source_plain =
        featurize_images(*data.source, featurizer, Domain::source);
    const int num_classes =
        infer_num_classes({&source_plain, &pool_features, &test_features});

    SeededRng pairing_rng = seeded_stream(config.seed, "pairing");
    auto source_for_epoch = [&](int /*epoch*/) {
        if (!config.use_fda) return source_plain;
        const auto transformed = apply_fda_to_source(
            data.source->images, data.target_pool->images, config.beta, pairing_rng);
        FeatureSet out;
        out.feature_dim = static_cast<size_t>(featurizer.output_dim());
        for (size_t i = 0; i < transformed.size(); ++i)
            out.append_row(featurizer.forward(transformed[i]),
                           data.source->labels[i], 0);
        return out;
    };
    return run_core(config, source_for_epoch, pool_features, test_features,
                    num_classes);
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError(IoError::Code::open_failed,
                      "cannot create " + path.string());
    return out;
}

}  // namespace

void write_metrics(const MetricsHistory& history, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    auto metrics = open_out(fs::path(out_dir) / "metrics.csv");
    metrics << "epoch,mean_loss,labeled_count\n";
    for (size_t e = 0; e < history.epoch_loss.size(); ++e)
        metrics << (e + 1) << "," << fmt_double(history.epoch_loss[e]) << ","
                << history.labeled_count[e] << "\n";

    for (const auto& record : history.selections) {
        auto sel = open_out(fs::path(out_dir) /
                            ("selection_round_" + std::to_string(record.round) + ".csv"));
        sel << "rank,sample_index\n";
        for (size_t r = 0; r < record.indices.size(); ++r)
            sel << (r + 1) << "," << record.indices[r] << "\n";
    }

    auto predictions = open_out(fs::path(out_dir) / "predictions.csv");
    predictions << "confidence,predicted,actual\n";
    for (size_t i = 0; i < history.test_log.size(); ++i)
        predictions << fmt_double(history.test_log.confidences[i]) << ","
                    << history.test_log.predicted[i] << ","
                    << history.test_log.actual[i] << "\n";

    auto summary = open_out(fs::path(out_dir) / "summary.csv");
    summary << "metric,value\n";
    summary << "macro_accuracy," << fmt_double(history.test_accuracy.macro_average)
            << "\n";
    summary << "ece," << fmt_double(history.test_ece) << "\n";
    summary << "budget," << history.budget << "\n";
    const size_t labeled =
        history.labeled_count.empty() ? 0 : history.labeled_count.back();
    summary << "labeled," << labeled << "\n";
    for (size_t k = 0; k < history.test_accuracy.per_class.size(); ++k) {
        summary << "class_" << k << "_accuracy,";
        if (history.test_accuracy.per_class[k])
            summary << fmt_double(*history.test_accuracy.per_class[k]);
        else
            summary << "undefined";
        summary << "\n";
    }
}

}  // namespace specadapt
