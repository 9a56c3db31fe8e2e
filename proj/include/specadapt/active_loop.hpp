#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specadapt/calibration.hpp"
#include "specadapt/dataset.hpp"
#include "specadapt/image.hpp"
#include "specadapt/margin.hpp"
#include "specadapt/train.hpp"

namespace specadapt {

enum class Strategy { sdm, random, entropy };

Strategy strategy_from_string(const std::string& name);
std::string strategy_name(Strategy strategy);

/// Experiment knobs. Defaults follow the stock protocol: five selection
/// rounds of 2% each at epochs 10..18, fifty epochs total, AdaDelta at
/// lr 0.5, lambda 0.001, beta 0.033, margin 1.
struct ExperimentConfig {
    int rounds = 5;
    double per_round_fraction = 0.02;
    std::vector<int> selection_epochs = {10, 12, 14, 16, 18};
    int total_epochs = 50;
    int batch_size = 32;
    double lambda = 0.001;
    double beta = 0.033;
    double margin = 1.0;
    Strategy strategy = Strategy::sdm;
    bool use_fda = true;
    uint64_t seed = 0;

    OptimizerKind optimizer = OptimizerKind::adadelta;
    double learning_rate = 0.5;
    double rho = 0.9;
    double epsilon = 1e-6;

    void validate() const;
    TrainOptions train_options() const;
};

/// Target-side bookkeeping for the annotation protocol: which samples are
/// still candidates, which have been labeled, in which round, and the hidden
/// ground truth the simulated oracle reveals.
class Pool {
public:
    Pool(std::vector<int32_t> ground_truth, size_t budget);

    size_t size() const { return ground_truth_.size(); }
    size_t labeled_count() const { return labeled_order_.size(); }
    size_t budget() const { return budget_; }
    bool is_labeled(size_t index) const { return labeled_[index] != 0; }

    std::vector<size_t> unlabeled_indices() const;
    const std::vector<size_t>& labeled_order() const { return labeled_order_; }
    const std::vector<std::vector<size_t>>& round_records() const {
        return round_records_;
    }

    /// Reveals the ground truth of the given unlabeled samples and moves them
    /// to the labeled side as one round. Rejects duplicates, already-labeled
    /// indices, and budget overruns.
    std::vector<int32_t> annotate(std::span<const size_t> indices);

    int32_t label(size_t index) const { return ground_truth_[index]; }

private:
    std::vector<int32_t> ground_truth_;
    std::vector<uint8_t> labeled_;
    std::vector<size_t> labeled_order_;
    std::vector<std::vector<size_t>> round_records_;
    size_t budget_;
};

/// Ranks the candidate samples and returns the k indices to annotate.
/// sdm ranks by the query value Q, entropy by prediction entropy, both
/// descending with ties broken by ascending index; random draws uniformly
/// without replacement from the selection stream.
std::vector<size_t> select_batch(const LinearHead& head, const FeatureSet& pool_features,
                                 std::span<const size_t> candidates, size_t k,
                                 Strategy strategy, const MarginParams& params,
                                 SeededRng& selection_rng);

/// Pairs every source image with a uniformly drawn target image and applies
/// the amplitude transfer. The pairing stream is consumed once per call, so
/// re-pairing per epoch is the caller's choice.
std::vector<Image> apply_fda_to_source(const std::vector<Image>& source,
                                       const std::vector<Image>& target, double beta,
                                       SeededRng& pairing_rng);

struct SelectionRecord {
    int round = 0;  // 1-based
    int epoch = 0;
    std::vector<size_t> indices;  // rank order
};

struct MetricsHistory {
    std::vector<double> epoch_loss;
    std::vector<size_t> labeled_count;  // after any selection of that epoch
    std::vector<SelectionRecord> selections;
    PredictionLog test_log;
    ClassAccuracy test_accuracy;
    double test_ece = 0.0;
    size_t budget = 0;
};

struct FeatureExperimentData {
    const FeatureSet* source = nullptr;
    const FeatureSet* target_pool = nullptr;  // labels = hidden ground truth
    const FeatureSet* target_test = nullptr;
};

struct ImageExperimentData {
    const ImageSet* source = nullptr;
    const ImageSet* target_pool = nullptr;
    const ImageSet* target_test = nullptr;
    const Featurizer* featurizer = nullptr;
};

/// Feature-space experiment; use_fda must be false (there are no images to
/// transfer).
MetricsHistory run_experiment(const ExperimentConfig& config,
                              const FeatureExperimentData& data);

/// Image-space experiment: per-epoch spectral transfer of the source set
/// (when use_fda), featurization, selection rounds, and final test metrics.
MetricsHistory run_experiment(const ExperimentConfig& config,
                              const ImageExperimentData& data);

/// Writes metrics.csv, selection_round_<r>.csv, predictions.csv and
/// summary.csv under out_dir with stable formatting.
void write_metrics(const MetricsHistory& history, const std::string& out_dir);

}  // namespace specadapt
