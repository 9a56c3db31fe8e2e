#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specadapt/dataset.hpp"
#include "specadapt/margin.hpp"
#include "specadapt/rng.hpp"

namespace specadapt {

enum class OptimizerKind { adadelta, sgd };

struct TrainOptions {
    OptimizerKind optimizer = OptimizerKind::adadelta;
    double learning_rate = 0.5;
    double rho = 0.9;       // AdaDelta decay
    double epsilon = 1e-6;  // AdaDelta conditioning
    int batch_size = 32;
    double margin = 1.0;
    int epochs = 50;
    uint64_t seed = 0;
};

/// Minibatch trainer for a linear head under the adaptive margin loss
/// (detached-gamma gradients). Keeps optimizer state across epochs so a
/// caller can interleave epochs with other work; shuffling is deterministic
/// from the seed's "shuffling" stream.
class Trainer {
public:
    Trainer(LinearHead head, const TrainOptions& options);

    /// Runs one epoch over the given data; returns the mean per-sample loss.
    double run_epoch(const FeatureSet& data);

    const LinearHead& head() const { return head_; }
    LinearHead take_head() { return std::move(head_); }

private:
    void apply_update(const std::vector<double>& grad_w,
                      const std::vector<double>& grad_b);

    LinearHead head_;
    TrainOptions options_;
    SeededRng shuffle_rng_;
    // AdaDelta accumulators, lazily sized to the head
    std::vector<double> eg2_w_, edx2_w_, eg2_b_, edx2_b_;
};

struct TrainResult {
    LinearHead head;
    std::vector<double> epoch_loss;
};

/// Trains a head for options.epochs epochs over a fixed labeled set and
/// returns it with the per-epoch mean loss history.
TrainResult train_head(const LinearHead& initial, const FeatureSet& data,
                       const TrainOptions& options);

}  // namespace specadapt
