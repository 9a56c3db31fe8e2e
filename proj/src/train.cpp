#include "specadapt/train.hpp"

#include <cmath>
#include <numeric>

namespace specadapt {

Trainer::Trainer(LinearHead head, const TrainOptions& options)
    : head_(std::move(head)), options_(options),
      shuffle_rng_(seeded_stream(options.seed, "shuffling")) {
    require(options.batch_size >= 1, "Trainer: batch size must be positive");
    require(options.margin > 0.0, "Trainer: margin must be positive");
    require(options.learning_rate >= 0.0, "Trainer: negative learning rate");
    const size_t nw = head_.weights.size();
    const size_t nb = head_.bias.size();
    eg2_w_.assign(nw, 0.0);
    edx2_w_.assign(nw, 0.0);
    eg2_b_.assign(nb, 0.0);
    edx2_b_.assign(nb, 0.0);
}

double Trainer::run_epoch(const FeatureSet& data) {
    data.validate();
    require(data.num_samples > 0, "Trainer: empty dataset");
    require(data.has_labels(), "Trainer: dataset has no labels");
    require(static_cast<int>(data.feature_dim) == head_.feature_dim,
            "Trainer: feature dimension mismatch");
    for (int32_t y : data.labels)
        require(y >= 0 && y < head_.num_classes, "Trainer: label out of range");

    std::vector<size_t> order(data.num_samples);
    std::iota(order.begin(), order.end(), size_t{0});
    shuffle_rng_.shuffle(order);

    const size_t d = data.feature_dim;
    const size_t k = static_cast<size_t>(head_.num_classes);
    std::vector<double> grad_w(k * d);
    std::vector<double> grad_b(k);

    double loss_sum = 0.0;
    for (size_t start = 0; start < order.size();
         start += static_cast<size_t>(options_.batch_size)) {
        const size_t stop =
            std::min(order.size(), start + static_cast<size_t>(options_.batch_size));
        const double inv_batch = 1.0 / static_cast<double>(stop - start);
        std::fill(grad_w.begin(), grad_w.end(), 0.0);
        std::fill(grad_b.begin(), grad_b.end(), 0.0);

        for (size_t s = start; s < stop; ++s) {
            const auto f = data.row(order[s]);
            const int label = data.labels[order[s]];
            const auto z = logits(head_, f);
            loss_sum += adaptive_margin_loss(z, label, options_.margin);
            const auto gz = grad_loss_wrt_logits(z, label, options_.margin,
                                                 GradConvention::detached_gamma);
            for (size_t c = 0; c < k; ++c) {
                const double g = gz[c] * inv_batch;
                if (g == 0.0) continue;
                grad_b[c] += g;
                double* row = &grad_w[c * d];
                for (size_t j = 0; j < d; ++j) row[j] += g * f[j];
            }
        }
        apply_update(grad_w, grad_b);
    }
    return loss_sum / static_cast<double>(data.num_samples);
}

void Trainer::apply_update(const std::vector<double>& grad_w,
                           const std::vector<double>& grad_b) {
    const double lr = options_.learning_rate;
    if (lr == 0.0) return;  // keeps the head bit-for-bit untouched

    if (options_.optimizer == OptimizerKind::sgd) {
        for (size_t i = 0; i < head_.weights.size(); ++i)
            head_.weights[i] -= lr * grad_w[i];
        for (size_t i = 0; i < head_.bias.size(); ++i)
            head_.bias[i] -= lr * grad_b[i];
        return;
    }

    const double rho = options_.rho;
    const double eps = options_.epsilon;
    auto step = [&](std::vector<double>& params, const std::vector<double>& grad,
                    std::vector<double>& eg2, std::vector<double>& edx2) {
        for (size_t i = 0; i < params.size(); ++i) {
            const double g = grad[i];
            eg2[i] = rho * eg2[i] + (1.0 - rho) * g * g;
            const double dx = -std::sqrt(edx2[i] + eps) / std::sqrt(eg2[i] + eps) * g;
            edx2[i] = rho * edx2[i] + (1.0 - rho) * dx * dx;
            params[i] += lr * dx;
        }
    };
    step(head_.weights, grad_w, eg2_w_, edx2_w_);
    step(head_.bias, grad_b, eg2_b_, edx2_b_);
}

TrainResult train_head(const LinearHead& initial, const FeatureSet& data,
                       const TrainOptions& options) {
    require(data.num_samples > 0, "train_head: empty dataset");
    Trainer trainer(initial, options);
    TrainResult result;
    result.epoch_loss.reserve(static_cast<size_t>(options.epochs));
    for (int e = 0; e < options.epochs; ++e)
        result.epoch_loss.push_back(trainer.run_epoch(data));
    result.head = trainer.take_head();
    return result;
}

}  // namespace specadapt
