#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "specadapt/common.hpp"
#include "specadapt/image.hpp"
#include "specadapt/rng.hpp"

namespace specadapt {

/// Linear classifier head: K x D weights (class by feature) plus a K bias.
struct LinearHead {
    int num_classes = 0;
    int feature_dim = 0;
    std::vector<double> weights;  // row-major K x D
    std::vector<double> bias;     // K

    LinearHead() = default;
    LinearHead(int k, int d)
        : num_classes(k), feature_dim(d),
          weights(static_cast<size_t>(k) * d, 0.0), bias(k, 0.0) {
        require(k >= 2, "LinearHead: need at least two classes");
        require(d >= 1, "LinearHead: feature dimension must be positive");
    }

    double& w(int k, int d) { return weights[static_cast<size_t>(k) * feature_dim + d]; }
    double w(int k, int d) const {
        return weights[static_cast<size_t>(k) * feature_dim + d];
    }
};

/// Fixed, forward-only feature map in front of the linear head. Frozen at
/// query and training time; gradients stop at its output.
class Featurizer {
public:
    enum class Kind { identity_flatten, fixed_random_projection, external_features };

    /// Passthrough map of the given dimension.
    static Featurizer identity(int dim);
    static Featurizer external(int dim);
    /// Gaussian projection matrix (out_dim x in_dim, entries N(0, 1/in_dim))
    /// drawn deterministically from the seed's "generation" stream.
    static Featurizer random_projection(int in_dim, int out_dim, uint64_t seed);

    Kind kind() const { return kind_; }
    int input_dim() const { return input_dim_; }
    int output_dim() const { return output_dim_; }

    std::vector<double> forward(std::span<const double> raw) const;
    std::vector<double> forward(const Image& image) const;

private:
    Featurizer(Kind kind, int in_dim, int out_dim)
        : kind_(kind), input_dim_(in_dim), output_dim_(out_dim) {}

    Kind kind_;
    int input_dim_;
    int output_dim_;
    std::vector<double> projection_;  // out_dim x in_dim when projecting
};

struct MarginParams {
    double m = 1.0;        // margin width, > 0
    double lambda = 0.001; // query mixing weight, >= 0

    void validate() const {
        require(m > 0.0, "MarginParams: m must be positive");
        require(lambda >= 0.0, "MarginParams: lambda must be non-negative");
    }
};

struct QueryRecord {
    size_t sample_index = 0;
    double margin_score = 0.0;  // in [0,1]
    double cosine_term = 0.0;   // in [-1,1]
    double q_value = 0.0;       // margin_score + lambda * cosine_term
};

/// Which gradient to take for the margin loss: gamma treated as a
/// stop-gradient weight (default) or differentiated through (which doubles
/// the active hinge contributions).
enum class GradConvention { detached_gamma, full };

std::vector<double> logits(const LinearHead& head, std::span<const double> f);

/// Numerically stable softmax; entries positive and summing to 1.
std::vector<double> softmax_probs(std::span<const double> z);

/// Top-two indices of a score vector, ties broken by lowest index.
struct TopTwo {
    int first;
    int second;
};
TopTwo top_two(std::span<const double> scores);

/// 1 - (p_max - p_runner_up) computed from softmax of z; in [0,1], maximal
/// for uncertain samples.
double margin_score(std::span<const double> z);

/// Per-class hinge loss with similarity weights gamma_i = 1 - (z_j - z_i)/m
/// and a max-logit term -z_j repeated once per competing class:
///   L = sum_{i != j} ( gamma_i * [m - z_j + z_i]_+  -  z_j ).
/// Equals sum_{i != j} (m - d_i)_+^2 / m - (K-1) z_j with d_i = z_j - z_i.
double adaptive_margin_loss(std::span<const double> z, int label, double m);

/// Gradient of the loss w.r.t. logits. A hinge exactly at its boundary
/// (d_i == m) contributes zero under both conventions.
std::vector<double> grad_loss_wrt_logits(std::span<const double> z, int label,
                                         double m, GradConvention convention);

/// Chain rule through the linear head only: returns weights^T * grad_z.
std::vector<double> grad_wrt_features(const LinearHead& head,
                                      std::span<const double> grad_z);

/// Gradient of the margin term w.r.t. logits, with the top-two selection
/// treated as fixed.
std::vector<double> grad_margin_wrt_logits(std::span<const double> z);

/// Label-free loss gradient estimate for an unlabeled sample: the top-two
/// predicted labels' gradients mixed by their probabilities
/// (detached-gamma convention).
std::vector<double> estimate_loss_gradient(const LinearHead& head,
                                           std::span<const double> f, double m);

/// Query value Q = M + lambda * cos(grad_loss_estimate, grad_margin), with
/// the cosine defined as 0 when either gradient vanishes.
QueryRecord query_score(const LinearHead& head, std::span<const double> f,
                        const MarginParams& params, size_t sample_index = 0);

struct Prediction {
    int class_index;
    double confidence;  // softmax probability of the predicted class
};

Prediction predict(const LinearHead& head, const Featurizer& featurizer,
                   std::span<const double> raw_input);
Prediction predict_features(const LinearHead& head, std::span<const double> f);

}  // namespace specadapt
