#include "specadapt/margin.hpp"

#include <algorithm>
#include <cmath>

namespace specadapt {

Featurizer Featurizer::identity(int dim) {
    require(dim >= 1, "Featurizer: dimension must be positive");
    return Featurizer(Kind::identity_flatten, dim, dim);
}

Featurizer Featurizer::external(int dim) {
    require(dim >= 1, "Featurizer: dimension must be positive");
    return Featurizer(Kind::external_features, dim, dim);
}

Featurizer Featurizer::random_projection(int in_dim, int out_dim, uint64_t seed) {
    require(in_dim >= 1 && out_dim >= 1, "Featurizer: dimensions must be positive");
    Featurizer f(Kind::fixed_random_projection, in_dim, out_dim);
    SeededRng rng = seeded_stream(seed, "generation");
    const double scale = 1.0 / std::sqrt(static_cast<double>(in_dim));
    f.projection_.resize(static_cast<size_t>(out_dim) * in_dim);
    for (auto& v : f.projection_) v = rng.normal() * scale;
    return f;
}

std::vector<double> Featurizer::forward(std::span<const double> raw) const {
    require(static_cast<int>(raw.size()) == input_dim_,
            "Featurizer: input size mismatch");
    if (kind_ != Kind::fixed_random_projection)
        return std::vector<double>(raw.begin(), raw.end());
    std::vector<double> out(static_cast<size_t>(output_dim_), 0.0);
    for (int o = 0; o < output_dim_; ++o) {
        const double* row = &projection_[static_cast<size_t>(o) * input_dim_];
        double acc = 0.0;
        for (int i = 0; i < input_dim_; ++i) acc += row[i] * raw[i];
        out[o] = acc;
    }
    return out;
}

std::vector<double> Featurizer::forward(const Image& image) const {
    return forward(std::span<const double>(image.data));
}

std::vector<double> logits(const LinearHead& head, std::span<const double> f) {
    require(static_cast<int>(f.size()) == head.feature_dim,
            "logits: feature dimension mismatch");
    require(all_finite(f), "logits: non-finite features");
    std::vector<double> z(head.num_classes);
    for (int k = 0; k < head.num_classes; ++k) {
        const double* row = &head.weights[static_cast<size_t>(k) * head.feature_dim];
        double acc = head.bias[k];
        for (int d = 0; d < head.feature_dim; ++d) acc += row[d] * f[d];
        z[k] = acc;
    }
    return z;
}

std::vector<double> softmax_probs(std::span<const double> z) {
    require(!z.empty(), "softmax_probs: empty input");
    require(all_finite(z), "softmax_probs: non-finite logits");
    const double zmax = *std::max_element(z.begin(), z.end());
    std::vector<double> p(z.size());
    double sum = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        p[i] = std::exp(z[i] - zmax);
        sum += p[i];
    }
    for (auto& v : p) v /= sum;
    return p;
}

TopTwo top_two(std::span<const double> scores) {
    require(scores.size() >= 2, "top_two: need at least two entries");
    int first = 0;
    for (size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[first]) first = static_cast<int>(i);
    int second = first == 0 ? 1 : 0;
    for (size_t i = 0; i < scores.size(); ++i) {
        if (static_cast<int>(i) == first) continue;
        if (scores[i] > scores[second]) second = static_cast<int>(i);
    }
    return {first, second};
}

double margin_score(std::span<const double> z) {
    const auto p = softmax_probs(z);
    const auto top = top_two(p);
    return 1.0 - (p[top.first] - p[top.second]);
}

double adaptive_margin_loss(std::span<const double> z, int label, double m) {
    require(m > 0.0, "adaptive_margin_loss: m must be positive");
    require(label >= 0 && label < static_cast<int>(z.size()),
            "adaptive_margin_loss: label out of range");
    const double zj = z[label];
    double loss = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        if (static_cast<int>(i) == label) continue;
        const double d = zj - z[i];
        const double gamma = 1.0 - d / m;
        const double hinge = std::max(0.0, m - d);
        loss += gamma * hinge - zj;
    }
    return loss;
}

std::vector<double> grad_loss_wrt_logits(std::span<const double> z, int label,
                                         double m, GradConvention convention) {
    require(m > 0.0, "grad_loss_wrt_logits: m must be positive");
    require(label >= 0 && label < static_cast<int>(z.size()),
            "grad_loss_wrt_logits: label out of range");
    const int k = static_cast<int>(z.size());
    const double zj = z[label];
    const double hinge_factor =
        convention == GradConvention::detached_gamma ? 1.0 : 2.0;
    std::vector<double> grad(z.size(), 0.0);
    double grad_j = -static_cast<double>(k - 1);  // the max-logit terms
    for (int i = 0; i < k; ++i) {
        if (i == label) continue;
        const double d = zj - z[i];
        if (d < m) {
            const double gamma = 1.0 - d / m;
            grad[i] = hinge_factor * gamma;
            grad_j -= hinge_factor * gamma;
        }
    }
    grad[label] = grad_j;
    return grad;
}

std::vector<double> grad_wrt_features(const LinearHead& head,
                                      std::span<const double> grad_z) {
    require(static_cast<int>(grad_z.size()) == head.num_classes,
            "grad_wrt_features: gradient dimension mismatch");
    std::vector<double> g(static_cast<size_t>(head.feature_dim), 0.0);
    for (int k = 0; k < head.num_classes; ++k) {
        const double gk = grad_z[k];
        if (gk == 0.0) continue;
        const double* row = &head.weights[static_cast<size_t>(k) * head.feature_dim];
        for (int d = 0; d < head.feature_dim; ++d) g[d] += gk * row[d];
    }
    return g;
}

std::vector<double> grad_margin_wrt_logits(std::span<const double> z) {
    const auto p = softmax_probs(z);
    const auto top = top_two(p);
    // grad p_k = p_k (e_k - p); M = 1 - (p_1* - p_2*) with fixed selection
    std::vector<double> grad(z.size());
    const double p1 = p[top.first];
    const double p2 = p[top.second];
    for (size_t i = 0; i < z.size(); ++i) {
        double g1 = -p1 * p[i];
        double g2 = -p2 * p[i];
        if (static_cast<int>(i) == top.first) g1 += p1;
        if (static_cast<int>(i) == top.second) g2 += p2;
        grad[i] = -(g1 - g2);
    }
    return grad;
}

std::vector<double> estimate_loss_gradient(const LinearHead& head,
                                           std::span<const double> f, double m) {
    const auto z = logits(head, f);
    const auto p = softmax_probs(z);
    const auto top = top_two(p);
    const auto g1 =
        grad_wrt_features(head, grad_loss_wrt_logits(z, top.first, m,
                                                     GradConvention::detached_gamma));
    const auto g2 =
        grad_wrt_features(head, grad_loss_wrt_logits(z, top.second, m,
                                                     GradConvention::detached_gamma));
    std::vector<double> g(g1.size());
    for (size_t d = 0; d < g.size(); ++d)
        g[d] = p[top.first] * g1[d] + p[top.second] * g2[d];
    return g;
}

QueryRecord query_score(const LinearHead& head, std::span<const double> f,
                        const MarginParams& params, size_t sample_index) {
    params.validate();
    const auto z = logits(head, f);
    QueryRecord record;
    record.sample_index = sample_index;
    record.margin_score = margin_score(z);
    const auto loss_grad = estimate_loss_gradient(head, f, params.m);
    const auto margin_grad = grad_wrt_features(head, grad_margin_wrt_logits(z));
    record.cosine_term = cosine_similarity(loss_grad, margin_grad);
    record.q_value = record.margin_score + params.lambda * record.cosine_term;
    return record;
}

Prediction predict_features(const LinearHead& head, std::span<const double> f) {
    const auto z = logits(head, f);
    const auto p = softmax_probs(z);
    int best = 0;
    for (size_t i = 1; i < p.size(); ++i)
        if (p[i] > p[best]) best = static_cast<int>(i);
    return {best, p[best]};
}

Prediction predict(const LinearHead& head, const Featurizer& featurizer,
                   std::span<const double> raw_input) {
    const auto f = featurizer.forward(raw_input);
    require(static_cast<int>(f.size()) == head.feature_dim,
            "predict: featurizer output does not match head");
    return predict_features(head, f);
}

}  // namespace specadapt
