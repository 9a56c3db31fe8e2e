#include "specadapt/synthetic.hpp"

#include <cmath>

#include "specadapt/margin.hpp"
#include "specadapt/rng.hpp"

namespace specadapt {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Stratified 80/20 split: the first floor(0.8 * per_class) samples of each
// class go to the pool, the rest to the test set. Samples are i.i.d. within
// a class, so a positional split carries no bias.
template <typename AppendFn>
void split_by_class(int per_class, int num_classes, AppendFn&& append) {
    const int pool_per_class = (per_class * 4) / 5;
    for (int k = 0; k < num_classes; ++k)
        for (int i = 0; i < per_class; ++i)
            append(k, i, i < pool_per_class);
}

}  // namespace

GaussianBench make_gaussian_bench(const GaussianBenchSpec& spec) {
    spec.validate();
    const int d = spec.feature_dim;
    const int k = spec.num_classes;

    std::vector<std::vector<double>> source_means(k, std::vector<double>(d, 0.0));
    std::vector<std::vector<double>> target_means(k, std::vector<double>(d, 0.0));
    const double cos_a = std::cos(spec.rotation_angle);
    const double sin_a = std::sin(spec.rotation_angle);
    for (int c = 0; c < k; ++c) {
        const double angle = 2.0 * M_PI * c / k;
        source_means[c][0] = spec.class_mean_radius * std::cos(angle);
        source_means[c][1] = spec.class_mean_radius * std::sin(angle);

        std::vector<double> shifted = source_means[c];
        if (!spec.translation.empty())
            for (int j = 0; j < d; ++j) shifted[j] += spec.translation[j];
        target_means[c] = shifted;
        target_means[c][0] = cos_a * shifted[0] - sin_a * shifted[1];
        target_means[c][1] = sin_a * shifted[0] + cos_a * shifted[1];
    }

    const SeededRng base = seeded_stream(spec.seed, "generation");
    auto draw_sample = [&](const std::vector<double>& mean, uint64_t index) {
        SeededRng rng = base.substream(index);
        std::vector<double> f(mean);
        for (auto& v : f) v += spec.noise_sigma * rng.normal();
        return f;
    };

    GaussianBench bench;
    bench.source.feature_dim = static_cast<size_t>(d);
    bench.target_pool.feature_dim = static_cast<size_t>(d);
    bench.target_test.feature_dim = static_cast<size_t>(d);

    uint64_t index = 0;
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < spec.samples_per_class; ++i)
            bench.source.append_row(draw_sample(source_means[c], index++), c, 0);

    split_by_class(spec.samples_per_class, k, [&](int c, int /*i*/, bool in_pool) {
        auto f = draw_sample(target_means[c], index++);
        (in_pool ? bench.target_pool : bench.target_test).append_row(f, c, 1);
    });
    return bench;
}

TextureBenchSpec TextureBenchSpec::resolved() const {
    TextureBenchSpec out = *this;
    if (out.class_patterns.empty()) {
        // stripes at bins 6, 9, 12, ... with rotating orientation; amplitudes
        // deliberately unequal so classes differ in difficulty
        for (int c = 0; c < out.num_classes; ++c) {
            ClassPattern p;
            const int freq = 6 + 3 * c;
            switch (c % 3) {
                case 0: p.freq_y = 0; p.freq_x = freq; break;
                case 1: p.freq_y = freq; p.freq_x = 0; break;
                default: p.freq_y = freq; p.freq_x = freq; break;
            }
            p.amplitude = 0.10 + 0.03 * c;
            p.phase_jitter = 0.3;
            out.class_patterns.push_back(p);
        }
    }
    if (out.source_style.modes.empty()) {
        out.source_style.base_level = 0.45;
        out.source_style.base_jitter = 0.04;
        out.source_style.modes = {{1, 0, 0.04, 0.10},
                                  {0, 1, 0.03, 0.10},
                                  {2, 0, 0.02, 0.10}};
    }
    if (out.target_style.modes.empty()) {
        out.target_style.base_level = 0.60;
        out.target_style.base_jitter = 0.10;
        out.target_style.modes = {{1, 0, 0.10, 0.50},
                                  {0, 1, 0.07, 0.50},
                                  {2, 0, 0.05, 0.50}};
    }
    return out;
}

void TextureBenchSpec::validate() const {
    require(num_classes >= 2, "TextureBenchSpec: need at least two classes");
    require(is_pow2(image_size), "TextureBenchSpec: image_size must be a power of two");
    require(samples_per_class >= 1, "TextureBenchSpec: empty classes");
    require(noise_sigma > 0.0, "TextureBenchSpec: noise_sigma must be positive");
    require(style_band_beta > 0.0 && style_band_beta < 1.0,
            "TextureBenchSpec: style_band_beta outside (0,1)");
    require(class_patterns.size() == static_cast<size_t>(num_classes),
            "TextureBenchSpec: one pattern per class required");

    // class and domain signals must occupy disjoint DFT bands
    const int band = static_cast<int>(std::floor(style_band_beta * image_size));
    auto in_band = [&](int f) {
        const int wrapped = ((f % image_size) + image_size) % image_size;
        return std::min(wrapped, image_size - wrapped) <= band;
    };
    for (const auto& p : class_patterns)
        require(!(in_band(p.freq_y) && in_band(p.freq_x)),
                "TextureBenchSpec: class pattern lies inside the style band");
    for (const auto* style : {&source_style, &target_style})
        for (const auto& m : style->modes)
            require(in_band(m.freq_y) && in_band(m.freq_x),
                    "TextureBenchSpec: style mode lies outside the style band");
}

TextureBench make_texture_bench(const TextureBenchSpec& raw_spec) {
    const TextureBenchSpec spec = raw_spec.resolved();
    spec.validate();
    const int n = spec.image_size;

    // cosine tables per (freq_y, freq_x) pair in use
    auto render_mode = [&](Image& img, int fy, int fx, double amp, double phase) {
        for (int h = 0; h < n; ++h) {
            const double row_angle = 2.0 * M_PI * fy * h / n;
            for (int w = 0; w < n; ++w) {
                const double angle = row_angle + 2.0 * M_PI * fx * w / n + phase;
                img.at(h, w, 0) += amp * std::cos(angle);
            }
        }
    };

    const SeededRng base = seeded_stream(spec.seed, "generation");
    auto make_image = [&](const DomainStyle& style, const ClassPattern& pattern,
                          uint64_t index) {
        SeededRng rng = base.substream(index);
        Image img(n, n, 1);
        const double level =
            style.base_level * (1.0 + rng.uniform(-style.base_jitter, style.base_jitter));
        for (auto& v : img.data) v = level;
        for (const auto& m : style.modes) {
            const double amp =
                m.amplitude * (1.0 + rng.uniform(-m.jitter, m.jitter));
            render_mode(img, m.freq_y, m.freq_x, amp, 0.0);
        }
        const double phase = rng.uniform(-pattern.phase_jitter, pattern.phase_jitter);
        render_mode(img, pattern.freq_y, pattern.freq_x, pattern.amplitude, phase);
        for (auto& v : img.data) {
            v += spec.noise_sigma * rng.normal();
            v = std::min(1.0, std::max(0.0, v));
        }
        return img;
    };

    TextureBench bench;
    uint64_t index = 0;
    for (int c = 0; c < spec.num_classes; ++c) {
        for (int i = 0; i < spec.samples_per_class; ++i) {
            bench.source.images.push_back(
                make_image(spec.source_style, spec.class_patterns[c], index++));
            bench.source.labels.push_back(c);
        }
    }
    split_by_class(spec.samples_per_class, spec.num_classes,
                   [&](int c, int /*i*/, bool in_pool) {
                       auto img = make_image(spec.target_style,
                                             spec.class_patterns[c], index++);
                       auto& set = in_pool ? bench.target_pool : bench.target_test;
                       set.images.push_back(std::move(img));
                       set.labels.push_back(c);
                   });
    return bench;
}

FeatureSet featurize_images(const ImageSet& set, const Featurizer& featurizer,
                            Domain domain) {
    FeatureSet out;
    out.feature_dim = static_cast<size_t>(featurizer.output_dim());
    for (size_t i = 0; i < set.images.size(); ++i) {
        const auto f = featurizer.forward(set.images[i]);
        const int32_t label = set.labels.empty() ? -1 : set.labels[i];
        out.append_row(f, label, static_cast<uint8_t>(domain));
    }
    return out;
}

}  // namespace specadapt
