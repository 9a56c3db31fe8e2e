#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace specadapt {

/// Deterministic random stream derived from a master seed and a purpose
/// label ("shuffling", "selection", "pairing", "generation", ...). Streams
/// with distinct labels are independent; the same (seed, label) pair always
/// yields the same sequence. All randomness in the toolkit flows through
/// these streams -- there is no ambient entropy anywhere.
///
/// The generator is xoshiro-style splitmix64 chained into a 4-word state;
/// draws are reproducible across standard libraries since no std::
/// distribution is involved.
class SeededRng {
public:
    SeededRng(uint64_t master_seed, const std::string& label);

    /// Sub-stream derived from this stream's identity and an index. Used for
    /// per-sample generation so parallel and serial evaluation agree.
    SeededRng substream(uint64_t index) const;

    uint64_t next_u64();

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform();

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);

    /// Uniform integer in [0, n), n > 0.
    uint64_t bounded(uint64_t n);

    /// Standard normal via Box-Muller (deterministic, spare value cached).
    double normal();

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(bounded(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// k distinct values sampled uniformly from `candidates`, in draw order.
    std::vector<size_t> sample_without_replacement(std::span<const size_t> candidates,
                                                   size_t k);

private:
    SeededRng() = default;

    uint64_t state_[4];
    uint64_t origin_;  // mixed (seed, label) identity, kept for substreams
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

inline SeededRng seeded_stream(uint64_t master_seed, const std::string& label) {
    return SeededRng(master_seed, label);
}

}  // namespace specadapt
