#include "specadapt/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace specadapt {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

SeededRng::SeededRng(uint64_t master_seed, const std::string& label) {
    uint64_t mix = master_seed;
    (void)splitmix64(mix);
    mix ^= fnv1a(label);
    origin_ = mix;
    uint64_t s = mix;
    for (auto& w : state_) w = splitmix64(s);
}

SeededRng SeededRng::substream(uint64_t index) const {
    SeededRng child;
    uint64_t mix = origin_;
    (void)splitmix64(mix);
    mix ^= splitmix64(index);
    child.origin_ = mix;
    uint64_t s = mix;
    for (auto& w : child.state_) w = splitmix64(s);
    return child;
}

uint64_t SeededRng::next_u64() {
    // xoshiro256** step
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SeededRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

uint64_t SeededRng::bounded(uint64_t n) {
    if (n == 0) throw std::invalid_argument("SeededRng::bounded: n must be positive");
    // rejection sampling, unbiased
    const uint64_t threshold = (0ULL - n) % n;
    for (;;) {
        const uint64_t r = next_u64();
        if (r >= threshold) return r % n;
    }
}

double SeededRng::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_normal_ = r * std::sin(theta);
    has_spare_normal_ = true;
    return r * std::cos(theta);
}

std::vector<size_t> SeededRng::sample_without_replacement(
    std::span<const size_t> candidates, size_t k) {
    if (k > candidates.size())
        throw std::invalid_argument("sample_without_replacement: k exceeds pool size");
    std::vector<size_t> pool(candidates.begin(), candidates.end());
    std::vector<size_t> picked;
    picked.reserve(k);
    for (size_t i = 0; i < k; ++i) {
        const size_t j = static_cast<size_t>(bounded(pool.size() - i)) + i;
        std::swap(pool[i], pool[j]);
        picked.push_back(pool[i]);
    }
    return picked;
}

}  // namespace specadapt
