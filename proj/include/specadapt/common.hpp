#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace specadapt {

/// Raised when a file cannot be parsed. The code distinguishes the failure
/// mode so callers (and the CLI exit-code mapping) can tell malformed input
/// apart from environment problems.
class IoError : public std::runtime_error {
public:
    enum class Code {
        open_failed,
        bad_magic,
        bad_header,
        truncated,
        overflow,
        bad_value,
    };

    IoError(Code code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

void warn(const std::string& message);

inline bool all_finite(std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

inline void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double l2_norm(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

/// Cosine similarity with the zero-vector convention: if either argument has
/// norm below 1e-12 the result is 0 rather than NaN.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace specadapt
