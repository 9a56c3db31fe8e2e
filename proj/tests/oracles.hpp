// Test-only reference implementations, kept independent of the library's
// computation paths: a direct double-loop DFT, central-difference gradients,
// and an exact one-sided sign test.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "specadapt/spectral.hpp"

namespace oracles {

// Direct evaluation of F(u,v) = sum_h sum_w x(h,w) exp(-j2pi(hu/H + wv/W)),
// O(N^2) over all bins. No FFT, no row-column factorization.
inline specadapt::Spectrum naive_dft2d(const specadapt::RealPlane& x) {
    const int h_dim = x.height;
    const int w_dim = x.width;
    specadapt::Spectrum out(h_dim, w_dim);
    for (int u = 0; u < h_dim; ++u) {
        for (int v = 0; v < w_dim; ++v) {
            std::complex<double> acc(0.0, 0.0);
            for (int h = 0; h < h_dim; ++h) {
                for (int w = 0; w < w_dim; ++w) {
                    const double angle =
                        -2.0 * M_PI *
                        (static_cast<double>(h) * u / h_dim +
                         static_cast<double>(w) * v / w_dim);
                    acc += x.at(h, w) *
                           std::complex<double>(std::cos(angle), std::sin(angle));
                }
            }
            out.at(u, v) = acc;
        }
    }
    return out;
}

// Central finite differences of a scalar function of a vector.
inline std::vector<double> central_diff(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> point, double step) {
    std::vector<double> grad(point.size());
    for (size_t i = 0; i < point.size(); ++i) {
        const double saved = point[i];
        point[i] = saved + step;
        const double hi = f(point);
        point[i] = saved - step;
        const double lo = f(point);
        point[i] = saved;
        grad[i] = (hi - lo) / (2.0 * step);
    }
    return grad;
}

// One-sided exact sign test: probability of >= wins successes out of n fair
// coin flips.
inline double sign_test_p_value(int wins, int n) {
    double p = 0.0;
    for (int i = wins; i <= n; ++i) {
        // C(n, i) via logs to stay in range
        double log_c = 0.0;
        for (int j = 0; j < i; ++j)
            log_c += std::log(static_cast<double>(n - j)) -
                     std::log(static_cast<double>(j + 1));
        p += std::exp(log_c - n * std::log(2.0));
    }
    return p;
}

inline double rel_error(double actual, double expected) {
    const double denom = std::max(std::abs(expected), 1e-300);
    return std::abs(actual - expected) / denom;
}

// Wrapped phase difference in (-pi, pi].
inline double phase_diff(double a, double b) {
    return std::atan2(std::sin(a - b), std::cos(a - b));
}

}  // namespace oracles
