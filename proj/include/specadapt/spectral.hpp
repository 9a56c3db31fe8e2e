#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "specadapt/image.hpp"

namespace specadapt {

/// Complex 2-D spectrum of one image channel, unshifted (DC at index (0,0)).
struct Spectrum {
    int height = 0;
    int width = 0;
    std::vector<std::complex<double>> values;  // row-major, height x width

    Spectrum() = default;
    Spectrum(int h, int w)
        : height(h), width(w), values(static_cast<size_t>(h) * w) {}

    std::complex<double>& at(int u, int v) {
        return values[static_cast<size_t>(u) * width + v];
    }
    std::complex<double> at(int u, int v) const {
        return values[static_cast<size_t>(u) * width + v];
    }
};

struct MaskParams {
    double beta;
};

/// Real H x W plane, row-major. Used for single channels, amplitudes and
/// phases.
struct RealPlane {
    int height = 0;
    int width = 0;
    std::vector<double> values;

    RealPlane() = default;
    RealPlane(int h, int w)
        : height(h), width(w), values(static_cast<size_t>(h) * w, 0.0) {}

    double& at(int y, int x) { return values[static_cast<size_t>(y) * width + x]; }
    double at(int y, int x) const {
        return values[static_cast<size_t>(y) * width + x];
    }
};

struct IdftResult {
    RealPlane plane;
    /// Largest |imag| discarded when taking the real part. Should be at
    /// round-off level for spectra of real images; values above 1e-6 mean the
    /// spectrum was not conjugate-symmetric.
    double max_imag_residue = 0.0;
};

/// Unnormalized forward 2-D DFT with the e^{-j2pi(hu/H + wv/W)} convention.
/// Power-of-two dimensions take a radix-2 FFT; other sizes fall back to
/// direct summation per axis.
Spectrum dft2d(const RealPlane& channel);

/// Inverse transform with 1/(H*W) normalization; returns the real part and
/// the maximum absolute imaginary residue.
IdftResult idft2d(const Spectrum& spectrum);

RealPlane amplitude(const Spectrum& spectrum);

/// Principal argument in (-pi, pi]; the phase of an exactly zero value is 0.
RealPlane phase(const Spectrum& spectrum);

/// Inverse of the amplitude/phase split: values[i] = amp[i] * e^{i*phase[i]}.
Spectrum from_polar(const RealPlane& amplitude, const RealPlane& phase);

/// Binary low-frequency selector around the unshifted DC bin: with
/// b_h = floor(beta*H), b_w = floor(beta*W), entry (h,w) is 1 iff
/// min(h, H-h) <= b_h and min(w, W-w) <= b_w. Requires beta in (0,1).
std::vector<uint8_t> low_freq_mask(int height, int width, double beta);

/// Amplitude swap: rebuilds each source channel with the target's amplitude
/// inside the low-frequency band, the source's outside, and the source phase
/// everywhere, then inverse-transforms. Output values are not clamped.
Image fda_transfer(const Image& source, const Image& target, double beta);

}  // namespace specadapt
