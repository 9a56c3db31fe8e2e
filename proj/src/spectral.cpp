#include "specadapt/spectral.hpp"

#include <cmath>

namespace specadapt {

namespace {

using cplx = std::complex<double>;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, in place. sign = -1 forward, +1 inverse
// (unnormalized either way).
void fft_pow2(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Direct summation for lengths that are not powers of two. Kernel values are
// read from a precomputed table indexed by n*k mod N.
void dft_direct(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    std::vector<cplx> kernel(n);
    for (size_t m = 0; m < n; ++m) {
        const double ang = sign * 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(n);
        kernel[m] = cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    for (size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        size_t idx = 0;
        for (size_t m = 0; m < n; ++m) {
            acc += a[m] * kernel[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = acc;
    }
    a = std::move(out);
}

void transform_axis(std::vector<cplx>& a, int sign) {
    if (a.size() == 1) return;
    if (is_pow2(a.size()))
        fft_pow2(a, sign);
    else
        dft_direct(a, sign);
}

// Row-column 2-D transform over a row-major complex buffer.
void transform_2d(std::vector<cplx>& buf, int height, int width, int sign) {
    std::vector<cplx> line(static_cast<size_t>(width));
    for (int h = 0; h < height; ++h) {
        const size_t base = static_cast<size_t>(h) * width;
        for (int w = 0; w < width; ++w) line[w] = buf[base + w];
        transform_axis(line, sign);
        for (int w = 0; w < width; ++w) buf[base + w] = line[w];
    }
    line.assign(static_cast<size_t>(height), cplx(0.0, 0.0));
    for (int w = 0; w < width; ++w) {
        for (int h = 0; h < height; ++h) line[h] = buf[static_cast<size_t>(h) * width + w];
        transform_axis(line, sign);
        for (int h = 0; h < height; ++h) buf[static_cast<size_t>(h) * width + w] = line[h];
    }
}

}  // namespace

Spectrum dft2d(const RealPlane& channel) {
    require(channel.height >= 1 && channel.width >= 1,
            "dft2d: dimensions must be positive");
    require(channel.values.size() ==
                static_cast<size_t>(channel.height) * channel.width,
            "dft2d: value count does not match dimensions");
    for (size_t i = 0; i < channel.values.size(); ++i) {
        if (!std::isfinite(channel.values[i]))
            throw std::invalid_argument(
                "dft2d: non-finite input at flat index " + std::to_string(i));
    }
    Spectrum spec(channel.height, channel.width);
    for (size_t i = 0; i < channel.values.size(); ++i)
        spec.values[i] = cplx(channel.values[i], 0.0);
    transform_2d(spec.values, spec.height, spec.width, -1);
    return spec;
}

IdftResult idft2d(const Spectrum& spectrum) {
    require(spectrum.height >= 1 && spectrum.width >= 1,
            "idft2d: dimensions must be positive");
    require(spectrum.values.size() ==
                static_cast<size_t>(spectrum.height) * spectrum.width,
            "idft2d: value count does not match dimensions");
    std::vector<cplx> buf = spectrum.values;
    transform_2d(buf, spectrum.height, spectrum.width, +1);
    const double scale = 1.0 / (static_cast<double>(spectrum.height) * spectrum.width);
    IdftResult result;
    result.plane = RealPlane(spectrum.height, spectrum.width);
    for (size_t i = 0; i < buf.size(); ++i) {
        result.plane.values[i] = buf[i].real() * scale;
        const double residue = std::abs(buf[i].imag()) * scale;
        if (residue > result.max_imag_residue) result.max_imag_residue = residue;
    }
    return result;
}

RealPlane amplitude(const Spectrum& spectrum) {
    RealPlane amp(spectrum.height, spectrum.width);
    for (size_t i = 0; i < spectrum.values.size(); ++i)
        amp.values[i] = std::abs(spectrum.values[i]);
    return amp;
}

RealPlane phase(const Spectrum& spectrum) {
    RealPlane ph(spectrum.height, spectrum.width);
    for (size_t i = 0; i < spectrum.values.size(); ++i) {
        const cplx& z = spectrum.values[i];
        // +0.0 imaginary keeps the result in (-pi, pi] and makes the phase of
        // an exactly zero value come out as 0
        const double im = z.imag() == 0.0 ? +0.0 : z.imag();
        ph.values[i] = std::atan2(im, z.real());
    }
    return ph;
}

Spectrum from_polar(const RealPlane& amp, const RealPlane& ph) {
    require(amp.height == ph.height && amp.width == ph.width,
            "from_polar: amplitude/phase shape mismatch");
    Spectrum spec(amp.height, amp.width);
    for (size_t i = 0; i < spec.values.size(); ++i)
        spec.values[i] = std::polar(amp.values[i], ph.values[i]);
    return spec;
}

std::vector<uint8_t> low_freq_mask(int height, int width, double beta) {
    require(height >= 1 && width >= 1, "low_freq_mask: dimensions must be positive");
    require(beta > 0.0 && beta < 1.0, "low_freq_mask: beta must lie strictly in (0,1)");
    const int bh = static_cast<int>(std::floor(beta * height));
    const int bw = static_cast<int>(std::floor(beta * width));
    std::vector<uint8_t> mask(static_cast<size_t>(height) * width, 0);
    for (int h = 0; h < height; ++h) {
        const bool row_in = std::min(h, height - h) <= bh;
        if (!row_in) continue;
        for (int w = 0; w < width; ++w) {
            if (std::min(w, width - w) <= bw)
                mask[static_cast<size_t>(h) * width + w] = 1;
        }
    }
    return mask;
}

Image fda_transfer(const Image& source, const Image& target, double beta) {
    source.validate();
    target.validate();
    require(source.same_shape(target),
            "fda_transfer: source and target shapes must match");
    require(beta > 0.0 && beta < 1.0, "fda_transfer: beta must lie strictly in (0,1)");

    const auto mask = low_freq_mask(source.height, source.width, beta);
    Image out(source.height, source.width, source.channels);

    for (int c = 0; c < source.channels; ++c) {
        RealPlane src_plane(source.height, source.width);
        RealPlane tgt_plane(source.height, source.width);
        src_plane.values = source.channel(c);
        tgt_plane.values = target.channel(c);

        const Spectrum src_spec = dft2d(src_plane);
        const Spectrum tgt_spec = dft2d(tgt_plane);

        // Mixed amplitude, source phase. The phase is carried by the source
        // bin's unit vector; an all-zero source bin has phase 0 by convention.
        Spectrum combined(source.height, source.width);
        for (size_t i = 0; i < combined.values.size(); ++i) {
            const cplx s = src_spec.values[i];
            const double amp_s = std::abs(s);
            const double amp_new =
                mask[i] ? std::abs(tgt_spec.values[i]) : amp_s;
            combined.values[i] =
                amp_s > 0.0 ? s * (amp_new / amp_s) : cplx(amp_new, 0.0);
        }

        IdftResult inv = idft2d(combined);
        if (inv.max_imag_residue > 1e-6) {
            warn("fda_transfer: imaginary residue " +
                 std::to_string(inv.max_imag_residue) + " on channel " +
                 std::to_string(c));
        }
        out.set_channel(c, inv.plane.values);
    }
    return out;
}

}  // namespace specadapt
