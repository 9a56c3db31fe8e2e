#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "specadapt/rng.hpp"
#include "specadapt/spectral.hpp"

using namespace specadapt;

namespace {

RealPlane random_plane(int h, int w, SeededRng& rng) {
    RealPlane plane(h, w);
    for (auto& v : plane.values) v = rng.uniform();
    return plane;
}

Image random_image(int h, int w, int c, SeededRng& rng) {
    Image img(h, w, c);
    for (auto& v : img.data) v = rng.uniform();
    return img;
}

size_t popcount(const std::vector<uint8_t>& mask) {
    return static_cast<size_t>(std::count(mask.begin(), mask.end(), 1));
}

}  // namespace

TEST_CASE("dft2d of a unit impulse is flat") {
    RealPlane delta(4, 6);
    delta.at(0, 0) = 1.0;
    const Spectrum spec = dft2d(delta);
    for (const auto& z : spec.values) {
        CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(z.imag()) < 1e-12);
    }
}

TEST_CASE("dft2d of a constant image concentrates at DC") {
    const double c = 0.37;
    RealPlane plane(8, 8);
    for (auto& v : plane.values) v = c;
    const Spectrum spec = dft2d(plane);
    CHECK(spec.at(0, 0).real() == doctest::Approx(64.0 * c).epsilon(1e-12));
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v)
            if (u != 0 || v != 0) CHECK(std::abs(spec.at(u, v)) < 1e-10);
}

TEST_CASE("dft2d matches the direct-summation oracle on an 8x8 input") {
    SeededRng rng(7, "test");
    const RealPlane plane = random_plane(8, 8, rng);
    const Spectrum fast = dft2d(plane);
    const Spectrum direct = oracles::naive_dft2d(plane);
    double max_rel = 0.0;
    double scale = 0.0;
    for (const auto& z : direct.values) scale = std::max(scale, std::abs(z));
    for (size_t i = 0; i < fast.values.size(); ++i)
        max_rel = std::max(max_rel,
                           std::abs(fast.values[i] - direct.values[i]) / scale);
    CHECK(max_rel < 1e-10);
}

TEST_CASE("dft2d matches the oracle on awkward non-power-of-two sizes") {
    SeededRng rng(11, "test");
    const std::pair<int, int> sizes[] = {{3, 5}, {7, 4}, {12, 9}, {31, 2}, {1, 17}};
    for (auto [h, w] : sizes) {
        CAPTURE(h);
        CAPTURE(w);
        const RealPlane plane = random_plane(h, w, rng);
        const Spectrum fast = dft2d(plane);
        const Spectrum direct = oracles::naive_dft2d(plane);
        double scale = 0.0;
        for (const auto& z : direct.values) scale = std::max(scale, std::abs(z));
        for (size_t i = 0; i < fast.values.size(); ++i)
            CHECK(std::abs(fast.values[i] - direct.values[i]) / scale < 1e-8);
    }
}

TEST_CASE("dft2d rejects non-finite input with a diagnostic") {
    RealPlane plane(2, 2);
    plane.at(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(dft2d(plane), std::invalid_argument);
}

TEST_CASE("idft2d inverts dft2d at 64x64 within 1e-9") {
    SeededRng rng(13, "test");
    const RealPlane plane = random_plane(64, 64, rng);
    const IdftResult back = idft2d(dft2d(plane));
    double max_err = 0.0;
    for (size_t i = 0; i < plane.values.size(); ++i)
        max_err = std::max(max_err,
                           std::abs(back.plane.values[i] - plane.values[i]));
    CHECK(max_err < 1e-9);
    CHECK(back.max_imag_residue < 1e-9);
}

TEST_CASE("idft2d of an all-ones spectrum is a unit impulse") {
    Spectrum spec(6, 4);
    for (auto& z : spec.values) z = {1.0, 0.0};
    const IdftResult result = idft2d(spec);
    CHECK(result.plane.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int h = 0; h < 6; ++h)
        for (int w = 0; w < 4; ++w)
            if (h != 0 || w != 0) CHECK(std::abs(result.plane.at(h, w)) < 1e-12);
}

TEST_CASE("Parseval identity holds to 1e-10 relative") {
    SeededRng rng(17, "test");
    const RealPlane plane = random_plane(16, 12, rng);
    const Spectrum spec = dft2d(plane);
    double space_energy = 0.0;
    for (double v : plane.values) space_energy += v * v;
    double freq_energy = 0.0;
    for (const auto& z : spec.values) freq_energy += std::norm(z);
    freq_energy /= 16.0 * 12.0;
    CHECK(oracles::rel_error(freq_energy, space_energy) < 1e-10);
}

TEST_CASE("dft2d is linear") {
    SeededRng rng(19, "test");
    const RealPlane x = random_plane(10, 14, rng);
    const RealPlane y = random_plane(10, 14, rng);
    const double a = 2.5, b = -0.75;
    RealPlane combo(10, 14);
    for (size_t i = 0; i < combo.values.size(); ++i)
        combo.values[i] = a * x.values[i] + b * y.values[i];
    const Spectrum fx = dft2d(x);
    const Spectrum fy = dft2d(y);
    const Spectrum fc = dft2d(combo);
    double scale = 0.0;
    for (const auto& z : fc.values) scale = std::max(scale, std::abs(z));
    for (size_t i = 0; i < fc.values.size(); ++i) {
        const auto expected = a * fx.values[i] + b * fy.values[i];
        CHECK(std::abs(fc.values[i] - expected) / scale < 1e-10);
    }
}

TEST_CASE("amplitude and phase split a 3+4j bin as 5 and atan2(4,3)") {
    Spectrum spec(1, 2);
    spec.at(0, 0) = {3.0, 4.0};
    spec.at(0, 1) = {0.0, 0.0};
    const RealPlane amp = amplitude(spec);
    const RealPlane ph = phase(spec);
    CHECK(amp.at(0, 0) == doctest::Approx(5.0));
    CHECK(ph.at(0, 0) == doctest::Approx(std::atan2(4.0, 3.0)));
    CHECK(amp.at(0, 1) == 0.0);
    CHECK(ph.at(0, 1) == 0.0);  // phase of zero is 0 by convention
}

TEST_CASE("from_polar reconstructs the spectrum elementwise") {
    SeededRng rng(23, "test");
    const Spectrum spec = dft2d(random_plane(9, 5, rng));
    const Spectrum rebuilt = from_polar(amplitude(spec), phase(spec));
    double scale = 0.0;
    for (const auto& z : spec.values) scale = std::max(scale, std::abs(z));
    for (size_t i = 0; i < spec.values.size(); ++i)
        CHECK(std::abs(rebuilt.values[i] - spec.values[i]) / scale < 1e-12);
}

TEST_CASE("amplitude of a constant image's DC bin is H*W*c") {
    RealPlane plane(6, 7);
    for (auto& v : plane.values) v = 0.21;
    const RealPlane amp = amplitude(dft2d(plane));
    CHECK(amp.at(0, 0) == doctest::Approx(42.0 * 0.21).epsilon(1e-12));
}

TEST_CASE("low_freq_mask selects a 15-wide wrap-around band at 224, beta 0.033") {
    const auto mask = low_freq_mask(224, 224, 0.033);
    // b = floor(0.033 * 224) = 7: rows 0..7 and 217..223
    std::vector<int> rows;
    for (int h = 0; h < 224; ++h)
        if (mask[static_cast<size_t>(h) * 224]) rows.push_back(h);
    CHECK(rows.size() == 15);
    CHECK(rows.front() == 0);
    CHECK(rows[7] == 7);
    CHECK(rows[8] == 217);
    CHECK(rows.back() == 223);
    CHECK(popcount(mask) == 15 * 15);
}

TEST_CASE("low_freq_mask popcount is 81 at 16x16, beta 0.25") {
    CHECK(popcount(low_freq_mask(16, 16, 0.25)) == 81);
}

TEST_CASE("low_freq_mask degenerates to the DC bin when floor(beta*N) is 0") {
    const auto mask = low_freq_mask(8, 8, 0.05);
    CHECK(popcount(mask) == 1);
    CHECK(mask[0] == 1);
}

TEST_CASE("low_freq_mask rejects beta outside (0,1)") {
    CHECK_THROWS_AS(low_freq_mask(8, 8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(low_freq_mask(8, 8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(low_freq_mask(8, 8, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(low_freq_mask(8, 8, 1.7), std::invalid_argument);
}

TEST_CASE("mask and its complement tile the plane exactly") {
    const auto mask = low_freq_mask(12, 20, 0.13);
    for (uint8_t m : mask) CHECK((m == 0 || m == 1));
}

TEST_CASE("mask popcount grows monotonically with beta") {
    size_t prev = 0;
    for (double beta : {0.01, 0.05, 0.1, 0.2, 0.33, 0.5, 0.9}) {
        const size_t count = popcount(low_freq_mask(32, 32, beta));
        CHECK(count >= prev);
        prev = count;
    }
}

TEST_CASE("fda_transfer with itself is the identity") {
    SeededRng rng(29, "test");
    for (double beta : {0.01, 0.033, 0.25, 0.5}) {
        CAPTURE(beta);
        const Image img = random_image(16, 16, 3, rng);
        const Image out = fda_transfer(img, img, beta);
        double max_err = 0.0;
        for (size_t i = 0; i < img.data.size(); ++i)
            max_err = std::max(max_err, std::abs(out.data[i] - img.data[i]));
        CHECK(max_err < 1e-9);
    }
}

TEST_CASE("fda_transfer of constant images adopts the target level") {
    Image source(8, 8, 1);
    Image target(8, 8, 1);
    for (auto& v : source.data) v = 0.25;
    for (auto& v : target.data) v = 0.75;
    const Image out = fda_transfer(source, target, 0.1);
    for (double v : out.data) CHECK(std::abs(v - 0.75) < 1e-6);
}

TEST_CASE("fda_transfer preserves the source phase at live bins") {
    SeededRng rng(31, "test");
    const Image source = random_image(16, 16, 1, rng);
    const Image target = random_image(16, 16, 1, rng);
    const Image out = fda_transfer(source, target, 0.1);

    RealPlane src_plane(16, 16), out_plane(16, 16);
    src_plane.values = source.channel(0);
    out_plane.values = out.channel(0);
    const Spectrum src_spec = dft2d(src_plane);
    const Spectrum out_spec = dft2d(out_plane);
    const RealPlane src_phase = phase(src_spec);
    const RealPlane out_phase = phase(out_spec);
    const RealPlane out_amp = amplitude(out_spec);
    for (size_t i = 0; i < out_amp.values.size(); ++i) {
        if (out_amp.values[i] <= 1e-8) continue;
        CHECK(std::abs(oracles::phase_diff(out_phase.values[i],
                                           src_phase.values[i])) < 1e-6);
    }
}

TEST_CASE("fda_transfer rejects mismatched shapes and bad beta") {
    SeededRng rng(37, "test");
    const Image a = random_image(8, 8, 1, rng);
    const Image b = random_image(8, 16, 1, rng);
    const Image c = random_image(8, 8, 3, rng);
    CHECK_THROWS_AS(fda_transfer(a, b, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(fda_transfer(a, c, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(fda_transfer(a, a, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fda_transfer(a, a, 1.0), std::invalid_argument);
}

TEST_CASE("round-trip property on assorted sizes") {
    SeededRng rng(41, "test");
    const std::pair<int, int> sizes[] = {{2, 2}, {5, 9}, {16, 16}, {24, 18}, {32, 32}};
    for (auto [h, w] : sizes) {
        CAPTURE(h);
        CAPTURE(w);
        const RealPlane plane = random_plane(h, w, rng);
        const IdftResult back = idft2d(dft2d(plane));
        for (size_t i = 0; i < plane.values.size(); ++i)
            CHECK(std::abs(back.plane.values[i] - plane.values[i]) < 1e-9);
    }
}
