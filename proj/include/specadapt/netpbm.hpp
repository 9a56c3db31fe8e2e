#pragma once

#include <string>

#include "specadapt/image.hpp"

namespace specadapt {

/// Binary PGM (P5, maxval 255). Pixels map to [0,1] via v/255.
Image read_pgm(const std::string& path);

/// Binary PPM (P6, maxval 255), three channels.
Image read_ppm(const std::string& path);

/// Dispatches on the magic token (P5 or P6).
Image read_netpbm(const std::string& path);

/// Writers clamp to [0,1] and round half-up to 8 bits.
void write_pgm(const Image& image, const std::string& path);
void write_ppm(const Image& image, const std::string& path);

/// Picks P5 or P6 from the channel count.
void write_netpbm(const Image& image, const std::string& path);

}  // namespace specadapt
