#pragma once

#include <cstdint>
#include <vector>

#include "specadapt/common.hpp"

namespace specadapt {

/// H x W x C raster with row-major interleaved channels, values nominally in
/// [0,1] but not clamped by the library (file writers clamp on export).
struct Image {
    int height = 0;
    int width = 0;
    int channels = 1;  // 1 (grayscale) or 3 (RGB)
    std::vector<double> data;

    Image() = default;
    Image(int h, int w, int c)
        : height(h), width(w), channels(c),
          data(static_cast<size_t>(h) * w * c, 0.0) {
        validate_shape();
    }

    double& at(int y, int x, int c) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    double at(int y, int x, int c) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }

    size_t pixel_count() const { return static_cast<size_t>(height) * width; }

    bool same_shape(const Image& other) const {
        return height == other.height && width == other.width &&
               channels == other.channels;
    }

    void validate_shape() const {
        require(height > 0 && width > 0, "Image: dimensions must be positive");
        require(channels == 1 || channels == 3, "Image: channels must be 1 or 3");
    }

    void validate() const {
        validate_shape();
        require(data.size() == pixel_count() * channels,
                "Image: data length does not match height*width*channels");
        require(all_finite(data), "Image: data contains non-finite values");
    }

    /// One channel as a standalone H*W plane.
    std::vector<double> channel(int c) const {
        std::vector<double> plane(pixel_count());
        for (size_t p = 0; p < plane.size(); ++p) plane[p] = data[p * channels + c];
        return plane;
    }

    void set_channel(int c, std::span<const double> plane) {
        for (size_t p = 0; p < plane.size(); ++p) data[p * channels + c] = plane[p];
    }
};

struct ImageSet {
    std::vector<Image> images;
    std::vector<int32_t> labels;  // empty when unlabeled

    size_t size() const { return images.size(); }
};

}  // namespace specadapt
