#pragma once

#include <string>

#include "specadapt/dataset.hpp"
#include "specadapt/margin.hpp"

namespace specadapt {

/// Binary feature container, little-endian:
///   magic "FEAT" | version u32 | N u64 | D u64 | has_labels u8
///   | features N*D f32 row-major | labels N*i32 (iff has_labels)
///   | domain_tags N*u8
/// Trailing bytes after the declared payload are an error.
FeatureSet read_feature_file(const std::string& path);
void write_feature_file(const FeatureSet& set, const std::string& path);

/// Model head container, little-endian:
///   magic "SDMH" | version u32 | K u32 | D u32
///   | weights K*D f64 row-major | bias K f64
LinearHead read_head_file(const std::string& path);
void write_head_file(const LinearHead& head, const std::string& path);

}  // namespace specadapt
