#include "specadapt/feature_file.hpp"

#include <cstring>
#include <fstream>
#include <limits>

namespace specadapt {

namespace {

constexpr uint32_t kFeatureVersion = 1;
constexpr uint32_t kHeadVersion = 1;

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_)
            throw IoError(IoError::Code::open_failed, "cannot create " + path);
    }

    void bytes(const void* data, size_t n) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    }
    void u8(uint8_t v) { bytes(&v, 1); }
    void u32(uint32_t v) {
        uint8_t b[4];
        for (int i = 0; i < 4; ++i) b[i] = static_cast<uint8_t>(v >> (8 * i));
        bytes(b, 4);
    }
    void u64(uint64_t v) {
        uint8_t b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(v >> (8 * i));
        bytes(b, 8);
    }
    void f32(float v) {
        uint32_t bits;
        std::memcpy(&bits, &v, 4);
        u32(bits);
    }
    void f64(double v) {
        uint64_t bits;
        std::memcpy(&bits, &v, 8);
        u64(bits);
    }

private:
    std::ofstream out_;
};

class Reader {
public:
    Reader(const std::string& path) : in_(path, std::ios::binary), path_(path) {
        if (!in_)
            throw IoError(IoError::Code::open_failed, "cannot open " + path);
    }

    void bytes(void* data, size_t n) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in_.gcount()) != n)
            throw IoError(IoError::Code::truncated, path_ + ": unexpected end of file");
    }
    uint8_t u8() {
        uint8_t v;
        bytes(&v, 1);
        return v;
    }
    uint32_t u32() {
        uint8_t b[4];
        bytes(b, 4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
        return v;
    }
    uint64_t u64() {
        uint8_t b[8];
        bytes(b, 8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
        return v;
    }
    float f32() {
        const uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    double f64() {
        const uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
    void expect_magic(const char expected[4]) {
        char magic[4];
        bytes(magic, 4);
        if (std::memcmp(magic, expected, 4) != 0)
            throw IoError(IoError::Code::bad_magic,
                          path_ + ": bad magic, expected " +
                              std::string(expected, 4));
    }
    void expect_eof() {
        in_.peek();
        if (!in_.eof())
            throw IoError(IoError::Code::bad_value,
                          path_ + ": trailing bytes after declared payload");
    }

private:
    std::ifstream in_;
    std::string path_;
};

}  // namespace

FeatureSet read_feature_file(const std::string& path) {
    Reader r(path);
    r.expect_magic("FEAT");
    const uint32_t version = r.u32();
    if (version != kFeatureVersion)
        throw IoError(IoError::Code::bad_header,
                      path + ": unsupported feature file version " +
                          std::to_string(version));
    const uint64_t n = r.u64();
    const uint64_t d = r.u64();
    const uint8_t has_labels = r.u8();
    if (has_labels > 1)
        throw IoError(IoError::Code::bad_value, path + ": has_labels flag not 0/1");
    if (d > 0 && n > std::numeric_limits<size_t>::max() / 8 / d)
        throw IoError(IoError::Code::overflow, path + ": N*D overflows");

    FeatureSet set;
    set.num_samples = static_cast<size_t>(n);
    set.feature_dim = static_cast<size_t>(d);
    set.features.resize(set.num_samples * set.feature_dim);
    for (auto& v : set.features) v = static_cast<double>(r.f32());
    if (has_labels) {
        set.labels.resize(set.num_samples);
        for (auto& v : set.labels) v = static_cast<int32_t>(r.u32());
    }
    set.domain_tags.resize(set.num_samples);
    for (auto& v : set.domain_tags) v = r.u8();
    r.expect_eof();
    set.validate();
    return set;
}

void write_feature_file(const FeatureSet& set, const std::string& path) {
    set.validate();
    Writer w(path);
    w.bytes("FEAT", 4);
    w.u32(kFeatureVersion);
    w.u64(set.num_samples);
    w.u64(set.feature_dim);
    w.u8(set.has_labels() ? 1 : 0);
    for (double v : set.features) w.f32(static_cast<float>(v));
    if (set.has_labels())
        for (int32_t v : set.labels) w.u32(static_cast<uint32_t>(v));
    if (set.domain_tags.empty()) {
        for (size_t i = 0; i < set.num_samples; ++i) w.u8(0);
    } else {
        for (uint8_t v : set.domain_tags) w.u8(v);
    }
}

LinearHead read_head_file(const std::string& path) {
    Reader r(path);
    r.expect_magic("SDMH");
    const uint32_t version = r.u32();
    if (version != kHeadVersion)
        throw IoError(IoError::Code::bad_header,
                      path + ": unsupported head file version " +
                          std::to_string(version));
    const uint32_t k = r.u32();
    const uint32_t d = r.u32();
    if (k < 2 || d < 1)
        throw IoError(IoError::Code::bad_value, path + ": invalid head dimensions");
    if (static_cast<uint64_t>(k) * d >
        std::numeric_limits<size_t>::max() / 8)
        throw IoError(IoError::Code::overflow, path + ": K*D overflows");
    LinearHead head(static_cast<int>(k), static_cast<int>(d));
    for (auto& v : head.weights) v = r.f64();
    for (auto& v : head.bias) v = r.f64();
    r.expect_eof();
    return head;
}

void write_head_file(const LinearHead& head, const std::string& path) {
    require(head.num_classes >= 2 && head.feature_dim >= 1,
            "write_head_file: invalid head");
    Writer w(path);
    w.bytes("SDMH", 4);
    w.u32(kHeadVersion);
    w.u32(static_cast<uint32_t>(head.num_classes));
    w.u32(static_cast<uint32_t>(head.feature_dim));
    for (double v : head.weights) w.f64(v);
    for (double v : head.bias) w.f64(v);
}

}  // namespace specadapt
