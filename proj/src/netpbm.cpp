#include "specadapt/netpbm.hpp"

#include <cmath>
#include <fstream>

namespace specadapt {

namespace {

// Reads the next header token, skipping whitespace and '#' comment lines.
std::string next_token(std::istream& in) {
    std::string token;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            // keep skipping
        } else {
            break;
        }
        c = in.get();
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    return token;
}

int parse_positive_int(const std::string& token, const char* what) {
    if (token.empty())
        throw IoError(IoError::Code::truncated,
                      std::string("netpbm: missing ") + what);
    for (char ch : token) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw IoError(IoError::Code::bad_header,
                          std::string("netpbm: malformed ") + what + " '" + token + "'");
    }
    const long v = std::stol(token);
    if (v <= 0 || v > 1 << 20)
        throw IoError(IoError::Code::bad_header,
                      std::string("netpbm: ") + what + " out of range");
    return static_cast<int>(v);
}

Image read_binary(const std::string& path, const std::string& expected_magic,
                  int channels) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(IoError::Code::open_failed, "netpbm: cannot open " + path);

    const std::string magic = next_token(in);
    if (magic != expected_magic)
        throw IoError(IoError::Code::bad_magic,
                      "netpbm: expected " + expected_magic + " in " + path +
                          ", found '" + magic + "'");
    const int width = parse_positive_int(next_token(in), "width");
    const int height = parse_positive_int(next_token(in), "height");
    const std::string maxval = next_token(in);
    if (maxval != "255")
        throw IoError(IoError::Code::bad_header,
                      "netpbm: only maxval 255 is supported, found '" + maxval + "'");
    // exactly one whitespace byte separates the header from the payload; it
    // was already consumed by the token reader

    Image image(height, width, channels);
    const size_t payload = image.pixel_count() * channels;
    std::vector<unsigned char> raw(payload);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(payload));
    if (static_cast<size_t>(in.gcount()) != payload)
        throw IoError(IoError::Code::truncated,
                      "netpbm: pixel payload shorter than header promises in " + path);
    for (size_t i = 0; i < payload; ++i)
        image.data[i] = static_cast<double>(raw[i]) / 255.0;
    return image;
}

void write_binary(const Image& image, const std::string& path,
                  const std::string& magic, int channels) {
    image.validate();
    require(image.channels == channels,
            "netpbm: channel count does not match format");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError(IoError::Code::open_failed, "netpbm: cannot create " + path);
    out << magic << "\n" << image.width << " " << image.height << "\n255\n";
    std::vector<unsigned char> raw(image.data.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        const double clamped = std::min(1.0, std::max(0.0, image.data[i]));
        raw[i] = static_cast<unsigned char>(std::floor(clamped * 255.0 + 0.5));
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
}

}  // namespace

Image read_pgm(const std::string& path) { return read_binary(path, "P5", 1); }

Image read_ppm(const std::string& path) { return read_binary(path, "P6", 3); }

Image read_netpbm(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe)
        throw IoError(IoError::Code::open_failed, "netpbm: cannot open " + path);
    const std::string magic = next_token(probe);
    probe.close();
    if (magic == "P5") return read_pgm(path);
    if (magic == "P6") return read_ppm(path);
    throw IoError(IoError::Code::bad_magic,
                  "netpbm: unsupported format token '" + magic + "' in " + path);
}

void write_pgm(const Image& image, const std::string& path) {
    write_binary(image, path, "P5", 1);
}

void write_ppm(const Image& image, const std::string& path) {
    write_binary(image, path, "P6", 3);
}

void write_netpbm(const Image& image, const std::string& path) {
    if (image.channels == 1)
        write_pgm(image, path);
    else
        write_ppm(image, path);
}

}  // namespace specadapt
