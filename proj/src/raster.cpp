#include "texbench/raster.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "texbench/rng.hpp"

namespace texbench {

GrayImage::GrayImage(int w, int h, std::uint8_t fill) : width(w), height(h) {
    if (w < 1 || h < 1)
        fail("MalformedHeader", "image dimensions must be positive, got " + std::to_string(w) +
                                    "x" + std::to_string(h));
    pixels.assign(std::size_t(w) * h, fill);
}

Eigen::MatrixXd GrayImage::to_matrix() const {
    using ByteMatrix =
        Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return Eigen::Map<const ByteMatrix>(pixels.data(), height, width).cast<double>();
}

namespace {

// Header tokens are separated by whitespace; '#' starts a comment running to
// end of line.
struct HeaderCursor {
    std::string_view bytes;
    std::size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            const char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    // Non-negative decimal integer token.
    long next_int(const char* what) {
        skip_space_and_comments();
        std::size_t start = pos;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) ++pos;
        if (pos == start)
            fail("MalformedHeader", std::string("expected a number for ") + what);
        long value = 0;
        for (std::size_t i = start; i < pos; ++i) {
            value = value * 10 + (bytes[i] - '0');
            if (value > 1'000'000'000L)
                fail("MalformedHeader", std::string(what) + " out of range");
        }
        return value;
    }
};

}  // namespace

GrayImage load_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        fail("BadMagic", "not a binary PGM (magic must be \"P5\")");
    if (bytes.size() < 3 ||
        (bytes[2] != '#' && !std::isspace(static_cast<unsigned char>(bytes[2]))))
        fail("MalformedHeader", "magic must be followed by whitespace");

    HeaderCursor cur{bytes, 2};
    const long width = cur.next_int("width");
    const long height = cur.next_int("height");
    const long maxval = cur.next_int("maxval");
    if (width < 1 || height < 1)
        fail("MalformedHeader", "non-positive dimensions " + std::to_string(width) + "x" +
                                    std::to_string(height));
    if (maxval != 255)
        fail("UnsupportedMaxval", "maxval must be 255, got " + std::to_string(maxval));

    // Exactly one whitespace byte separates the header from the payload.
    if (cur.pos >= bytes.size() ||
        !std::isspace(static_cast<unsigned char>(bytes[cur.pos])))
        fail("MalformedHeader", "missing whitespace after maxval");
    ++cur.pos;

    const std::size_t need = std::size_t(width) * std::size_t(height);
    if (bytes.size() - cur.pos < need)
        fail("Truncated", "payload has " + std::to_string(bytes.size() - cur.pos) +
                              " bytes, needs " + std::to_string(need));

    GrayImage img{int(width), int(height)};
    const auto* src = reinterpret_cast<const std::uint8_t*>(bytes.data() + cur.pos);
    img.pixels.assign(src, src + need);
    return img;
}

std::string save_pgm(const GrayImage& img) {
    if (img.width < 1 || img.height < 1 || img.pixels.size() != std::size_t(img.width) * img.height)
        fail("MalformedHeader", "invalid image");
    std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                      "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

GrayImage read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IoError", "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_pgm(buf.str());
}

void write_pgm_file(const std::string& path, const GrayImage& img) {
    const std::string bytes = save_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail("IoError", "cannot open '" + path + "' for writing");
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) fail("IoError", "short write to '" + path + "'");
}

namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::string TextureKind::str() const {
    switch (family) {
        case Family::Checkerboard: return "checkerboard:" + std::to_string(period);
        case Family::Grating:
            return "grating:" + format_number(frequency) + ":" + format_number(orientation_deg);
        case Family::Noise: return "noise:" + std::to_string(stream);
        case Family::Constant: return "constant:" + std::to_string(value);
    }
    fail("BadKind", "corrupt texture kind");
}

TextureKind TextureKind::parse(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t colon = text.find(':', start);
        parts.emplace_back(text.substr(start, colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }

    auto want = [&](std::size_t n) {
        if (parts.size() != n + 1)
            fail("BadKind", "'" + std::string(text) + "': expected " + std::to_string(n) +
                                " parameter(s) for " + parts[0]);
    };
    auto num = [&](const std::string& s) -> double {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            fail("BadKind", "'" + s + "' is not a number");
        }
        if (used != s.size()) fail("BadKind", "'" + s + "' is not a number");
        return v;
    };

    TextureKind kind;
    if (parts[0] == "checkerboard") {
        want(1);
        kind.family = Family::Checkerboard;
        const double p = num(parts[1]);
        if (p < 1 || p != std::floor(p)) fail("BadKind", "checkerboard period must be an integer >= 1");
        kind.period = int(p);
    } else if (parts[0] == "grating") {
        want(2);
        kind.family = Family::Grating;
        kind.frequency = num(parts[1]);
        kind.orientation_deg = num(parts[2]);
        if (kind.frequency <= 0) fail("BadKind", "grating frequency must be positive");
    } else if (parts[0] == "noise") {
        want(1);
        kind.family = Family::Noise;
        const double s = num(parts[1]);
        if (s < 0 || s != std::floor(s)) fail("BadKind", "noise stream must be a non-negative integer");
        kind.stream = std::uint64_t(s);
    } else if (parts[0] == "constant") {
        want(1);
        kind.family = Family::Constant;
        const double v = num(parts[1]);
        if (v < 0 || v > 255 || v != std::floor(v))
            fail("BadKind", "constant value must be an integer in [0, 255]");
        kind.value = int(v);
    } else {
        fail("BadKind", "unknown texture family '" + parts[0] + "'");
    }
    return kind;
}

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

constexpr double kPi = 3.14159265358979323846;

}  // namespace

GrayImage synth_texture(const TextureKind& kind, int size, std::uint64_t seed) {
    if (size < 8 || !power_of_two(size))
        fail("BadSize", "corpus size must be a power of two >= 8, got " + std::to_string(size));

    GrayImage img(size, size);
    switch (kind.family) {
        case TextureKind::Family::Constant:
            for (auto& p : img.pixels) p = std::uint8_t(kind.value);
            break;
        case TextureKind::Family::Checkerboard:
            for (int r = 0; r < size; ++r)
                for (int c = 0; c < size; ++c)
                    img(r, c) = ((r / kind.period + c / kind.period) % 2 == 0) ? 255 : 0;
            break;
        case TextureKind::Family::Grating: {
            const double theta = kind.orientation_deg * kPi / 180.0;
            const double ct = std::cos(theta), st = std::sin(theta);
            for (int r = 0; r < size; ++r)
                for (int c = 0; c < size; ++c) {
                    const double phase = 2.0 * kPi * kind.frequency * (c * ct + r * st) / size;
                    img(r, c) = std::uint8_t(std::llround(127.5 * (1.0 + std::sin(phase))));
                }
            break;
        }
        case TextureKind::Family::Noise: {
            SplitMix64 rng(seed + kind.stream);
            for (auto& p : img.pixels) p = std::uint8_t(rng.next() % 256);
            break;
        }
    }
    return img;
}

std::vector<std::pair<std::string, GrayImage>> synth_corpus(const CorpusSpec& spec) {
    std::vector<std::pair<std::string, GrayImage>> out;
    out.reserve(spec.kinds.size());
    for (const TextureKind& kind : spec.kinds)
        out.emplace_back(kind.str(), synth_texture(kind, spec.size, spec.seed));
    return out;
}

}  // namespace texbench
