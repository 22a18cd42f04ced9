#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "texbench/error.hpp"

namespace texbench {

// 8-bit grayscale raster, row-major, top row first.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // size == width * height

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t operator()(int row, int col) const {
        return pixels[std::size_t(row) * width + col];
    }
    std::uint8_t& operator()(int row, int col) {
        return pixels[std::size_t(row) * width + col];
    }

    std::size_t size() const { return pixels.size(); }

    bool operator==(const GrayImage&) const = default;

    // Intensities as reals in [0, 255]; entry (r, c) is the pixel at row r.
    Eigen::MatrixXd to_matrix() const;
};

// Binary PGM (P5, maxval 255) in and out. load_pgm accepts any amount of
// header whitespace and '#' comments; save_pgm emits the canonical header
// "P5\n<w> <h>\n255\n" so that load_pgm(save_pgm(x)) == x byte for byte.
GrayImage load_pgm(std::string_view bytes);
std::string save_pgm(const GrayImage& img);

GrayImage read_pgm_file(const std::string& path);
void write_pgm_file(const std::string& path, const GrayImage& img);

// Synthetic texture descriptors, written "family:param[:param]" on the CLI:
//   checkerboard:<period>  grating:<freq>:<orientation_deg>
//   noise:<stream>         constant:<value>
struct TextureKind {
    enum class Family { Checkerboard, Grating, Noise, Constant };

    Family family = Family::Constant;
    int period = 1;                // checkerboard block side, >= 1
    double frequency = 0.0;        // grating cycles across the image
    double orientation_deg = 0.0;  // grating direction
    std::uint64_t stream = 0;      // noise substream id
    int value = 0;                 // constant intensity, 0..255

    std::string str() const;
    static TextureKind parse(std::string_view text);  // throws BadKind
};

struct CorpusSpec {
    std::vector<TextureKind> kinds;
    int size = 256;          // side length, power of two >= 8
    std::uint64_t seed = 7;
};

// Deterministic texture for (kind, size, seed); size must be a power of two
// >= 8 so three halvings stay integral. noise pixels come from
// SplitMix64(seed + stream) % 256 in row-major order.
GrayImage synth_texture(const TextureKind& kind, int size, std::uint64_t seed);

// One labeled image per kind, labels being the canonical descriptor strings.
std::vector<std::pair<std::string, GrayImage>> synth_corpus(const CorpusSpec& spec);

}  // namespace texbench
