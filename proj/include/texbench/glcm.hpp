#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "texbench/features.hpp"
#include "texbench/raster.hpp"

namespace texbench {

// Gray levels reduced to 1-based bin indices by uniform binning of [0, 255]:
// bin = min(levels, floor(v * levels / 256) + 1).
struct IndexedImage {
    int width = 0;
    int height = 0;
    int levels = 0;
    std::vector<int> bins;  // row-major, values in [1, levels]

    int operator()(int row, int col) const { return bins[std::size_t(row) * width + col]; }
};

IndexedImage quantize(const GrayImage& img, int levels = 8);

struct Offset {
    int drow = 0;
    int dcol = 0;
};

// Pair-count matrix for one offset. counts(i-1, j-1) is the number of
// in-bounds positions holding bin i whose offset neighbor holds bin j; the
// symmetric variant also accumulates the reversed offset.
struct Glcm {
    int levels = 0;
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
    Offset offset;
    bool symmetric = false;

    std::int64_t total() const { return counts.sum(); }
};

Glcm compute_glcm(const IndexedImage& idx, Offset offset, bool symmetric);

// Angular second moment. Normalized (default) squares the probabilities
// P = counts/total, giving a value in (0, 1] that is independent of image
// area; normalize=false squares the raw counts.
double glcm_energy(const Glcm& g, bool normalize = true);

// Distance-1 offsets for the four standard directions, in feature order.
inline constexpr std::array<Offset, 4> glcm_directions{{{0, 1},    // 0 deg
                                                        {-1, 1},   // 45 deg
                                                        {-1, 0},   // 90 deg
                                                        {-1, -1}}};  // 135 deg

// The glcm-4 pipeline: quantize, symmetric GLCM per direction, energies in
// the fixed 0/45/90/135 order.
FeatureVector glcm_features(const GrayImage& img, int levels = 8, bool normalize = true);

}  // namespace texbench
