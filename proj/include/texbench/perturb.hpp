#pragma once

#include <cstdint>

#include "texbench/raster.hpp"

namespace texbench {

// Impulse noise: exactly round(density * N) distinct positions, chosen by a
// partial Fisher-Yates shuffle driven by SplitMix64(seed), each set to 0 or
// 255 by the next PRNG bit (position and bit draws interleaved). Everything
// else is untouched.
GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed);

// Classic global histogram equalization:
//   out(v) = round(255 * (cdf(v) - cdf_min) / (N - cdf_min))
// with cdf_min the smallest nonzero cdf value. A single-gray-level image is
// returned unchanged.
GrayImage hist_equalize(const GrayImage& img);

enum class Interp { Nearest };

// Counter-clockwise rotation about the image center, same-size central crop,
// inverse mapping with nearest-neighbor sampling; out-of-range sources read
// as 0 (the fill shows up in co-occurrence counts). rotate(img, 0) == img.
GrayImage rotate(const GrayImage& img, double degrees, Interp interp = Interp::Nearest);

}  // namespace texbench
