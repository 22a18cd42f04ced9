#include "texbench/perturb.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "texbench/error.hpp"
#include "texbench/rng.hpp"

namespace texbench {

GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0))
        fail("BadDensity", "density must lie in [0,1]");

    const std::uint64_t n = std::uint64_t(img.width) * std::uint64_t(img.height);
    const std::uint64_t k = std::uint64_t(std::llround(density * double(n)));

    GrayImage out = img;
    if (k == 0) return out;

    // Partial Fisher-Yates: positions i < k hold a uniform k-subset drawn
    // without replacement.  One position draw then one value bit per pixel.
    std::vector<std::uint64_t> index(n);
    std::iota(index.begin(), index.end(), std::uint64_t{0});
    SplitMix64 rng(seed);
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t j = i + rng.next_below(n - i);
        std::swap(index[i], index[j]);
        out.pixels[index[i]] = (rng.next() & 1) ? 255 : 0;
    }
    return out;
}

GrayImage hist_equalize(const GrayImage& img) {
    const std::uint64_t n = std::uint64_t(img.width) * std::uint64_t(img.height);

    std::uint64_t hist[256] = {};
    for (std::uint8_t v : img.pixels) ++hist[v];

    std::uint64_t cdf[256];
    std::uint64_t running = 0;
    for (int v = 0; v < 256; ++v) {
        running += hist[v];
        cdf[v] = running;
    }
    std::uint64_t cdf_min = 0;
    for (int v = 0; v < 256; ++v)
        if (cdf[v] > 0) { cdf_min = cdf[v]; break; }

    // Single gray level: the remap denominator would be zero.
    if (cdf_min == n) return img;

    std::uint8_t map[256];
    for (int v = 0; v < 256; ++v) {
        const double scaled =
            255.0 * double(cdf[v] > cdf_min ? cdf[v] - cdf_min : 0) / double(n - cdf_min);
        map[v] = std::uint8_t(std::llround(scaled));
    }

    GrayImage out = img;
    for (auto& p : out.pixels) p = map[p];
    return out;
}

GrayImage rotate(const GrayImage& img, double degrees, Interp) {
    constexpr double kPi = 3.14159265358979323846;
    const double theta = degrees * kPi / 180.0;
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cx = (img.width - 1) / 2.0;
    const double cy = (img.height - 1) / 2.0;

    // Inverse map: for each output pixel, sample the source position that a
    // counter-clockwise rotation about the center carries onto it.
    GrayImage out(img.width, img.height, 0);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            const double xs = cx + ct * (c - cx) - st * (r - cy);
            const double ys = cy + st * (c - cx) + ct * (r - cy);
            const long long si = std::llround(ys);
            const long long sj = std::llround(xs);
            if (si >= 0 && si < img.height && sj >= 0 && sj < img.width)
                out(r, c) = img(int(si), int(sj));
        }
    }
    return out;
}

}  // namespace texbench
