#include "texbench/glcm.hpp"

#include <cstdlib>

#include "texbench/error.hpp"

namespace texbench {

IndexedImage quantize(const GrayImage& img, int levels) {
    if (levels < 2 || levels > 256)
        fail("BadLevels", "levels must lie in [2,256], got " + std::to_string(levels));

    IndexedImage idx;
    idx.width = img.width;
    idx.height = img.height;
    idx.levels = levels;
    idx.bins.resize(img.pixels.size());
    // Linear binning of [0,255].  ⌊255·L/256⌋ = L−1 for every L ≤ 256, so the
    // clamp is defensive only.
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const int bin = int(img.pixels[i]) * levels / 256 + 1;
        idx.bins[i] = bin < levels ? bin : levels;
    }
    return idx;
}

namespace {

// One accumulation pass over every in-bounds pair for a single offset.
void accumulate(const IndexedImage& idx, int drow, int dcol,
                Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& counts) {
    const int r0 = drow < 0 ? -drow : 0;
    const int r1 = drow > 0 ? idx.height - drow : idx.height;
    const int c0 = dcol < 0 ? -dcol : 0;
    const int c1 = dcol > 0 ? idx.width - dcol : idx.width;
    for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c) {
            const int i = idx(r, c);
            const int j = idx(r + drow, c + dcol);
            ++counts(i - 1, j - 1);
        }
}

}  // namespace

Glcm compute_glcm(const IndexedImage& idx, Offset offset, bool symmetric) {
    if (offset.drow == 0 && offset.dcol == 0) fail("ZeroOffset", "offset must be non-zero");
    if (std::abs(offset.drow) >= idx.height || std::abs(offset.dcol) >= idx.width)
        fail("OffsetTooLarge", "offset (" + std::to_string(offset.drow) + "," +
                                   std::to_string(offset.dcol) + ") exceeds image extent " +
                                   std::to_string(idx.height) + "x" + std::to_string(idx.width));

    Glcm g;
    g.levels = idx.levels;
    g.offset = offset;
    g.symmetric = symmetric;
    g.counts.setZero(idx.levels, idx.levels);
    accumulate(idx, offset.drow, offset.dcol, g.counts);
    if (symmetric) accumulate(idx, -offset.drow, -offset.dcol, g.counts);
    return g;
}

double glcm_energy(const Glcm& g, bool normalize) {
    const std::int64_t total = g.total();
    if (total <= 0) fail("EmptyGlcm", "co-occurrence matrix has zero total count");
    if (!normalize) return g.counts.cast<double>().array().square().sum();
    return (g.counts.cast<double>() / double(total)).array().square().sum();
}

FeatureVector glcm_features(const GrayImage& img, int levels, bool normalize) {
    const IndexedImage idx = quantize(img, levels);
    FeatureVector fv;
    fv.scheme = Scheme::Glcm4;
    fv.values.resize(4);
    for (int d = 0; d < 4; ++d)
        fv.values[d] = glcm_energy(compute_glcm(idx, glcm_directions[d], true), normalize);
    return fv;
}

}  // namespace texbench
