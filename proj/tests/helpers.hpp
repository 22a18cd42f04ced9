#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

#include "texbench/error.hpp"
#include "texbench/features.hpp"
#include "texbench/raster.hpp"
#include "texbench/rng.hpp"

namespace testutil {

// Runs f and reports the kind of the texbench::Error it throws, or "" when
// it doesn't throw. Tests pin error kinds with string equality.
template <typename F>
std::string error_kind(F&& f) {
    try {
        f();
    } catch (const texbench::Error& e) {
        return e.kind();
    }
    return "";
}

inline texbench::FeatureVector make_vector(texbench::Scheme scheme,
                                           std::initializer_list<double> values) {
    texbench::FeatureVector fv;
    fv.scheme = scheme;
    fv.values.resize(Eigen::Index(values.size()));
    Eigen::Index i = 0;
    for (double v : values) fv.values[i++] = v;
    return fv;
}

inline texbench::GrayImage random_image(texbench::SplitMix64& rng, int width, int height) {
    texbench::GrayImage img(width, height);
    for (auto& p : img.pixels) p = std::uint8_t(rng.next() % 256);
    return img;
}

}  // namespace testutil
