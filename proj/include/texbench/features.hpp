#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "texbench/error.hpp"

namespace texbench {

enum class Scheme { Wavelet7, Glcm4 };

constexpr int feature_count(Scheme s) { return s == Scheme::Wavelet7 ? 7 : 4; }

inline std::string to_string(Scheme s) {
    return s == Scheme::Wavelet7 ? "wavelet-7" : "glcm-4";
}

inline Scheme scheme_from_string(std::string_view text) {
    if (text == "wavelet-7") return Scheme::Wavelet7;
    if (text == "glcm-4") return Scheme::Glcm4;
    fail("BadScheme", "unknown scheme '" + std::string(text) + "' (have wavelet-7, glcm-4)");
}

// Ordered per-image features under one extraction scheme.
//   wavelet-7: [E(cH1), E(cV1), E(cH2), E(cV2), E(cH3), E(cV3), E(cA3)]
//   glcm-4:    [E(0 deg), E(45 deg), E(90 deg), E(135 deg)]
struct FeatureVector {
    Scheme scheme = Scheme::Wavelet7;
    Eigen::VectorXd values;
};

}  // namespace texbench
