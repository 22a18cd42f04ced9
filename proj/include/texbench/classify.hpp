#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "texbench/features.hpp"
#include "texbench/glcm.hpp"
#include "texbench/raster.hpp"
#include "texbench/wavelet.hpp"

namespace texbench {

// How a subband collapses to one number. mean_signed is the plain coefficient
// mean; it is near zero for every detail subband (details are zero-mean by
// construction), so mean_abs is the default and mean_square is the third
// option for experiments.
enum class EnergyMode { MeanAbs, MeanSigned, MeanSquare };

std::string to_string(EnergyMode mode);
EnergyMode energy_mode_from_string(std::string_view text);  // BadMode

double subband_energy(const Eigen::MatrixXd& subband, EnergyMode mode);

// Three-level decomposition collapsed to the 7 wavelet features
// [E(cH1), E(cV1), E(cH2), E(cV2), E(cH3), E(cV3), E(cA3)]; diagonal
// subbands are not part of the feature set.
FeatureVector wavelet_features(const GrayImage& img, const WaveletFilter& filter,
                               EnergyMode mode = EnergyMode::MeanAbs);

double euclidean(const FeatureVector& a, const FeatureVector& b);  // SchemeMismatch

// Everything needed to extract features under a scheme. A database and its
// queries must use the same parameters.
struct FeatureParams {
    Scheme scheme = Scheme::Wavelet7;
    std::string wavelet = "haar";
    EnergyMode mode = EnergyMode::MeanAbs;
    int glcm_levels = 8;
    bool glcm_normalized = true;
};

FeatureVector extract_features(const GrayImage& img, const FeatureParams& params);

// Labeled exemplars under one scheme. threshold is the rejection radius;
// nullopt means "auto", resolved by auto_threshold.
struct FeatureDatabase {
    struct Row {
        std::string label;
        FeatureVector vector;
    };

    Scheme scheme = Scheme::Wavelet7;
    std::vector<Row> rows;
    std::optional<double> threshold;
};

// auto rule: 3x the largest nearest-same-label-neighbor distance over the
// rows; +infinity when every label has a single exemplar (a self-match
// experiment never rejects).
double auto_threshold(const FeatureDatabase& db);

FeatureDatabase build_database(const std::vector<std::pair<std::string, GrayImage>>& items,
                               const FeatureParams& params);

struct ClassifyResult {
    bool known = false;
    std::string label;    // label of the nearest row, even when rejected
    double distance = 0;  // distance to that row
};

// Minimum-Euclidean-distance rule: nearest database row wins (ties go to the
// lowest row index); distances above the threshold come back known=false.
// A missing threshold argument falls back to db.threshold, then to auto.
ClassifyResult classify(const FeatureVector& v, const FeatureDatabase& db,
                        std::optional<double> threshold = std::nullopt);

// CSV with header "scheme,label,f1..fn"; values carry 17 significant digits
// so a written database reloads bit-exactly. The threshold is not part of
// the file; it is resupplied (or re-derived) at classification time.
std::string database_to_csv(const FeatureDatabase& db);
FeatureDatabase database_from_csv(std::string_view csv);  // BadDatabase

}  // namespace texbench
