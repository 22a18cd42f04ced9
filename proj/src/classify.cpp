#include "texbench/classify.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>

namespace texbench {

std::string to_string(EnergyMode mode) {
    switch (mode) {
        case EnergyMode::MeanAbs: return "mean_abs";
        case EnergyMode::MeanSigned: return "mean_signed";
        case EnergyMode::MeanSquare: return "mean_square";
    }
    fail("BadMode", "corrupt energy mode");
}

EnergyMode energy_mode_from_string(std::string_view text) {
    if (text == "mean_abs") return EnergyMode::MeanAbs;
    if (text == "mean_signed") return EnergyMode::MeanSigned;
    if (text == "mean_square") return EnergyMode::MeanSquare;
    fail("BadMode", "unknown energy mode '" + std::string(text) +
                        "' (have mean_abs, mean_signed, mean_square)");
}

double subband_energy(const Eigen::MatrixXd& subband, EnergyMode mode) {
    if (subband.size() == 0) fail("EmptySubband", "subband has no coefficients");
    const double n = double(subband.size());
    switch (mode) {
        case EnergyMode::MeanAbs: return subband.array().abs().sum() / n;
        case EnergyMode::MeanSigned: return subband.sum() / n;
        case EnergyMode::MeanSquare: return subband.array().square().sum() / n;
    }
    fail("BadMode", "corrupt energy mode");
}

FeatureVector wavelet_features(const GrayImage& img, const WaveletFilter& filter,
                               EnergyMode mode) {
    constexpr int kLevels = 3;
    const int div = 1 << kLevels;
    if (img.height % div != 0 || img.width % div != 0)
        fail("NotDivisible", std::to_string(img.height) + "x" + std::to_string(img.width) +
                                 " input is not divisible by 2^" + std::to_string(kLevels));

    // Scratch reused across calls: extraction runs once per image in batch
    // loops, and bouncing the multi-megabyte planes through the allocator
    // costs more than the transform itself. Same math as decompose();
    // only the buffer ownership differs.
    static thread_local Eigen::MatrixXd plane;
    static thread_local std::array<Subbands<double>, kLevels> pyramid;

    using ByteMatrix =
        Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    plane = Eigen::Map<const ByteMatrix>(img.pixels.data(), img.height, img.width).cast<double>();

    const Eigen::MatrixXd* approx = &plane;
    for (auto& level : pyramid) {
        dwt2d_into(*approx, filter, level);
        approx = &level.ca;
    }

    FeatureVector fv;
    fv.scheme = Scheme::Wavelet7;
    fv.values.resize(7);
    for (int l = 0; l < kLevels; ++l) {
        fv.values[2 * l] = subband_energy(pyramid[std::size_t(l)].ch, mode);
        fv.values[2 * l + 1] = subband_energy(pyramid[std::size_t(l)].cv, mode);
    }
    fv.values[6] = subband_energy(pyramid[kLevels - 1].ca, mode);
    return fv;
}

double euclidean(const FeatureVector& a, const FeatureVector& b) {
    if (a.scheme != b.scheme || a.values.size() != b.values.size())
        fail("SchemeMismatch", "cannot compare " + to_string(a.scheme) + "[" +
                                   std::to_string(a.values.size()) + "] with " +
                                   to_string(b.scheme) + "[" + std::to_string(b.values.size()) +
                                   "]");
    return (a.values - b.values).norm();
}

FeatureVector extract_features(const GrayImage& img, const FeatureParams& params) {
    if (params.scheme == Scheme::Wavelet7)
        return wavelet_features(img, WaveletFilter::by_name(params.wavelet), params.mode);
    return glcm_features(img, params.glcm_levels, params.glcm_normalized);
}

double auto_threshold(const FeatureDatabase& db) {
    // 3x the worst nearest-same-label-neighbor distance; +inf when no label
    // has two exemplars (self-match experiments must never reject).
    double worst = -1;
    for (std::size_t i = 0; i < db.rows.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < db.rows.size(); ++j) {
            if (i == j || db.rows[i].label != db.rows[j].label) continue;
            nearest = std::min(nearest, euclidean(db.rows[i].vector, db.rows[j].vector));
        }
        if (std::isfinite(nearest)) worst = std::max(worst, nearest);
    }
    if (worst < 0) return std::numeric_limits<double>::infinity();
    return 3.0 * worst;
}

namespace {

void check_label(const std::string& label) {
    if (label.empty()) fail("BadLabel", "labels must be non-empty");
    if (label.find_first_of(",\r\n") != std::string::npos)
        fail("BadLabel", "label '" + label + "' contains a comma or line break");
}

}  // namespace

FeatureDatabase build_database(const std::vector<std::pair<std::string, GrayImage>>& items,
                               const FeatureParams& params) {
    if (items.empty()) fail("EmptyInput", "database needs at least one labeled image");
    FeatureDatabase db;
    db.scheme = params.scheme;
    db.rows.reserve(items.size());
    for (const auto& [label, img] : items) {
        check_label(label);
        db.rows.push_back({label, extract_features(img, params)});
    }
    db.threshold = auto_threshold(db);
    return db;
}

ClassifyResult classify(const FeatureVector& v, const FeatureDatabase& db,
                        std::optional<double> threshold) {
    if (db.rows.empty()) fail("EmptyInput", "database has no rows");
    if (v.scheme != db.scheme)
        fail("SchemeMismatch", "query is " + to_string(v.scheme) + " but database is " +
                                   to_string(db.scheme));

    std::size_t best = 0;
    double best_d = euclidean(v, db.rows[0].vector);
    for (std::size_t i = 1; i < db.rows.size(); ++i) {
        const double d = euclidean(v, db.rows[i].vector);
        if (d < best_d) {  // strict: ties keep the lowest index
            best_d = d;
            best = i;
        }
    }

    double limit;
    if (threshold)
        limit = *threshold;
    else if (db.threshold)
        limit = *db.threshold;
    else
        limit = auto_threshold(db);

    return {best_d <= limit, db.rows[best].label, best_d};
}

std::string database_to_csv(const FeatureDatabase& db) {
    const int n = feature_count(db.scheme);
    std::ostringstream out;
    out << "scheme,label";
    for (int i = 1; i <= n; ++i) out << ",f" << i;
    out << "\n";
    char buf[64];
    for (const auto& row : db.rows) {
        out << to_string(db.scheme) << "," << row.label;
        for (int i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row.vector.values[i]);
            out << "," << buf;
        }
        out << "\n";
    }
    return out.str();
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        fields.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

FeatureDatabase database_from_csv(std::string_view csv) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < csv.size()) {
        std::size_t nl = csv.find('\n', start);
        std::string_view line = csv.substr(start, nl == std::string_view::npos ? nl : nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    if (lines.size() < 2) fail("BadDatabase", "need a header and at least one row");
    if (split_csv_line(lines[0]).size() < 3 || !lines[0].starts_with("scheme,label,"))
        fail("BadDatabase", "bad header '" + std::string(lines[0]) + "'");

    FeatureDatabase db;
    bool first = true;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto fields = split_csv_line(lines[r]);
        if (fields.size() < 3) fail("BadDatabase", "row " + std::to_string(r) + " is too short");
        const Scheme scheme = scheme_from_string(fields[0]);
        const int n = feature_count(scheme);
        if (int(fields.size()) != 2 + n)
            fail("BadDatabase", "row " + std::to_string(r) + " has " +
                                    std::to_string(fields.size() - 2) + " values, expected " +
                                    std::to_string(n));
        if (first) {
            db.scheme = scheme;
            first = false;
        } else if (scheme != db.scheme) {
            fail("BadDatabase", "row " + std::to_string(r) + " scheme differs from the first row");
        }

        FeatureDatabase::Row row;
        row.label = fields[1];
        check_label(row.label);
        row.vector.scheme = scheme;
        row.vector.values.resize(n);
        for (int i = 0; i < n; ++i) {
            const std::string& s = fields[2 + i];
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                fail("BadDatabase", "'" + s + "' is not a number");
            }
            if (used != s.size() || !std::isfinite(v))
                fail("BadDatabase", "'" + s + "' is not a finite number");
            row.vector.values[i] = v;
        }
        db.rows.push_back(std::move(row));
    }
    return db;
}

}  // namespace texbench
