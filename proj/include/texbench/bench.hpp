#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "texbench/classify.hpp"
#include "texbench/raster.hpp"

namespace texbench {

enum class Method { Haar, Db4, Sym8, Glcm };

std::string to_string(Method m);
Method method_from_string(std::string_view text);      // BadMethod
std::vector<Method> parse_methods(std::string_view csv);  // comma-separated

// Extraction parameters a method stands for: the wavelet methods use the
// 7-feature mean-abs pipeline, glcm the 4-feature normalized-energy one.
FeatureParams params_for(Method m);

struct Perturbation {
    enum class Kind { None, Noise, Equalize, Rotate };

    Kind kind = Kind::None;
    double amount = 0;  // noise density or rotation degrees

    std::string str() const;
    bool operator==(const Perturbation&) const = default;
};

// Ten synthetic textures standing in for the unspecified reference corpus:
// checkerboards across four scales, gratings across frequencies and
// orientations, one seeded-noise field.
CorpusSpec default_corpus(int size = 256, std::uint64_t seed = 7);

struct BenchConfig {
    CorpusSpec corpus = default_corpus();
    std::vector<Method> methods{Method::Haar, Method::Db4, Method::Sym8, Method::Glcm};
    std::vector<double> noise_densities{0.02, 0.05, 0.09};
    std::vector<double> rotations{2, 4, 30};
    bool equalize = true;
    int repeats = 3;  // odd, >= 3
    std::uint64_t seed = 7;
};

struct BenchRow {
    Method method;
    Perturbation perturbation;
    double median_time_s = 0;
    double accuracy_pct = 0;
    int n_images = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

double median_of(std::vector<double> values);  // EmptyInput

// Median over `repeats` passes of the per-image feature-extraction time,
// single-threaded, steady clock. Only extraction is inside the timed region.
double time_extraction(Method method, const std::vector<GrayImage>& images, int repeats);

// The full grid: one database per method from the clean corpus, then one row
// per (method, perturbation) cell with accuracy against that database and
// the median extraction time on the perturbed images. Row order is methods
// outer (config order), cells inner (none, noise..., equalize, rotate...).
BenchReport accuracy_experiment(const BenchConfig& config);

enum class ReportFormat { Csv, Markdown };

// csv: "method,perturbation,median_time_s,accuracy_pct,n_images", times with
// 4 decimals, accuracy with 2. markdown: one table per perturbation family,
// a time and an accuracy column per method.
std::string emit_report(const BenchReport& report, ReportFormat format);

}  // namespace texbench
