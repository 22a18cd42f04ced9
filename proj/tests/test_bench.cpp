#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "texbench/bench.hpp"

using namespace texbench;
using testutil::error_kind;

TEST_CASE("method names round-trip") {
    for (Method m : {Method::Haar, Method::Db4, Method::Sym8, Method::Glcm})
        CHECK(method_from_string(to_string(m)) == m);
    CHECK(error_kind([] { method_from_string("dct"); }) == "BadMethod");
    CHECK(error_kind([] { method_from_string(""); }) == "BadMethod");

    const std::vector<Method> parsed = parse_methods("haar,glcm");
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0] == Method::Haar);
    CHECK(parsed[1] == Method::Glcm);
    CHECK(parse_methods("sym8").size() == 1);
    CHECK(error_kind([] { parse_methods("haar,,glcm"); }) == "BadMethod");
}

TEST_CASE("params_for picks the scheme and wavelet") {
    const FeatureParams haar = params_for(Method::Haar);
    CHECK(haar.scheme == Scheme::Wavelet7);
    CHECK(haar.wavelet == "haar");
    CHECK(haar.mode == EnergyMode::MeanAbs);

    CHECK(params_for(Method::Db4).wavelet == "db4");
    CHECK(params_for(Method::Sym8).wavelet == "sym8");

    const FeatureParams glcm = params_for(Method::Glcm);
    CHECK(glcm.scheme == Scheme::Glcm4);
    CHECK(glcm.glcm_levels == 8);
    CHECK(glcm.glcm_normalized);
}

TEST_CASE("perturbation labels") {
    CHECK(Perturbation{Perturbation::Kind::None, 0}.str() == "none");
    CHECK(Perturbation{Perturbation::Kind::Noise, 0.02}.str() == "noise(0.02)");
    CHECK(Perturbation{Perturbation::Kind::Noise, 0.09}.str() == "noise(0.09)");
    CHECK(Perturbation{Perturbation::Kind::Equalize, 0}.str() == "equalize");
    CHECK(Perturbation{Perturbation::Kind::Rotate, 2}.str() == "rotate(2)");
    CHECK(Perturbation{Perturbation::Kind::Rotate, 30}.str() == "rotate(30)");
}

TEST_CASE("default corpus has ten distinct labels") {
    const CorpusSpec spec = default_corpus();
    CHECK(spec.size == 256);
    CHECK(spec.seed == 7);
    REQUIRE(spec.kinds.size() == 10);
    std::vector<std::string> labels;
    for (const TextureKind& kind : spec.kinds) labels.push_back(kind.str());
    std::sort(labels.begin(), labels.end());
    CHECK(std::adjacent_find(labels.begin(), labels.end()) == labels.end());

    CHECK(default_corpus(64, 3).size == 64);
    CHECK(default_corpus(64, 3).seed == 3);
}

TEST_CASE("median_of") {
    CHECK(median_of({1, 2, 100}) == 2.0);
    CHECK(median_of({100, 1, 2}) == 2.0);
    CHECK(median_of({5}) == 5.0);
    CHECK(median_of({1, 2, 3, 4}) == 2.5);
    CHECK(error_kind([] { median_of({}); }) == "EmptyInput");
}

TEST_CASE("time_extraction validates inputs and returns a positive time") {
    const std::vector<GrayImage> images{GrayImage(16, 16, 10), GrayImage(16, 16, 200)};
    for (int bad : {0, 1, 2, 4})
        CHECK(error_kind([&] { time_extraction(Method::Haar, images, bad); }) == "BadRepeats");
    CHECK(error_kind([&] { time_extraction(Method::Haar, {}, 3); }) == "EmptyInput");
    CHECK(time_extraction(Method::Haar, images, 3) > 0.0);
    CHECK(time_extraction(Method::Glcm, images, 3) > 0.0);
}

namespace {

BenchConfig small_config() {
    BenchConfig config;
    config.corpus = default_corpus(16, 7);
    config.methods = {Method::Haar, Method::Glcm};
    config.noise_densities = {0.5};
    config.rotations = {4};
    config.equalize = true;
    config.repeats = 3;
    config.seed = 7;
    return config;
}

}  // namespace

TEST_CASE("accuracy_experiment grid shape and row order") {
    const BenchConfig config = small_config();
    const BenchReport report = accuracy_experiment(config);

    // 2 methods x 4 cells, methods outer, cells in [none, noise, equalize, rotate] order.
    REQUIRE(report.rows.size() == 8);
    const std::vector<std::string> want_cells{"none", "noise(0.5)", "equalize", "rotate(4)"};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(report.rows[i].method == (i < 4 ? Method::Haar : Method::Glcm));
        CHECK(report.rows[i].perturbation.str() == want_cells[i % 4]);
        CHECK(report.rows[i].n_images == 10);
        CHECK(report.rows[i].median_time_s > 0.0);
        CHECK(report.rows[i].accuracy_pct >= 0.0);
        CHECK(report.rows[i].accuracy_pct <= 100.0);
    }

    // The unperturbed corpus is the training set itself.
    CHECK(report.rows[0].accuracy_pct == 100.0);
    CHECK(report.rows[4].accuracy_pct == 100.0);
}

TEST_CASE("accuracy_experiment is deterministic per seed") {
    const BenchConfig config = small_config();
    const BenchReport a = accuracy_experiment(config);
    const BenchReport b = accuracy_experiment(config);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].method == b.rows[i].method);
        CHECK(a.rows[i].perturbation == b.rows[i].perturbation);
        CHECK(a.rows[i].accuracy_pct == b.rows[i].accuracy_pct);
        CHECK(a.rows[i].n_images == b.rows[i].n_images);
    }

    BenchConfig other = config;
    other.seed = 8;
    const BenchReport c = accuracy_experiment(other);
    // Same grid, even if the noise draws differ.
    REQUIRE(c.rows.size() == a.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        CHECK(c.rows[i].perturbation == a.rows[i].perturbation);
}

TEST_CASE("accuracy_experiment validates its config") {
    BenchConfig config = small_config();
    config.repeats = 2;
    CHECK(error_kind([&] { accuracy_experiment(config); }) == "BadRepeats");

    config = small_config();
    config.methods.clear();
    CHECK(error_kind([&] { accuracy_experiment(config); }) == "EmptyInput");

    config = small_config();
    config.corpus.kinds = {TextureKind::parse("constant:7")};
    CHECK(error_kind([&] { accuracy_experiment(config); }) == "BadCorpus");
}

TEST_CASE("csv report formatting") {
    BenchReport report;
    report.rows.push_back({Method::Haar, {Perturbation::Kind::None, 0}, 0.1805, 100.0, 10});
    report.rows.push_back({Method::Glcm, {Perturbation::Kind::Noise, 0.02}, 0.00125, 87.5, 10});

    const std::string csv = emit_report(report, ReportFormat::Csv);
    CHECK(csv ==
          "method,perturbation,median_time_s,accuracy_pct,n_images\n"
          "haar,none,0.1805,100.00,10\n"
          "glcm,noise(0.02),0.0013,87.50,10\n");

    CHECK(error_kind([] { emit_report({}, ReportFormat::Csv); }) == "EmptyReport");
    CHECK(error_kind([] { emit_report({}, ReportFormat::Markdown); }) == "EmptyReport");
}

TEST_CASE("markdown report groups rows by perturbation family") {
    BenchReport report;
    report.rows.push_back({Method::Haar, {Perturbation::Kind::None, 0}, 0.01, 100.0, 10});
    report.rows.push_back({Method::Haar, {Perturbation::Kind::Noise, 0.02}, 0.01, 90.0, 10});
    report.rows.push_back({Method::Haar, {Perturbation::Kind::Noise, 0.05}, 0.01, 80.0, 10});
    report.rows.push_back({Method::Glcm, {Perturbation::Kind::None, 0}, 0.02, 100.0, 10});
    report.rows.push_back({Method::Glcm, {Perturbation::Kind::Noise, 0.02}, 0.02, 70.0, 10});
    report.rows.push_back({Method::Glcm, {Perturbation::Kind::Noise, 0.05}, 0.02, 60.0, 10});

    const std::string md = emit_report(report, ReportFormat::Markdown);
    CHECK(md.find("# Benchmark report") != std::string::npos);
    CHECK(md.find("10 images per cell.") != std::string::npos);
    CHECK(md.find("## none") != std::string::npos);
    CHECK(md.find("## noise") != std::string::npos);
    CHECK(md.find("## equalize") == std::string::npos);
    CHECK(md.find("| haar time (s) | haar accuracy (%) | glcm time (s) | glcm accuracy (%) |") !=
          std::string::npos);
    CHECK(md.find("| noise(0.02) |") != std::string::npos);
    CHECK(md.find("| noise(0.05) |") != std::string::npos);
    CHECK(md.find("90.00") != std::string::npos);
    CHECK(md.find("60.00") != std::string::npos);

    // Accuracy columns carry exactly the row values, in the family tables.
    const std::size_t noise_at = md.find("## noise");
    CHECK(md.find("| noise(0.02) |", noise_at) != std::string::npos);
}
