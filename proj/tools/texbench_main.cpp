#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "texbench/bench.hpp"
#include "texbench/classify.hpp"
#include "texbench/glcm.hpp"
#include "texbench/perturb.hpp"
#include "texbench/raster.hpp"
#include "texbench/wavelet.hpp"

namespace {

using namespace texbench;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IoError", "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Data output goes to --out when given, stdout otherwise.
void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail("IoError", "cannot open '" + path + "' for writing");
    out << text;
    if (!out) fail("IoError", "short write to '" + path + "'");
}

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CorpusSpec parse_corpus(const std::string& text, std::uint64_t seed) {
    if (text == "default") return default_corpus(256, seed);
    if (text.starts_with("default:")) {
        const std::string rest = text.substr(8);
        char* end = nullptr;
        const long size = std::strtol(rest.c_str(), &end, 10);
        if (end == rest.c_str() || *end != '\0')
            fail("BadCorpus", "'" + rest + "' is not a size");
        return default_corpus(int(size), seed);
    }
    fail("BadCorpus", "unknown corpus '" + text + "' (have default, default:<size>)");
}

struct SynthOpts {
    std::string kind;
    int size = 256;
    std::uint64_t seed = 7;
    std::string out;
};

struct PerturbOpts {
    double density = 0;
    double degrees = 0;
    std::uint64_t seed = 7;
    std::string in, out;
};

struct DecomposeOpts {
    std::string wavelet = "haar";
    int levels = 3;
    std::string in, out;
};

struct GlcmOpts {
    int levels = 8;
    bool raw = false;
    std::string in, out;
};

struct FeatureFlags {
    std::string wavelet = "haar";
    std::string mode = "mean_abs";
    int glcm_levels = 8;
    bool glcm_raw = false;
};

struct BuildDbOpts {
    std::string scheme;
    FeatureFlags feat;
    std::vector<std::string> items;
    std::string out;
};

struct ClassifyOpts {
    std::string db;
    std::string threshold = "auto";
    FeatureFlags feat;
    std::string in, out;
};

struct BenchOpts {
    std::string corpus = "default";
    std::string methods = "haar,db4,sym8,glcm";
    int repeats = 3;
    std::uint64_t seed = 7;
    std::string format = "csv";
    std::vector<double> densities{0.02, 0.05, 0.09};
    std::vector<double> rotations{2, 4, 30};
    bool equalize = true;
    std::string out;
};

void add_feature_flags(CLI::App* cmd, FeatureFlags& feat) {
    cmd->add_option("--wavelet", feat.wavelet, "wavelet filter for wavelet-7")
        ->check(CLI::IsMember({"haar", "db4", "sym8"}))
        ->capture_default_str();
    cmd->add_option("--mode", feat.mode, "subband energy mode for wavelet-7")
        ->check(CLI::IsMember({"mean_abs", "mean_signed", "mean_square"}))
        ->capture_default_str();
    cmd->add_option("--glcm-levels", feat.glcm_levels, "gray levels for glcm-4")
        ->capture_default_str();
    cmd->add_flag("--glcm-raw", feat.glcm_raw, "raw (unnormalized) GLCM energies");
}

FeatureParams resolve_params(Scheme scheme, const FeatureFlags& feat) {
    FeatureParams p;
    p.scheme = scheme;
    p.wavelet = feat.wavelet;
    p.mode = energy_mode_from_string(feat.mode);
    p.glcm_levels = feat.glcm_levels;
    p.glcm_normalized = !feat.glcm_raw;
    return p;
}

int run(int argc, char** argv) {
    CLI::App app{"texture classification toolkit: wavelet and GLCM energy features,\n"
                 "minimum-distance classification, perturbations, benchmarks"};
    app.require_subcommand(1);

    SynthOpts synth_o;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic texture as PGM");
    synth_cmd->add_option("--kind", synth_o.kind,
                          "descriptor: checkerboard:<p> | grating:<f>:<deg> | noise:<stream> | "
                          "constant:<v>")
        ->required();
    synth_cmd->add_option("--size", synth_o.size, "side length, power of two >= 8")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth_o.seed, "corpus seed")->capture_default_str();
    synth_cmd->add_option("--out", synth_o.out, "output PGM path")->required();
    synth_cmd->callback([&] {
        const TextureKind kind = TextureKind::parse(synth_o.kind);
        write_pgm_file(synth_o.out, synth_texture(kind, synth_o.size, synth_o.seed));
    });

    PerturbOpts pert_o;
    auto* pert_cmd = app.add_subcommand("perturb", "apply one perturbation to a PGM image");
    auto* noise_opt =
        pert_cmd->add_option("--noise", pert_o.density, "salt-and-pepper density in [0,1]");
    auto* eq_flag = pert_cmd->add_flag("--equalize", "histogram equalization");
    auto* rot_opt = pert_cmd->add_option("--rotate", pert_o.degrees, "rotation in degrees (ccw)");
    pert_cmd->add_option("--seed", pert_o.seed, "noise seed")->capture_default_str();
    pert_cmd->add_option("input", pert_o.in, "input PGM")->required();
    pert_cmd->add_option("--out", pert_o.out, "output PGM path")->required();
    pert_cmd->callback([&] {
        const int chosen = (noise_opt->count() ? 1 : 0) + (eq_flag->count() ? 1 : 0) +
                           (rot_opt->count() ? 1 : 0);
        if (chosen != 1)
            throw CLI::ValidationError(
                "perturb", "exactly one of --noise, --equalize, --rotate is required");
        const GrayImage img = read_pgm_file(pert_o.in);
        GrayImage out;
        if (noise_opt->count())
            out = salt_pepper(img, pert_o.density, pert_o.seed);
        else if (eq_flag->count())
            out = hist_equalize(img);
        else
            out = rotate(img, pert_o.degrees);
        write_pgm_file(pert_o.out, out);
    });

    DecomposeOpts dec_o;
    auto* dec_cmd =
        app.add_subcommand("decompose", "per-subband energy summary of a wavelet pyramid (CSV)");
    dec_cmd->add_option("--wavelet", dec_o.wavelet, "filter")
        ->check(CLI::IsMember({"haar", "db4", "sym8"}))
        ->capture_default_str();
    dec_cmd->add_option("--levels", dec_o.levels, "decomposition levels")->capture_default_str();
    dec_cmd->add_option("input", dec_o.in, "input PGM")->required();
    dec_cmd->add_option("--out", dec_o.out, "output CSV path (default stdout)");
    dec_cmd->callback([&] {
        const GrayImage img = read_pgm_file(dec_o.in);
        const Decomposition dec =
            decompose(img, WaveletFilter::by_name(dec_o.wavelet), dec_o.levels);
        std::ostringstream csv;
        csv << "level,subband,mean_abs,mean_signed,mean_square\n";
        auto emit = [&](int level, const char* name, const Eigen::MatrixXd& s) {
            csv << level << "," << name << "," << num17(subband_energy(s, EnergyMode::MeanAbs))
                << "," << num17(subband_energy(s, EnergyMode::MeanSigned)) << ","
                << num17(subband_energy(s, EnergyMode::MeanSquare)) << "\n";
        };
        for (std::size_t l = 0; l < dec.levels.size(); ++l) {
            emit(int(l) + 1, "cH", dec.levels[l].ch);
            emit(int(l) + 1, "cV", dec.levels[l].cv);
            emit(int(l) + 1, "cD", dec.levels[l].cd);
        }
        emit(int(dec.levels.size()), "cA", dec.final_ca);
        write_text(dec_o.out, csv.str());
    });

    GlcmOpts glcm_o;
    auto* glcm_cmd =
        app.add_subcommand("glcm", "4-direction co-occurrence energy features (CSV line)");
    glcm_cmd->add_option("--levels", glcm_o.levels, "gray levels")->capture_default_str();
    glcm_cmd->add_flag("--raw", glcm_o.raw, "sum squared counts instead of probabilities");
    glcm_cmd->add_option("input", glcm_o.in, "input PGM")->required();
    glcm_cmd->add_option("--out", glcm_o.out, "output CSV path (default stdout)");
    glcm_cmd->callback([&] {
        const GrayImage img = read_pgm_file(glcm_o.in);
        const FeatureVector fv = glcm_features(img, glcm_o.levels, !glcm_o.raw);
        std::ostringstream csv;
        for (int i = 0; i < fv.values.size(); ++i)
            csv << (i ? "," : "") << num17(fv.values[i]);
        csv << "\n";
        write_text(glcm_o.out, csv.str());
    });

    BuildDbOpts db_o;
    auto* db_cmd = app.add_subcommand("build-db", "extract features into a labeled database CSV");
    db_cmd->add_option("--scheme", db_o.scheme, "feature scheme")
        ->check(CLI::IsMember({"wavelet-7", "glcm-4"}))
        ->required();
    add_feature_flags(db_cmd, db_o.feat);
    db_cmd->add_option("items", db_o.items, "labeled images as label=path.pgm")->required();
    db_cmd->add_option("--out", db_o.out, "output CSV path (default stdout)");
    db_cmd->callback([&] {
        std::vector<std::pair<std::string, GrayImage>> items;
        for (const std::string& item : db_o.items) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw CLI::ValidationError("build-db",
                                           "'" + item + "' is not of the form label=path.pgm");
            items.emplace_back(item.substr(0, eq), read_pgm_file(item.substr(eq + 1)));
        }
        const FeatureParams params = resolve_params(scheme_from_string(db_o.scheme), db_o.feat);
        write_text(db_o.out, database_to_csv(build_database(items, params)));
    });

    ClassifyOpts cls_o;
    auto* cls_cmd =
        app.add_subcommand("classify", "nearest-exemplar label for an image, or UNKNOWN");
    cls_cmd->add_option("--db", cls_o.db, "feature database CSV")->required();
    cls_cmd->add_option("--threshold", cls_o.threshold, "rejection radius or 'auto'")
        ->capture_default_str();
    add_feature_flags(cls_cmd, cls_o.feat);
    cls_cmd->add_option("input", cls_o.in, "input PGM")->required();
    cls_cmd->add_option("--out", cls_o.out, "output path (default stdout)");
    cls_cmd->callback([&] {
        const FeatureDatabase db = database_from_csv(read_text_file(cls_o.db));
        std::optional<double> threshold;
        if (cls_o.threshold != "auto") {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(cls_o.threshold, &used);
            } catch (const std::exception&) {
                fail("BadThreshold", "'" + cls_o.threshold + "' is neither a number nor 'auto'");
            }
            if (used != cls_o.threshold.size() || !(v >= 0))
                fail("BadThreshold", "threshold must be a non-negative number or 'auto'");
            threshold = v;
        }
        const GrayImage img = read_pgm_file(cls_o.in);
        const FeatureVector fv = extract_features(img, resolve_params(db.scheme, cls_o.feat));
        const ClassifyResult res = classify(fv, db, threshold);
        write_text(cls_o.out,
                   (res.known ? res.label : std::string("UNKNOWN")) + "," + num6(res.distance) +
                       "\n");
    });

    BenchOpts bench_o;
    auto* bench_cmd =
        app.add_subcommand("bench", "timing/accuracy grid over methods and perturbations");
    bench_cmd->add_option("--corpus", bench_o.corpus, "default or default:<size>")
        ->capture_default_str();
    bench_cmd->add_option("--methods", bench_o.methods, "comma-separated subset of haar,db4,sym8,glcm")
        ->capture_default_str();
    bench_cmd->add_option("--repeats", bench_o.repeats, "timing repeats, odd >= 3")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench_o.seed, "experiment seed (TEXBENCH_SEED overrides)")
        ->capture_default_str();
    bench_cmd->add_option("--format", bench_o.format, "report format")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    bench_cmd->add_option("--densities", bench_o.densities, "noise densities")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--rotations", bench_o.rotations, "rotation degrees")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_flag("--equalize,!--no-equalize", bench_o.equalize,
                        "include the equalization cell");
    bench_cmd->add_option("--out", bench_o.out, "output path (default stdout)");
    bench_cmd->callback([&] {
        BenchConfig config;
        config.seed = bench_o.seed;
        if (const char* env = std::getenv("TEXBENCH_SEED"); env && *env) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0')
                fail("BadSeed", "TEXBENCH_SEED='" + std::string(env) + "' is not an integer");
            config.seed = v;
        }
        config.corpus = parse_corpus(bench_o.corpus, config.seed);
        config.methods = parse_methods(bench_o.methods);
        config.noise_densities = bench_o.densities;
        config.rotations = bench_o.rotations;
        config.equalize = bench_o.equalize;
        config.repeats = bench_o.repeats;
        const BenchReport report = accuracy_experiment(config);
        const ReportFormat fmt =
            bench_o.format == "markdown" ? ReportFormat::Markdown : ReportFormat::Csv;
        write_text(bench_o.out, emit_report(report, fmt));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\nRun with --help for usage.\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const texbench::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 1;
    }
}
