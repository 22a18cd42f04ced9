#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "texbench/raster.hpp"
#include "texbench/rng.hpp"

using namespace texbench;
using testutil::error_kind;

namespace {

std::string pgm_bytes(const std::string& header, std::initializer_list<int> payload) {
    std::string s = header;
    for (int b : payload) s.push_back(char(std::uint8_t(b)));
    return s;
}

}  // namespace

TEST_CASE("load_pgm reads space-separated headers") {
    const GrayImage img = load_pgm(pgm_bytes("P5 2 2 255 ", {0, 128, 255, 7}));
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img(0, 0) == 0);
    CHECK(img(0, 1) == 128);
    CHECK(img(1, 0) == 255);
    CHECK(img(1, 1) == 7);
}

TEST_CASE("load_pgm minimal file") {
    const GrayImage img = load_pgm(pgm_bytes("P5 1 1 255 ", {42}));
    CHECK(img.width == 1);
    CHECK(img.height == 1);
    CHECK(img(0, 0) == 42);
}

TEST_CASE("load_pgm accepts comments and mixed whitespace") {
    const GrayImage img =
        load_pgm(pgm_bytes("P5\n# made by hand\n2 2\t# trailing\n255\n", {1, 2, 3, 4}));
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img(1, 1) == 4);
}

TEST_CASE("load_pgm error kinds") {
    CHECK(error_kind([] { load_pgm(pgm_bytes("P6 2 2 255 ", {0, 0, 0, 0})); }) == "BadMagic");
    CHECK(error_kind([] { load_pgm(""); }) == "BadMagic");
    CHECK(error_kind([] { load_pgm(pgm_bytes("P5 2 2 65535 ", {0, 0, 0, 0})); }) ==
          "UnsupportedMaxval");
    CHECK(error_kind([] { load_pgm(pgm_bytes("P5 2 2 255 ", {0, 0, 0})); }) == "Truncated");
    CHECK(error_kind([] { load_pgm("P5 a b 255 "); }) == "MalformedHeader");
    CHECK(error_kind([] { load_pgm(pgm_bytes("P5 0 2 255 ", {})); }) == "MalformedHeader");
    CHECK(error_kind([] { load_pgm("P5 2 2") ; }) == "MalformedHeader");
    CHECK(error_kind([] { load_pgm("P52 2 255 "); }) == "MalformedHeader");
}

TEST_CASE("save_pgm canonical form") {
    GrayImage one(1, 1);
    one(0, 0) = 42;
    CHECK(save_pgm(one) == pgm_bytes("P5\n1 1\n255\n", {42}));

    const GrayImage img(2, 3, 9);
    const std::string bytes = save_pgm(img);
    CHECK(bytes.substr(0, 11) == "P5\n2 3\n255\n");
    CHECK(bytes.size() == 11 + 6);
}

TEST_CASE("pgm round-trip identity on random images") {
    SplitMix64 rng(101);
    for (int it = 0; it < 50; ++it) {
        const int w = 1 + int(rng.next_below(16));
        const int h = 1 + int(rng.next_below(16));
        const GrayImage img = testutil::random_image(rng, w, h);
        CHECK(load_pgm(save_pgm(img)) == img);
    }
}

TEST_CASE("texture kind parse and print round-trip") {
    for (const char* text : {"checkerboard:8", "grating:4:30", "grating:0.5:22.5", "noise:3",
                             "constant:200"}) {
        CHECK(TextureKind::parse(text).str() == text);
    }
    CHECK(error_kind([] { TextureKind::parse("wibble:1"); }) == "BadKind");
    CHECK(error_kind([] { TextureKind::parse("checkerboard"); }) == "BadKind");
    CHECK(error_kind([] { TextureKind::parse("checkerboard:0"); }) == "BadKind");
    CHECK(error_kind([] { TextureKind::parse("grating:4"); }) == "BadKind");
    CHECK(error_kind([] { TextureKind::parse("grating:0:10"); }) == "BadKind");
    CHECK(error_kind([] { TextureKind::parse("constant:300"); }) == "BadKind");
    CHECK(error_kind([] { TextureKind::parse("constant:12.5"); }) == "BadKind");
    CHECK(error_kind([] { TextureKind::parse("noise:-1"); }) == "BadKind");
}

TEST_CASE("synth_texture constant and checkerboard") {
    const GrayImage c = synth_texture(TextureKind::parse("constant:200"), 8, 0);
    for (auto p : c.pixels) CHECK(p == 200);

    const GrayImage b = synth_texture(TextureKind::parse("checkerboard:4"), 8, 0);
    CHECK(b(0, 0) == 255);
    CHECK(b(0, 4) == 0);
    CHECK(b(4, 4) == 255);
    CHECK(b(3, 3) == 255);
    CHECK(b(4, 3) == 0);
}

TEST_CASE("synth_texture grating samples the sine formula") {
    // f=1, orientation 0: phase along a row is 2*pi*c/8.
    const GrayImage g = synth_texture(TextureKind::parse("grating:1:0"), 8, 0);
    CHECK(g(0, 0) == 128);  // round(127.5 * (1 + 0)), half away from zero
    CHECK(g(0, 2) == 255);  // sin = 1
    CHECK(g(0, 6) == 0);    // sin = -1
    CHECK(g(5, 2) == g(0, 2));  // orientation 0: rows identical

    // orientation 90: phase depends on the row instead.
    const GrayImage v = synth_texture(TextureKind::parse("grating:1:90"), 8, 0);
    CHECK(v(2, 0) == 255);
    CHECK(v(6, 0) == 0);
    CHECK(v(2, 5) == v(2, 0));
}

TEST_CASE("synth_texture noise is deterministic and seed-sensitive") {
    const TextureKind kind = TextureKind::parse("noise:1");
    const GrayImage a = synth_texture(kind, 8, 7);
    const GrayImage b = synth_texture(kind, 8, 7);
    CHECK(a == b);
    const GrayImage c = synth_texture(kind, 8, 8);
    CHECK(a != c);
    const GrayImage d = synth_texture(TextureKind::parse("noise:2"), 8, 7);
    CHECK(a != d);
}

TEST_CASE("synth_texture size validation") {
    const TextureKind kind = TextureKind::parse("constant:0");
    CHECK(error_kind([&] { synth_texture(kind, 7, 0); }) == "BadSize");
    CHECK(error_kind([&] { synth_texture(kind, 12, 0); }) == "BadSize");
    CHECK(error_kind([&] { synth_texture(kind, 4, 0); }) == "BadSize");
    CHECK(error_kind([&] { synth_texture(kind, 0, 0); }) == "BadSize");
    CHECK(error_kind([&] { synth_texture(kind, 8, 0); }) == "");
}

TEST_CASE("synth_corpus labels images by canonical descriptor") {
    CorpusSpec spec;
    spec.kinds = {TextureKind::parse("checkerboard:2"), TextureKind::parse("noise:5")};
    spec.size = 8;
    spec.seed = 3;
    const auto corpus = synth_corpus(spec);
    REQUIRE(corpus.size() == 2);
    CHECK(corpus[0].first == "checkerboard:2");
    CHECK(corpus[1].first == "noise:5");
    CHECK(corpus[0].second == synth_texture(spec.kinds[0], 8, 3));
    CHECK(corpus[1].second == synth_texture(spec.kinds[1], 8, 3));
}

TEST_CASE("to_matrix mirrors pixels as reals") {
    GrayImage img(3, 2);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = std::uint8_t(10 * i);
    const Eigen::MatrixXd m = img.to_matrix();
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    CHECK(m(0, 0) == 0.0);
    CHECK(m(0, 2) == 20.0);
    CHECK(m(1, 0) == 30.0);
    CHECK(m(1, 2) == 50.0);
}
