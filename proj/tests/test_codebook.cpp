#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hypervec/codebook.hpp"
#include "hypervec/errors.hpp"

using namespace hypervec;
namespace fs = std::filesystem;

namespace {

struct temp_dir {
    fs::path path;
    temp_dir() {
        path = fs::temp_directory_path() /
               ("hypervec_test_" + std::to_string(static_cast<unsigned long>(::getpid())) + "_" +
                std::to_string(counter_++));
        fs::create_directories(path);
    }
    ~temp_dir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static inline int counter_ = 0;
};

bool same_vector(const HyperVector& a, const HyperVector& b) { return a.v == b.v; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
}

}  // namespace

TEST_SUITE_BEGIN("codebook");

TEST_CASE("rebuilding from the same config reproduces every vector") {
    auto a = build_codebook(256, 7, 10, 3);
    auto b = build_codebook(256, 7, 10, 3);
    CHECK(a.fingerprint() == b.fingerprint());
    for (std::size_t i = 1; i <= 10; ++i)
        CHECK(same_vector(a.node_vector(i), b.node_vector(i)));
    for (std::size_t j = 1; j <= 3; ++j)
        CHECK(same_vector(a.edge_id_vector(j), b.edge_id_vector(j)));
    CHECK(same_vector(a.size_vector(), b.size_vector()));
}

TEST_CASE("growing capacity keeps existing vectors bit-identical") {
    auto small = build_codebook(256, 3, 8, 4);
    auto big = build_codebook(256, 3, 16, 8);
    for (std::size_t i = 1; i <= 8; ++i)
        CHECK(same_vector(small.node_vector(i), big.node_vector(i)));
    for (std::size_t j = 1; j <= 4; ++j)
        CHECK(same_vector(small.edge_id_vector(j), big.edge_id_vector(j)));
    CHECK(same_vector(small.size_vector(), big.size_vector()));
    CHECK(small.fingerprint() != big.fingerprint());
}

TEST_CASE("distinct roles and seeds give distinct vectors") {
    auto a = build_codebook(256, 3, 4, 4);
    auto b = build_codebook(256, 4, 4, 4);
    CHECK_FALSE(same_vector(a.node_vector(1), a.node_vector(2)));
    CHECK_FALSE(same_vector(a.node_vector(1), a.edge_id_vector(1)));
    CHECK_FALSE(same_vector(a.node_vector(1), a.size_vector()));
    CHECK_FALSE(same_vector(a.node_vector(1), b.node_vector(1)));
    CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("codebook vectors are near-orthogonal at working dimension") {
    auto cb = build_codebook(2048, 11, 16, 4);
    std::vector<const HyperVector*> all;
    for (std::size_t i = 1; i <= 16; ++i) all.push_back(&cb.node_vector(i));
    for (std::size_t j = 1; j <= 4; ++j) all.push_back(&cb.edge_id_vector(j));
    all.push_back(&cb.size_vector());
    double worst = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            worst = std::max(worst, std::abs(cosine(*all[i], *all[j])));
    CHECK(worst < 0.2);
}

TEST_CASE("default sampling mode gives unit-norm vectors") {
    auto cb = build_codebook(512, 2, 4, 2);
    CHECK(cb.unitary_mode());
    for (std::size_t i = 1; i <= 4; ++i)
        CHECK(norm(cb.node_vector(i)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(norm(cb.size_vector()) == doctest::Approx(1.0).epsilon(1e-10));

    auto plain = build_codebook(512, 2, 4, 2, false);
    CHECK_FALSE(plain.unitary_mode());
    CHECK(plain.fingerprint() != cb.fingerprint());
}

TEST_CASE("out-of-range lookups are rejected") {
    auto cb = build_codebook(128, 1, 4, 2);
    CHECK_THROWS_AS(cb.node_vector(0), validation_error);
    CHECK_THROWS_AS(cb.node_vector(5), validation_error);
    CHECK_THROWS_AS(cb.edge_id_vector(0), validation_error);
    CHECK_THROWS_AS(cb.edge_id_vector(3), validation_error);
    CHECK_THROWS_AS(cb.attribute_vector("missing"), validation_error);
}

TEST_CASE("save then load reproduces the codebook exactly") {
    temp_dir dir;
    auto cb = build_codebook(64, 9, 6, 3).with_attribute_keys({"red", "blue"});
    auto path = dir.file("cb.bin");
    cb.save(path);
    auto back = Codebook::load(path);
    CHECK(back.dim() == 64);
    CHECK(back.seed() == 9);
    CHECK(back.n_max() == 6);
    CHECK(back.m_max() == 3);
    CHECK(back.unitary_mode());
    CHECK(back.fingerprint() == cb.fingerprint());
    for (std::size_t i = 1; i <= 6; ++i)
        CHECK(same_vector(back.node_vector(i), cb.node_vector(i)));
    CHECK(same_vector(back.attribute_vector("red"), cb.attribute_vector("red")));
    CHECK(back.attribute_keys() == std::vector<std::string>{"blue", "red"});
}

TEST_CASE("loading a truncated codebook file fails cleanly") {
    temp_dir dir;
    auto cb = build_codebook(64, 9, 6, 3);
    auto path = dir.file("cb.bin");
    cb.save(path);
    auto size = fs::file_size(path);
    fs::resize_file(path, size / 2);
    CHECK_THROWS_AS(Codebook::load(path), io_error);
}

TEST_CASE("loading a tampered codebook file fails the fingerprint check") {
    temp_dir dir;
    auto cb = build_codebook(64, 9, 6, 3);
    auto path = dir.file("cb.bin");
    cb.save(path);
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(100);  // inside the first node-vector payload
        char byte = 0;
        f.read(&byte, 1);
        f.seekp(100);
        byte = static_cast<char>(byte ^ 0x40);
        f.write(&byte, 1);
    }
    CHECK_THROWS_AS(Codebook::load(path), validation_error);
}

TEST_CASE("loading a non-codebook file is rejected on the magic bytes") {
    temp_dir dir;
    auto path = dir.file("junk.bin");
    write_text(path, "definitely not a codebook");
    CHECK_THROWS_AS(Codebook::load(path), validation_error);
    CHECK_THROWS_AS(Codebook::load(dir.file("does_not_exist.bin")), io_error);
}

TEST_CASE("attribute extension is deterministic and preserves the base") {
    auto base = build_codebook(256, 5, 4, 2);
    auto a = base.with_attribute_keys({"CYS", "GLY"});
    auto b = base.with_attribute_keys({"GLY", "CYS"});
    CHECK(same_vector(a.attribute_vector("GLY"), b.attribute_vector("GLY")));
    CHECK(same_vector(a.attribute_vector("CYS"), b.attribute_vector("CYS")));
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(a.fingerprint() != base.fingerprint());
    for (std::size_t i = 1; i <= 4; ++i)
        CHECK(same_vector(a.node_vector(i), base.node_vector(i)));
    CHECK(a.has_attribute("GLY"));
    CHECK_FALSE(base.has_attribute("GLY"));
    // Re-adding an existing key is a no-op.
    auto again = a.with_attribute_keys({"GLY"});
    CHECK(again.fingerprint() == a.fingerprint());
    CHECK_THROWS_AS(base.with_attribute_keys({""}), validation_error);
}

TEST_CASE("concept CSV import happy path") {
    temp_dir dir;
    auto path = dir.file("vecs.csv");
    write_text(path,
               "key,dim=4\n"
               "alpha,1,0,0,0\n"
               "beta,0.5,-0.5,0.25,2\n");
    auto vecs = parse_concept_csv(path);
    REQUIRE(vecs.size() == 2);
    CHECK(vecs.at("alpha") == std::vector<double>{1, 0, 0, 0});
    CHECK(vecs.at("beta") == std::vector<double>{0.5, -0.5, 0.25, 2});

    auto cb = import_concept_vectors(path);
    CHECK(cb.dim() == 4);
    CHECK(cb.n_max() == 0);
    CHECK(cb.has_attribute("alpha"));
    CHECK(cb.attribute_vector("beta").v == vecs.at("beta"));
}

TEST_CASE("concept CSV parse errors are reported as validation failures") {
    temp_dir dir;
    auto bad_header = dir.file("h.csv");
    write_text(bad_header, "dim=4,key\na,1,2,3,4\n");
    CHECK_THROWS_AS(parse_concept_csv(bad_header), validation_error);

    auto wrong_arity = dir.file("a.csv");
    write_text(wrong_arity, "key,dim=3\na,1,2\n");
    CHECK_THROWS_AS(parse_concept_csv(wrong_arity), validation_error);

    auto dup = dir.file("d.csv");
    write_text(dup, "key,dim=2\na,1,2\na,3,4\n");
    CHECK_THROWS_AS(parse_concept_csv(dup), validation_error);

    auto bad_float = dir.file("f.csv");
    write_text(bad_float, "key,dim=2\na,1,zebra\n");
    CHECK_THROWS_AS(parse_concept_csv(bad_float), validation_error);

    CHECK_THROWS_AS(parse_concept_csv(dir.file("missing.csv")), io_error);
}

TEST_CASE("imported vectors must match the codebook dimension and be fresh") {
    auto cb = build_codebook(4, 1, 2, 1);
    std::map<std::string, std::vector<double>> ok{{"x", {1, 2, 3, 4}}};
    auto ext = cb.with_imported(ok);
    CHECK(ext.attribute_vector("x").v == std::vector<double>{1, 2, 3, 4});
    std::map<std::string, std::vector<double>> wrong_d{{"y", {1, 2}}};
    CHECK_THROWS_AS(cb.with_imported(wrong_d), validation_error);
    CHECK_THROWS_AS(ext.with_imported(ok), validation_error);
}

TEST_SUITE_END();
