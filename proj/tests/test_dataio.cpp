#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "centagg/dataio.hpp"

using namespace centagg;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("centagg_test_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_bytes(const std::string& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void push_be32(std::vector<unsigned char>& v, std::uint32_t x) {
    v.push_back(static_cast<unsigned char>(x >> 24));
    v.push_back(static_cast<unsigned char>(x >> 16));
    v.push_back(static_cast<unsigned char>(x >> 8));
    v.push_back(static_cast<unsigned char>(x));
}

}  // namespace

TEST_CASE("idx fixture loads two 28x28 images") {
    TempDir tmp;
    std::vector<unsigned char> img;
    push_be32(img, 0x00000803u);
    push_be32(img, 2);
    push_be32(img, 28);
    push_be32(img, 28);
    for (int i = 0; i < 2 * 28 * 28; ++i) img.push_back(static_cast<unsigned char>(i % 256));
    write_bytes(tmp.file("imgs"), img);

    std::vector<unsigned char> lab;
    push_be32(lab, 0x00000801u);
    push_be32(lab, 2);
    lab.push_back(7);
    lab.push_back(2);
    write_bytes(tmp.file("labs"), lab);

    Dataset data = load_idx(tmp.file("imgs"), tmp.file("labs"));
    REQUIRE(data.size() == 2);
    CHECK(data.dim() == 784);
    CHECK(data.labels[0] == 7);
    CHECK(data.labels[1] == 2);
    CHECK(data.class_count == 8);
    CHECK(data.features[0][255] == doctest::Approx(1.0));  // byte 255 scales to 1.0
    CHECK(data.features[0][0] == 0.0);
}

TEST_CASE("idx error paths") {
    TempDir tmp;

    SUBCASE("wrong magic") {
        std::vector<unsigned char> img;
        push_be32(img, 0x00000802u);
        push_be32(img, 1);
        push_be32(img, 2);
        push_be32(img, 2);
        for (int i = 0; i < 4; ++i) img.push_back(0);
        write_bytes(tmp.file("imgs"), img);
        std::vector<unsigned char> lab;
        push_be32(lab, 0x00000801u);
        push_be32(lab, 1);
        lab.push_back(0);
        write_bytes(tmp.file("labs"), lab);
        CHECK_THROWS_WITH_AS(load_idx(tmp.file("imgs"), tmp.file("labs")),
                             doctest::Contains("magic"), std::runtime_error);
    }
    SUBCASE("count mismatch") {
        std::vector<unsigned char> img;
        push_be32(img, 0x00000803u);
        push_be32(img, 1);
        push_be32(img, 2);
        push_be32(img, 2);
        for (int i = 0; i < 4; ++i) img.push_back(0);
        write_bytes(tmp.file("imgs"), img);
        std::vector<unsigned char> lab;
        push_be32(lab, 0x00000801u);
        push_be32(lab, 2);
        lab.push_back(0);
        lab.push_back(1);
        write_bytes(tmp.file("labs"), lab);
        CHECK_THROWS_WITH_AS(load_idx(tmp.file("imgs"), tmp.file("labs")),
                             doctest::Contains("mismatch"), std::runtime_error);
    }
    SUBCASE("truncated pixel data") {
        std::vector<unsigned char> img;
        push_be32(img, 0x00000803u);
        push_be32(img, 2);
        push_be32(img, 2);
        push_be32(img, 2);
        for (int i = 0; i < 5; ++i) img.push_back(0);  // needs 8
        write_bytes(tmp.file("imgs"), img);
        std::vector<unsigned char> lab;
        push_be32(lab, 0x00000801u);
        push_be32(lab, 2);
        lab.push_back(0);
        lab.push_back(1);
        write_bytes(tmp.file("labs"), lab);
        CHECK_THROWS_WITH_AS(load_idx(tmp.file("imgs"), tmp.file("labs")),
                             doctest::Contains("truncated"), std::runtime_error);
    }
}

TEST_CASE("idx round-trip through the writer") {
    TempDir tmp;
    Dataset data = synth_blobs(16, 3, 5, 0.2, 99);
    // Quantize features into [0,1] at byte resolution so the trip is exact.
    for (auto& v : data.features) {
        for (auto& x : v) {
            double clamped = std::min(1.0, std::max(0.0, std::abs(x) / 5.0));
            x = std::round(clamped * 255.0) / 255.0;
        }
    }
    save_idx(data, tmp.file("i"), tmp.file("l"));
    Dataset back = load_idx(tmp.file("i"), tmp.file("l"));
    REQUIRE(back.size() == data.size());
    CHECK(back.labels == data.labels);
    for (int i = 0; i < data.size(); ++i) {
        CHECK(back.features[static_cast<std::size_t>(i)] == data.features[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("csv loading") {
    TempDir tmp;

    SUBCASE("single row") {
        std::ofstream out(tmp.file("a.csv"));
        out << "label,px0,px1\n3,0,255\n";
        out.close();
        Dataset data = load_csv(tmp.file("a.csv"));
        REQUIRE(data.size() == 1);
        CHECK(data.labels[0] == 3);
        CHECK(data.features[0][0] == 0.0);
        CHECK(data.features[0][1] == doctest::Approx(1.0));
    }
    SUBCASE("empty file") {
        std::ofstream(tmp.file("b.csv")).close();
        CHECK_THROWS_AS(load_csv(tmp.file("b.csv")), std::runtime_error);
    }
    SUBCASE("inconsistent columns name the row") {
        std::ofstream out(tmp.file("c.csv"));
        out << "label,px0,px1\n1,2,3\n4,5\n";
        out.close();
        CHECK_THROWS_WITH_AS(load_csv(tmp.file("c.csv")), doctest::Contains("row 3"),
                             std::runtime_error);
    }
    SUBCASE("non-numeric cell names the row") {
        std::ofstream out(tmp.file("d.csv"));
        out << "label,px0\n1,2\nx,3\n";
        out.close();
        CHECK_THROWS_WITH_AS(load_csv(tmp.file("d.csv")), doctest::Contains("row 3"),
                             std::runtime_error);
    }
}

TEST_CASE("synthetic blobs") {
    Dataset a = synth_blobs(4, 2, 50, 0.0, 5);
    CHECK(a.size() == 100);
    CHECK(a.class_count == 2);
    // Zero spread collapses each class to its center.
    for (int i = 1; i < 50; ++i) CHECK(a.features[static_cast<std::size_t>(i)] == a.features[0]);

    Dataset b = synth_blobs(4, 2, 50, 0.0, 5);
    for (int i = 0; i < a.size(); ++i) {
        CHECK(a.features[static_cast<std::size_t>(i)] == b.features[static_cast<std::size_t>(i)]);
    }

    int zeros = 0, ones = 0;
    for (int l : a.labels) (l == 0 ? zeros : ones)++;
    CHECK(zeros == 50);
    CHECK(ones == 50);
}

TEST_CASE("train/test split") {
    Dataset data = synth_blobs(3, 2, 50, 0.1, 6);
    auto [train, test] = split_train_test(data, 0.2, 8);
    CHECK(train.size() == 80);
    CHECK(test.size() == 20);
    CHECK(train.class_count == 2);
    CHECK_THROWS_AS(split_train_test(data, 1.0, 8), std::invalid_argument);
}
