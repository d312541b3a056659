#include "centagg/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "centagg/rng.hpp"

namespace centagg {

namespace {

std::uint32_t read_be32(std::istream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        throw std::runtime_error("idx: truncated header in " + path);
    }
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
           std::uint32_t(b[3]);
}

void write_be32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

Dataset load_idx(const std::string& images_path, const std::string& labels_path) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw std::runtime_error("idx: cannot open " + images_path);
    std::uint32_t magic = read_be32(img, images_path);
    if (magic != 0x00000803u) {
        throw std::runtime_error("idx: bad image magic in " + images_path);
    }
    std::uint32_t count = read_be32(img, images_path);
    std::uint32_t rows = read_be32(img, images_path);
    std::uint32_t cols = read_be32(img, images_path);

    std::ifstream lab(labels_path, std::ios::binary);
    if (!lab) throw std::runtime_error("idx: cannot open " + labels_path);
    std::uint32_t lmagic = read_be32(lab, labels_path);
    if (lmagic != 0x00000801u) {
        throw std::runtime_error("idx: bad label magic in " + labels_path);
    }
    std::uint32_t lcount = read_be32(lab, labels_path);
    if (lcount != count) {
        throw std::runtime_error("idx: image/label count mismatch (" + std::to_string(count) +
                                 " vs " + std::to_string(lcount) + ")");
    }

    const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
    Dataset data;
    data.features.reserve(count);
    data.labels.reserve(count);
    std::vector<unsigned char> buf(pixels);
    int max_label = -1;
    for (std::uint32_t i = 0; i < count; ++i) {
        if (!img.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(pixels))) {
            throw std::runtime_error("idx: truncated image data in " + images_path);
        }
        Vector v(pixels);
        for (std::size_t k = 0; k < pixels; ++k) v[k] = buf[k] / 255.0;
        data.features.push_back(std::move(v));

        char lb;
        if (!lab.read(&lb, 1)) throw std::runtime_error("idx: truncated label data in " + labels_path);
        int label = static_cast<unsigned char>(lb);
        data.labels.push_back(label);
        max_label = std::max(max_label, label);
    }
    data.class_count = max_label + 1;
    return data;
}

void save_idx(const Dataset& data, const std::string& images_path, const std::string& labels_path) {
    const auto count = static_cast<std::uint32_t>(data.features.size());
    const auto pixels = static_cast<std::uint32_t>(data.dim());
    // Store as a (count, pixels, 1) image tensor unless the dimension is a
    // perfect square (the usual rows == cols case).
    std::uint32_t rows = pixels, cols = 1;
    auto root = static_cast<std::uint32_t>(std::lround(std::sqrt(static_cast<double>(pixels))));
    if (root * root == pixels) {
        rows = cols = root;
    }

    std::ofstream img(images_path, std::ios::binary);
    if (!img) throw std::runtime_error("idx: cannot write " + images_path);
    write_be32(img, 0x00000803u);
    write_be32(img, count);
    write_be32(img, rows);
    write_be32(img, cols);
    std::vector<unsigned char> buf;
    for (const auto& v : data.features) {
        buf.resize(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) {
            double scaled = std::lround(v[k] * 255.0);
            buf[k] = static_cast<unsigned char>(std::min(255.0, std::max(0.0, scaled)));
        }
        img.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    }

    std::ofstream lab(labels_path, std::ios::binary);
    if (!lab) throw std::runtime_error("idx: cannot write " + labels_path);
    write_be32(lab, 0x00000801u);
    write_be32(lab, count);
    for (int label : data.labels) {
        char b = static_cast<char>(label);
        lab.write(&b, 1);
    }
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path);

    Dataset data;
    std::size_t columns = 0;
    std::size_t row = 1;
    int max_label = -1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (columns == 0) columns = cells.size();
        if (cells.size() != columns) {
            throw std::runtime_error("csv: row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) + " columns, expected " +
                                     std::to_string(columns));
        }
        try {
            std::size_t used = 0;
            int label = std::stoi(cells[0], &used);
            if (used != cells[0].size()) throw std::invalid_argument("trailing");
            Vector v(cells.size() - 1);
            for (std::size_t k = 1; k < cells.size(); ++k) {
                double px = std::stod(cells[k], &used);
                if (used != cells[k].size()) throw std::invalid_argument("trailing");
                v[k - 1] = px / 255.0;
            }
            data.labels.push_back(label);
            data.features.push_back(std::move(v));
            max_label = std::max(max_label, label);
        } catch (const std::exception&) {
            throw std::runtime_error("csv: non-numeric cell at row " + std::to_string(row));
        }
    }
    if (data.features.empty()) throw std::runtime_error("csv: no data rows in " + path);
    data.class_count = max_label + 1;
    return data;
}

Dataset synth_blobs(int d, int classes, int per_class, double spread, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("synth_blobs: d must be >= 1");
    if (classes < 2) throw std::invalid_argument("synth_blobs: classes must be >= 2");
    if (per_class < 1) throw std::invalid_argument("synth_blobs: per_class must be >= 1");

    Rng rng(mix64(seed ^ 0x5B10B5ULL));
    Dataset data;
    data.class_count = classes;
    for (int c = 0; c < classes; ++c) {
        Vector center(static_cast<std::size_t>(d));
        double norm = 0.0;
        for (auto& x : center) {
            x = rng.normal();
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12) norm = 1.0;
        for (auto& x : center) x = 3.0 * x / norm;

        for (int i = 0; i < per_class; ++i) {
            Vector v(static_cast<std::size_t>(d));
            for (std::size_t k = 0; k < v.size(); ++k) {
                v[k] = center[k] + spread * rng.normal();
            }
            data.features.push_back(std::move(v));
            data.labels.push_back(c);
        }
    }
    return data;
}

std::pair<Dataset, Dataset> split_train_test(const Dataset& data, double test_fraction,
                                             std::uint64_t seed) {
    if (test_fraction < 0.0 || test_fraction >= 1.0) {
        throw std::invalid_argument("split_train_test: test_fraction must be in [0, 1)");
    }
    std::vector<int> order(static_cast<std::size_t>(data.size()));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix64(seed ^ 0x5107135ULL));
    rng.shuffle(order);

    auto test_count = static_cast<std::size_t>(std::llround(test_fraction * data.size()));
    Dataset train, test;
    train.class_count = test.class_count = data.class_count;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto idx = static_cast<std::size_t>(order[i]);
        Dataset& dst = (i < order.size() - test_count) ? train : test;
        dst.features.push_back(data.features[idx]);
        dst.labels.push_back(data.labels[idx]);
    }
    return {train, test};
}

}  // namespace centagg
