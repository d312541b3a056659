#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "centagg/types.hpp"

namespace centagg {

struct Dataset {
    std::vector<Vector> features;
    std::vector<int> labels;  // in [0, class_count)
    int class_count = 0;

    int size() const { return static_cast<int>(features.size()); }
    int dim() const { return features.empty() ? 0 : static_cast<int>(features[0].size()); }
};

// Big-endian IDX decoding: images magic 0x00000803 with dims
// (count, rows, cols), labels magic 0x00000801; pixel bytes scaled by 1/255.
// Throws std::runtime_error on bad magic, count mismatch or truncation.
Dataset load_idx(const std::string& images_path, const std::string& labels_path);

// Inverse of load_idx (feature values are written as round(v * 255)); used
// for fixtures and dataset preparation, round-trips exactly with load_idx.
void save_idx(const Dataset& data, const std::string& images_path, const std::string& labels_path);

// CSV with a "label,px0,..." header, integer label first, pixels scaled by
// 1/255. Errors carry the 1-based row number.
Dataset load_csv(const std::string& path);

// Gaussian blobs: class c is centered at 3 * (random unit direction) drawn
// deterministically from seed; samples are center + spread * normal noise.
Dataset synth_blobs(int d, int classes, int per_class, double spread, std::uint64_t seed);

// Seeded shuffle split; the first (1 - test_fraction) goes to train.
std::pair<Dataset, Dataset> split_train_test(const Dataset& data, double test_fraction,
                                             std::uint64_t seed);

}  // namespace centagg
