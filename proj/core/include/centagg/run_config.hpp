#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "centagg/flsim.hpp"

namespace centagg {

// Flat dotted-key run configuration (see docs/README for the schema). Parsing
// is strict: unknown keys, missing required keys, and type errors all raise
// ConfigError before any work happens.
struct RunConfig {
    // dataset
    std::string dataset_type;  // idx | csv | synth
    std::string images_path;
    std::string labels_path;
    std::string csv_path;
    int synth_d = 8;
    int synth_classes = 4;
    int synth_per_class = 50;
    double synth_spread = 0.3;
    double test_fraction = 0.2;

    // clients / attack / aggregator / training / partition
    TrainConfig train;

    // output
    std::string csv_out;
    std::string svg_out;  // optional

    std::uint64_t seed = 0;
};

RunConfig parse_run_config_text(const std::string& text);
RunConfig parse_run_config_file(const std::string& path);

// Canonical "key = value" rendering of every resolved field, used for the
// self-describing CSV metadata header and for hashing.
std::string resolved_config_text(const RunConfig& cfg);

// FNV-1a 64 over resolved_config_text.
std::uint64_t config_hash(const RunConfig& cfg);

// Materializes the configured dataset (loading files or synthesizing) and
// splits it into train/test.
std::pair<Dataset, Dataset> load_configured_dataset(const RunConfig& cfg);

}  // namespace centagg
