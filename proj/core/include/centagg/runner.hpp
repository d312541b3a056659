#pragma once

#include <string>
#include <vector>

#include "centagg/run_config.hpp"

namespace centagg {

// Executes the configured experiment end to end: loads data, trains, streams
// one CSV row per round (flushed as it goes, so an aborted run leaves a
// partial file), and optionally renders an SVG accuracy/radius chart.
// Returns the round records. Throws ConfigError for bad inputs and lets
// aggregator integrity errors propagate after the partial CSV is flushed.
std::vector<RoundRecord> execute_run(const RunConfig& cfg);

// CSV row formatting shared with tests: round,accuracy,loss,rad_cov,
// nonfaulty_diameter,approx_ratio,elapsed_ms (ratio written as "inf" when the
// covering ball degenerates with a positive distance).
std::string csv_header();
std::string csv_row(const RoundRecord& rec);

// Self-describing metadata comment block placed before the header row.
std::string csv_metadata(const RunConfig& cfg);

// Static polyline chart of accuracy and covering-ball radius per round.
std::string render_svg(const std::vector<RoundRecord>& records);

}  // namespace centagg
