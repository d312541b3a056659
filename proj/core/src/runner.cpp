#include "centagg/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace centagg {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string csv_header() {
    return "round,accuracy,loss,rad_cov,nonfaulty_diameter,approx_ratio,elapsed_ms";
}

std::string csv_row(const RoundRecord& rec) {
    std::ostringstream out;
    out << rec.round << "," << fmt(rec.accuracy) << "," << fmt(rec.loss) << ","
        << fmt(rec.rad_cov) << "," << fmt(rec.nonfaulty_diameter) << ",";
    if (rec.ratio_infinite) {
        out << "inf";
    } else {
        out << fmt(rec.ratio);
    }
    out << "," << fmt(rec.elapsed_ms);
    return out.str();
}

std::string csv_metadata(const RunConfig& cfg) {
    std::ostringstream out;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    out << "# centagg run\n";
    out << "# config_hash = " << hash << "\n";
    out << "# seed = " << cfg.seed << "\n";
    out << "# decision lr_schedule = lr/(1+decay*round), decay = lr/rounds\n";
    out << "# decision fedavg_combine = mean\n";
    out << "# decision fedavg_signflip = local_gradient_flip\n";
    std::istringstream cfg_lines(resolved_config_text(cfg));
    std::string line;
    while (std::getline(cfg_lines, line)) out << "# cfg " << line << "\n";
    return out.str();
}

std::string render_svg(const std::vector<RoundRecord>& records) {
    const int width = 720, height = 420, margin = 50;
    const double plot_w = width - 2.0 * margin;
    const double plot_h = height - 2.0 * margin;

    double max_rad = 0.0;
    for (const auto& r : records) max_rad = std::max(max_rad, r.rad_cov);
    if (max_rad <= 0.0) max_rad = 1.0;
    const double max_round = records.empty() ? 1.0 : std::max(1.0, static_cast<double>(records.back().round));

    auto x_of = [&](double round) { return margin + plot_w * round / max_round; };
    auto y_of = [&](double value01) { return height - margin - plot_h * value01; };

    auto polyline = [&](const char* color, auto&& value01) {
        std::ostringstream pts;
        for (const auto& r : records) {
            pts << fmt(x_of(r.round)) << "," << fmt(y_of(value01(r))) << " ";
        }
        std::ostringstream out;
        out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
            << pts.str() << "\"/>\n";
        return out.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    svg << polyline("#1f77b4", [](const RoundRecord& r) { return r.accuracy; });
    svg << polyline("#d62728", [&](const RoundRecord& r) { return r.rad_cov / max_rad; });
    svg << "  <text x=\"" << margin << "\" y=\"" << margin - 16
        << "\" font-family=\"sans-serif\" font-size=\"13\">"
        << "<tspan fill=\"#1f77b4\">accuracy</tspan>"
        << " / <tspan fill=\"#d62728\">rad_cov (scaled by max "
        << fmt(max_rad) << ")</tspan> vs round</text>\n";
    svg << "  <text x=\"" << width - margin << "\" y=\"" << height - margin + 28
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">round</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::vector<RoundRecord> execute_run(const RunConfig& cfg) {
    auto [train, test] = load_configured_dataset(cfg);

    std::ofstream csv(cfg.csv_out);
    if (!csv) throw ConfigError("run: cannot write CSV to " + cfg.csv_out);
    csv << csv_metadata(cfg);
    csv << csv_header() << "\n";
    csv.flush();

    std::vector<RoundRecord> records;
    try {
        records = run_training(cfg.train, train, test, [&](const RoundRecord& rec) {
            csv << csv_row(rec) << "\n";
            csv.flush();
        });
    } catch (...) {
        csv.flush();
        throw;
    }

    if (!cfg.svg_out.empty()) {
        std::ofstream svg(cfg.svg_out);
        if (!svg) throw ConfigError("run: cannot write SVG to " + cfg.svg_out);
        svg << render_svg(records);
    }
    return records;
}

}  // namespace centagg
