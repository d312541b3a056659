#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "centagg/instance_file.hpp"
#include "centagg/run_config.hpp"
#include "centagg/runner.hpp"
#include "centagg/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;
constexpr int kExitIntegrity = 4;

bool log_verbose() {
    const char* level = std::getenv("CENTAGG_LOG");
    return level != nullptr && std::string(level) == "debug";
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed_override,
            const std::string& out_override) {
    centagg::RunConfig cfg;
    try {
        cfg = centagg::parse_run_config_file(config_path);
        if (seed_override) {
            cfg.seed = *seed_override;
            cfg.train.seed = *seed_override;
        }
        if (!out_override.empty()) cfg.csv_out = out_override;
    } catch (const centagg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (log_verbose()) {
            std::cerr << "resolved config:\n" << centagg::resolved_config_text(cfg);
        }
        auto records = centagg::execute_run(cfg);
        std::cout << "wrote " << records.size() << " round(s) to " << cfg.csv_out;
        if (!cfg.svg_out.empty()) std::cout << " and chart to " << cfg.svg_out;
        std::cout << "\n";
        if (!records.empty()) {
            const auto& last = records.back();
            std::printf("final: accuracy %.4f loss %.4f rad_cov %.6g\n", last.accuracy, last.loss,
                        last.rad_cov);
        }
        return kExitOk;
    } catch (const centagg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const centagg::IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIntegrity;
    }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials) {
    try {
        centagg::VerifyReport report = centagg::run_verify_suite(suite, seed, trials);
        for (const auto& line : report.summary_lines) std::cout << line << "\n";
        if (report.violations > 0) {
            std::cout << report.violations << " violation(s)\n";
            for (const auto& msg : report.messages) std::cout << "\n" << msg << "\n";
            return kExitViolation;
        }
        std::cout << "suite '" << suite << "' passed (" << trials << " trials, seed " << seed
                  << ")\n";
        return kExitOk;
    } catch (const centagg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIntegrity;
    }
}

int cmd_gen_instance(const std::string& kind, int n, int t, int d, double x, double eps,
                     std::uint64_t seed, const std::string& out) {
    try {
        centagg::GeneratedInstance inst;
        if (kind == "box_lb") {
            inst = centagg::gen_box_lb_instance(n, t, d, x);
        } else if (kind == "convex_lb") {
            inst = centagg::gen_convex_lb_instance(n, t, d, eps);
        } else if (kind == "random") {
            centagg::Rng rng(centagg::mix64(seed));
            inst = centagg::random_adversarial_instance_fixed(rng, n, t, d);
        } else {
            std::cerr << "config error: unknown kind '" << kind
                      << "' (valid: box_lb, convex_lb, random)\n";
            return kExitConfig;
        }
        centagg::write_instance(out, inst.layout, &inst.truth);
        std::cout << "wrote " << out << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIntegrity;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Byzantine-tolerant centroid aggregation: experiments and verification"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run a configured experiment, writing CSV (and SVG)");
    std::string config_path;
    std::string out_override;
    std::optional<std::uint64_t> seed_override;
    run->add_option("--config", config_path, "Run configuration file")->required();
    std::uint64_t run_seed = 0;
    auto* run_seed_opt = run->add_option("--seed", run_seed, "Override the config seed");
    run->add_option("--out", out_override, "Override output.csv_path");

    // verify
    auto* verify = app.add_subcommand("verify", "Run a randomized property suite");
    std::string suite = "all";
    std::uint64_t verify_seed = 1;
    int trials = 500;
    verify->add_option("--suite", suite, "geometry | bounds | lowerbounds | gradients | all");
    verify->add_option("--seed", verify_seed, "Suite RNG seed");
    verify->add_option("--trials", trials, "Randomized trials per check");

    // gen-instance
    auto* gen = app.add_subcommand("gen-instance", "Write an adversarial layout file");
    std::string kind = "random", gen_out = "instance.txt";
    int gn = 10, gt = 3, gd = 5;
    double gx = 1.0, geps = 0.1;
    std::uint64_t gen_seed = 7;
    gen->add_option("--kind", kind, "box_lb | convex_lb | random");
    gen->add_option("--n", gn, "Client count");
    gen->add_option("--t", gt, "Fault bound");
    gen->add_option("--d", gd, "Dimension");
    gen->add_option("--x", gx, "Scale for box_lb");
    gen->add_option("--eps", geps, "Perturbation for convex_lb");
    gen->add_option("--seed", gen_seed, "Seed for random instances");
    gen->add_option("--out", gen_out, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (run->parsed()) {
        if (run_seed_opt->count() > 0) seed_override = run_seed;
        return cmd_run(config_path, seed_override, out_override);
    }
    if (verify->parsed()) return cmd_verify(suite, verify_seed, trials);
    return cmd_gen_instance(kind, gn, gt, gd, gx, geps, gen_seed, gen_out);
}
