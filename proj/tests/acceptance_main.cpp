// Acceptance suite: runs every release criterion end to end and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.
//
// Usage: centagg_acceptance --data-dir <dir> [--dataset-script <py>]
//
// The training criteria need a 28x28 digit dataset in IDX format. Resolution
// order: $CENTAGG_MNIST_DIR (real MNIST), an already-populated --data-dir,
// else --dataset-script is invoked to synthesize the stand-in digits set.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "centagg/flsim.hpp"
#include "centagg/run_config.hpp"
#include "centagg/runner.hpp"
#include "centagg/verify.hpp"

namespace fs = std::filesystem;
using namespace centagg;

namespace {

struct CriterionResult {
    int id;
    bool pass;
    std::string detail;
};

std::vector<CriterionResult> g_results;

void report(int id, bool pass, const std::string& detail) {
    g_results.push_back({id, pass, detail});
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << detail << std::endl;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- dataset --

struct DigitData {
    Dataset train;
    Dataset test;
    std::string source;
};

std::optional<DigitData> try_load_dir(const std::string& dir, const std::string& source) {
    fs::path base(dir);
    fs::path ti = base / "train-images-idx3-ubyte";
    fs::path tl = base / "train-labels-idx1-ubyte";
    fs::path vi = base / "t10k-images-idx3-ubyte";
    fs::path vl = base / "t10k-labels-idx1-ubyte";
    if (!fs::exists(ti) || !fs::exists(tl) || !fs::exists(vi) || !fs::exists(vl)) {
        return std::nullopt;
    }
    DigitData data;
    data.train = load_idx(ti.string(), tl.string());
    data.test = load_idx(vi.string(), vl.string());
    data.source = source;
    return data;
}

// Deterministic subset of the configured sizes (2000 train / 500 test).
void subset_in_place(Dataset& data, int count, std::uint64_t seed) {
    if (data.size() <= count) return;
    std::vector<int> order(static_cast<std::size_t>(data.size()));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix64(seed));
    rng.shuffle(order);
    Dataset out;
    out.class_count = data.class_count;
    for (int i = 0; i < count; ++i) {
        auto idx = static_cast<std::size_t>(order[static_cast<std::size_t>(i)]);
        out.features.push_back(std::move(data.features[idx]));
        out.labels.push_back(data.labels[idx]);
    }
    data = std::move(out);
}

std::optional<DigitData> prepare_digits(const std::string& data_dir, const std::string& script) {
    if (const char* mnist = std::getenv("CENTAGG_MNIST_DIR")) {
        if (auto data = try_load_dir(mnist, "mnist")) return data;
        std::cerr << "warning: CENTAGG_MNIST_DIR set but files missing; falling back\n";
    }
    if (auto data = try_load_dir(data_dir, "digits28")) return data;
    if (!script.empty()) {
        std::string cmd = "python3 " + script + " " + data_dir;
        int rc = std::system(cmd.c_str());
        if (rc == 0) {
            if (auto data = try_load_dir(data_dir, "digits28")) return data;
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------------ criteria 1-5 --

void run_check(int id, const std::string& label, std::vector<std::string> violations,
               double seconds, double budget_s) {
    std::ostringstream detail;
    detail << label << " (" << violations.size() << " violation(s), " << seconds << " s)";
    bool pass = violations.empty() && (budget_s <= 0.0 || seconds <= budget_s);
    if (!violations.empty()) {
        detail << "\n  first: " << violations.front().substr(0, 400);
    }
    if (budget_s > 0.0 && seconds > budget_s) {
        detail << " [exceeded " << budget_s << " s budget]";
    }
    report(id, pass, detail.str());
}

// ----------------------------------------------------------- criteria 6-10 --

struct TrainingOutcome {
    std::vector<RoundRecord> records;
    double best_accuracy = 0.0;
    double final_accuracy = 0.0;  // mean over the last 20 rounds
    double seconds = 0.0;
};

struct RunSpec {
    std::string aggregator;
    int f = 1;
    int t = 3;
    PartitionScheme scheme = PartitionScheme::homogeneous;
    TrainMode mode = TrainMode::fedsgd;
    double lr = 0.2;
    int local_steps = 0;  // 0 = one epoch
};

TrainingOutcome run_digits(const DigitData& data, const RunSpec& spec, int rounds = 300) {
    TrainConfig cfg;
    cfg.mode = spec.mode;
    cfg.rounds = rounds;
    cfg.lr = spec.lr;
    cfg.n = 10;
    cfg.t = spec.t;
    cfg.aggregator = spec.aggregator;
    cfg.eps = 1e-2;
    cfg.attack.kind = AttackKind::sign_flip;
    cfg.attack.f = spec.f;
    cfg.scheme = spec.scheme;
    cfg.local_steps = spec.local_steps;
    cfg.batch_size = 32;
    cfg.seed = 93;

    TrainingOutcome out;
    auto start = std::chrono::steady_clock::now();
    out.records = run_training(cfg, data.train, data.test);
    out.seconds = elapsed_s(start);
    for (const auto& rec : out.records) out.best_accuracy = std::max(out.best_accuracy, rec.accuracy);
    const int tail = std::min<int>(20, static_cast<int>(out.records.size()));
    for (std::size_t i = out.records.size() - static_cast<std::size_t>(tail); i < out.records.size(); ++i) {
        out.final_accuracy += out.records[i].accuracy / tail;
    }
    return out;
}

std::string pct(double x) {
    std::ostringstream ss;
    ss << std::round(x * 1000.0) / 10.0 << "%";
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::string data_dir = "acceptance_data";
    std::string script;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--data-dir" && i + 1 < argc) data_dir = argv[++i];
        else if (arg == "--dataset-script" && i + 1 < argc) script = argv[++i];
    }

    const std::uint64_t seed = 2025;

    // 1. Oracle equivalence on 1000 random layouts within one minute.
    {
        auto start = std::chrono::steady_clock::now();
        auto violations = check_oracle_equivalence(seed, 1000);
        run_check(1, "oracle equivalence: CH closed form, box membership, mda membership, 1000 layouts",
                  std::move(violations), elapsed_s(start), 60.0);
    }

    // 2. Upper-bound suite on 1000 adversarial layouts.
    {
        auto start = std::chrono::steady_clock::now();
        auto violations = check_upper_bounds(seed, 1000);
        run_check(2, "upper bounds: ball<=1+1e-3, mda<=2+1e-6, box<=2*sqrt(min(n,d))+1e-6, safe_area<=2d+1+1e-3",
                  std::move(violations), elapsed_s(start), 0.0);
    }

    // 3. Lower-bound constructions.
    {
        auto start = std::chrono::steady_clock::now();
        auto violations = check_lower_bounds();
        run_check(3, "lower bounds: box construction forces ratio >= sqrt(min/2), safe-area construction >= 2d*0.95",
                  std::move(violations), elapsed_s(start), 0.0);
    }

    // 4. Validity suite on 500 identical-honest adversarial trials.
    {
        auto start = std::chrono::steady_clock::now();
        auto violations = check_validity_suite(seed, 500);
        run_check(4, "validity: mda strong, all aggregators weak, box inside the trusted hyperbox",
                  std::move(violations), elapsed_s(start), 0.0);
    }

    // 5. Gradient finite-difference check on 20 random MLPs.
    {
        auto start = std::chrono::steady_clock::now();
        auto violations = check_gradient_accuracy(seed, 20);
        run_check(5, "gradients: central finite differences, rel err <= 1e-4, 20 models",
                  std::move(violations), elapsed_s(start), 0.0);
    }

    // Dataset-backed criteria.
    auto digits = prepare_digits(data_dir, script);
    if (digits) {
        subset_in_place(digits->train, 2000, 11);
        subset_in_place(digits->test, 500, 12);
        std::cout << "dataset: " << digits->source << " (" << digits->train.size() << " train / "
                  << digits->test.size() << " test)" << std::endl;
    } else {
        std::cout << "dataset: unavailable (criteria 6-9 will fail)" << std::endl;
    }

    // 6. FedSGD under sign flip reaches 85% for MDA and Box, f in {1,2,3}.
    std::optional<TrainingOutcome> converging_run;
    if (digits) {
        bool all_pass = true;
        std::ostringstream detail;
        detail << "fedsgd homogeneous sign_flip, lr 0.2, 300 rounds:";
        for (const std::string agg : {"mda", "box"}) {
            for (int f = 1; f <= 3; ++f) {
                TrainingOutcome out = run_digits(*digits, {agg, f});
                bool pass = out.best_accuracy >= 0.85 && out.seconds <= 600.0;
                all_pass = all_pass && pass;
                detail << " " << agg << "/f=" << f << " " << pct(out.best_accuracy) << " ("
                       << std::round(out.seconds) << "s)";
                if (agg == "mda" && f == 1) converging_run = out;
            }
        }
        report(6, all_pass, detail.str());
    } else {
        report(6, false, "fedsgd reproduction skipped: dataset unavailable");
    }

    // 7. Extreme heterogeneity: f=3 keeps both below 50%; f=1 Box above 55%.
    // These runs use a hotter rate (0.6) than the homogeneous reproduction
    // and configure the fault bound at the actual threat level (t = f): with
    // two classes per client, trimming three per side when only one client
    // is faulty discards the class signal itself.
    if (digits) {
        TrainingOutcome mda3 =
            run_digits(*digits, {"mda", 3, 3, PartitionScheme::extreme, TrainMode::fedsgd, 0.6});
        TrainingOutcome box3 =
            run_digits(*digits, {"box", 3, 3, PartitionScheme::extreme, TrainMode::fedsgd, 0.6});
        TrainingOutcome box1 =
            run_digits(*digits, {"box", 1, 1, PartitionScheme::extreme, TrainMode::fedsgd, 0.6});
        bool pass = mda3.best_accuracy < 0.50 && box3.best_accuracy < 0.50 &&
                    box1.best_accuracy > 0.55;
        std::ostringstream detail;
        detail << "extreme heterogeneity (lr 0.6, t=f): f=3 mda " << pct(mda3.best_accuracy)
               << ", f=3 box " << pct(box3.best_accuracy) << " (both must stay <50%), f=1 box "
               << pct(box1.best_accuracy) << " (must exceed 55%)";
        report(7, pass, detail.str());
    } else {
        report(7, false, "extreme heterogeneity check skipped: dataset unavailable");
    }

    // 8. FedAvg under sign flip: Box ends above MDA. Single-minibatch local
    // steps put the flipped update at the same scale as honest round noise,
    // which is where subset averaging is vulnerable and coordinate trimming
    // is not.
    if (digits) {
        RunSpec mda_spec{"mda", 1, 3, PartitionScheme::homogeneous, TrainMode::fedavg, 0.5, 1};
        RunSpec box_spec{"box", 1, 3, PartitionScheme::homogeneous, TrainMode::fedavg, 0.5, 1};
        TrainingOutcome mda = run_digits(*digits, mda_spec);
        TrainingOutcome box = run_digits(*digits, box_spec);
        bool pass = box.final_accuracy > mda.final_accuracy;
        std::ostringstream detail;
        detail << "fedavg sign_flip f=1 (lr 0.5, 1 local step): box final "
               << pct(box.final_accuracy) << " vs mda final " << pct(mda.final_accuracy)
               << " (mean of last 20 rounds)";
        report(8, pass, detail.str());
    } else {
        report(8, false, "fedavg check skipped: dataset unavailable");
    }

    // 9. Covering-ball radius stays flat over the last 50 rounds of a
    // converging FedSGD run.
    if (digits && converging_run) {
        const auto& records = converging_run->records;
        const std::size_t window = 50;
        double mean = 0.0;
        for (std::size_t i = records.size() - window; i < records.size(); ++i) {
            mean += records[i].rad_cov / window;
        }
        double var = 0.0;
        for (std::size_t i = records.size() - window; i < records.size(); ++i) {
            var += (records[i].rad_cov - mean) * (records[i].rad_cov - mean) / window;
        }
        double stddev = std::sqrt(var);
        bool pass = mean > 0.0 && stddev <= 0.25 * mean;
        std::ostringstream detail;
        detail << "radius tracking: last-50 rad_cov std " << stddev << " vs mean " << mean << " ("
               << (mean > 0 ? std::round(1000.0 * stddev / mean) / 10.0 : 0.0) << "% <= 25%)";
        report(9, pass, detail.str());
    } else {
        report(9, false, "radius tracking skipped: dataset unavailable");
    }

    // 10. Byte-identical CSV (excluding elapsed_ms) across reruns.
    {
        fs::path dir = fs::temp_directory_path() / "centagg_acceptance_det";
        fs::create_directories(dir);
        std::string conf =
            "dataset.type = synth\n"
            "dataset.synth_d = 8\ndataset.synth_classes = 4\ndataset.synth_per_class = 40\n"
            "dataset.test_fraction = 0.25\n"
            "clients.n = 10\nclients.t = 3\n"
            "attack.kind = sign_flip\nattack.f = 2\n"
            "aggregator.name = box\n"
            "training.mode = fedsgd\ntraining.rounds = 25\ntraining.lr = 0.3\n"
            "partition.scheme = homogeneous\n"
            "seed = 64\n"
            "output.csv_path = PLACEHOLDER\n";

        // Identical config both times (same output path, overwritten).
        auto run_once = [&]() {
            RunConfig cfg = parse_run_config_text(conf);
            cfg.csv_out = (dir / "run.csv").string();
            execute_run(cfg);
            std::ifstream in(cfg.csv_out);
            std::string text, line;
            while (std::getline(in, line)) {
                if (!line.empty() && line[0] != '#' && line.rfind("round,", 0) != 0) {
                    line = line.substr(0, line.rfind(','));  // strip elapsed_ms
                }
                text += line + "\n";
            }
            return text;
        };
        std::string a = run_once();
        std::string b = run_once();
        bool pass = a == b;
        report(10, pass, pass ? "determinism: identical CSV across reruns (elapsed_ms excluded)"
                              : "determinism: CSV outputs differ");
        fs::remove_all(dir);
    }

    int failures = 0;
    for (const auto& r : g_results) failures += r.pass ? 0 : 1;
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
