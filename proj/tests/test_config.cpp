#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "centagg/instance_file.hpp"
#include "centagg/run_config.hpp"
#include "centagg/runner.hpp"

using namespace centagg;

namespace {

std::string base_config() {
    return "dataset.type = synth\n"
           "dataset.synth_d = 6\n"
           "dataset.synth_classes = 3\n"
           "dataset.synth_per_class = 40\n"
           "dataset.test_fraction = 0.25\n"
           "clients.n = 10\n"
           "clients.t = 3\n"
           "attack.kind = sign_flip\n"
           "attack.f = 1\n"
           "aggregator.name = mda\n"
           "training.mode = fedsgd\n"
           "training.rounds = 5\n"
           "training.lr = 0.1\n"
           "partition.scheme = homogeneous\n"
           "seed = 7\n"
           "output.csv_path = /tmp/centagg_test_out.csv\n";
}

}  // namespace

TEST_CASE("config parses and resolves") {
    RunConfig cfg = parse_run_config_text(base_config());
    CHECK(cfg.train.n == 10);
    CHECK(cfg.train.t == 3);
    CHECK(cfg.train.attack.f == 1);
    CHECK(cfg.train.aggregator == "mda");
    CHECK(cfg.train.rounds == 5);
    CHECK(cfg.seed == 7);
    CHECK(cfg.train.seed == 7);

    // Resolved text re-parses to the same hash.
    std::string resolved = resolved_config_text(cfg);
    RunConfig again = parse_run_config_text(resolved);
    CHECK(config_hash(cfg) == config_hash(again));
}

TEST_CASE("config rejections") {
    CHECK_THROWS_AS(parse_run_config_text("bogus.key = 1\n" + base_config()), ConfigError);
    CHECK_THROWS_AS(parse_run_config_text("dataset.type = synth\n"), ConfigError);  // missing keys

    auto with = [&](const std::string& key, const std::string& value) {
        std::string text;
        std::istringstream in(base_config());
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind(key + " ", 0) == 0) {
                text += key + " = " + value + "\n";
            } else {
                text += line + "\n";
            }
        }
        return text;
    };

    CHECK_THROWS_AS(parse_run_config_text(with("training.rounds", "0")), ConfigError);
    CHECK_THROWS_AS(parse_run_config_text(with("training.rounds", "five")), ConfigError);
    CHECK_THROWS_AS(parse_run_config_text(with("aggregator.name", "krum")), ConfigError);
    CHECK_THROWS_AS(parse_run_config_text(with("clients.t", "4")), ConfigError);     // n > 3t fails
    CHECK_THROWS_AS(parse_run_config_text(with("attack.f", "4")), ConfigError);      // f <= t fails
    CHECK_THROWS_AS(parse_run_config_text(with("attack.kind", "poison")), ConfigError);
    CHECK_THROWS_AS(parse_run_config_text(with("partition.scheme", "iid")), ConfigError);
    CHECK_THROWS_AS(parse_run_config_text(base_config() + "clients.n = 9\n"), ConfigError);  // dup
}

TEST_CASE("csv formatting") {
    RoundRecord rec;
    rec.round = 3;
    rec.accuracy = 0.5;
    rec.loss = 1.25;
    rec.rad_cov = 0.125;
    rec.nonfaulty_diameter = 2.0;
    rec.ratio = 0.75;
    rec.elapsed_ms = 12.5;
    CHECK(csv_header() == "round,accuracy,loss,rad_cov,nonfaulty_diameter,approx_ratio,elapsed_ms");
    CHECK(csv_row(rec) == "3,0.5,1.25,0.125,2,0.75,12.5");

    rec.ratio_infinite = true;
    CHECK(csv_row(rec) == "3,0.5,1.25,0.125,2,inf,12.5");
}

TEST_CASE("execute run writes a deterministic csv") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "centagg_cfg_test";
    fs::create_directories(dir);

    RunConfig cfg = parse_run_config_text(base_config());
    cfg.csv_out = (dir / "a.csv").string();
    cfg.svg_out = (dir / "a.svg").string();
    auto records = execute_run(cfg);
    CHECK(records.size() == 5);

    RunConfig cfg2 = cfg;
    cfg2.csv_out = (dir / "b.csv").string();
    cfg2.svg_out.clear();
    execute_run(cfg2);

    auto strip_elapsed = [](const std::string& path) {
        std::ifstream in(path);
        std::string text, line;
        while (std::getline(in, line)) {
            auto comma = line.rfind(',');
            if (!line.empty() && line[0] != '#' && comma != std::string::npos &&
                line.find("round,") != 0) {
                line = line.substr(0, comma);
            }
            text += line + "\n";
        }
        return text;
    };
    // Identical modulo the final elapsed_ms column (metadata differs only in
    // the output path lines, so compare data rows).
    auto data_rows = [&](const std::string& path) {
        std::string all = strip_elapsed(path);
        return all.substr(all.find("round,"));
    };
    CHECK(data_rows(cfg.csv_out) == data_rows(cfg2.csv_out));

    std::ifstream svg(cfg.svg_out);
    std::string svg_text((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
    CHECK(svg_text.find("<svg") != std::string::npos);
    CHECK(svg_text.find("polyline") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("a short training run improves accuracy") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "centagg_run50";
    fs::create_directories(dir);

    std::string conf = base_config();
    conf.replace(conf.find("training.rounds = 5"), 19, "training.rounds = 50");
    conf.replace(conf.find("training.lr = 0.1"), 17, "training.lr = 0.3");
    RunConfig cfg = parse_run_config_text(conf);
    cfg.csv_out = (dir / "run.csv").string();
    auto records = execute_run(cfg);
    REQUIRE(records.size() == 50);

    // Loosely monotone: clearly better at the end than at the start.
    double first = 0.0, last = 0.0;
    for (int i = 0; i < 5; ++i) {
        first += records[static_cast<std::size_t>(i)].accuracy / 5;
        last += records[records.size() - 1 - static_cast<std::size_t>(i)].accuracy / 5;
    }
    CHECK(last > first);
    CHECK(last >= 0.8);

    // 50 data rows present in the file.
    std::ifstream in(cfg.csv_out);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#' && line.rfind("round,", 0) != 0) ++rows;
    }
    CHECK(rows == 50);
    fs::remove_all(dir);
}

TEST_CASE("instance files round-trip") {
    GeneratedInstance inst = gen_box_lb_instance(4, 1, 3, 1.0);
    std::string text = instance_to_string(inst.layout, &inst.truth);
    CHECK(text.find("4 1 3 4") == 0);
    CHECK(text.find("faulty 3") != std::string::npos);

    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "centagg_instance_test.txt";
    write_instance(path.string(), inst.layout, &inst.truth);
    GeneratedInstance back = read_instance(path.string());
    CHECK(back.layout.n == 4);
    CHECK(back.layout.t == 1);
    CHECK(back.layout.d == 3);
    REQUIRE(back.layout.m() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(back.layout.received[static_cast<std::size_t>(i)].value ==
              inst.layout.received[static_cast<std::size_t>(i)].value);
    }
    CHECK(back.truth.faulty_ids == inst.truth.faulty_ids);
    CHECK(back.truth.honest_vectors.size() == inst.truth.honest_vectors.size());
    fs::remove(path);
}
