#include "centagg/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace centagg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "dataset.type", "dataset.images_path", "dataset.labels_path", "dataset.csv_path",
        "dataset.synth_d", "dataset.synth_classes", "dataset.synth_per_class",
        "dataset.synth_spread", "dataset.test_fraction",
        "clients.n", "clients.t",
        "attack.kind", "attack.f", "attack.value", "attack.sigma", "attack.magnitude",
        "aggregator.name", "aggregator.eps",
        "training.mode", "training.rounds", "training.lr", "training.local_steps",
        "training.batch_size",
        "partition.scheme",
        "model.hidden",
        "seed",
        "output.csv_path", "output.svg_path",
    };
    return keys;
}

class KeyMap {
  public:
    explicit KeyMap(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string s = trim(line);
            if (s.empty() || s[0] == '#') continue;
            auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
            }
            std::string key = trim(s.substr(0, eq));
            std::string value = trim(s.substr(eq + 1));
            if (!known_keys().count(key)) {
                throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
            }
            if (!entries_.emplace(key, value).second) {
                throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
            }
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    std::string get_string(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError("config: missing required key '" + key + "'");
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& dflt) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? dflt : it->second;
    }

    long long get_int(const std::string& key) const { return to_int(key, get_string(key)); }

    long long get_int(const std::string& key, long long dflt) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? dflt : to_int(key, it->second);
    }

    double get_double(const std::string& key) const { return to_double(key, get_string(key)); }

    double get_double(const std::string& key, double dflt) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? dflt : to_double(key, it->second);
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return dflt;
        try {
            std::size_t used = 0;
            std::uint64_t v = std::stoull(it->second, &used, 0);
            if (used != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' expects an unsigned integer, got '" +
                              it->second + "'");
        }
    }

  private:
    static long long to_int(const std::string& key, const std::string& v) {
        try {
            std::size_t used = 0;
            long long x = std::stoll(v, &used);
            if (used != v.size()) throw std::invalid_argument("trailing");
            return x;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' expects an integer, got '" + v + "'");
        }
    }

    static double to_double(const std::string& key, const std::string& v) {
        try {
            std::size_t used = 0;
            double x = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument("trailing");
            return x;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
        }
    }

    std::map<std::string, std::string> entries_;
};

std::vector<int> parse_hidden(const std::string& spec) {
    std::vector<int> sizes;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size() || v <= 0) throw std::invalid_argument("bad");
            sizes.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("config: model.hidden expects comma-separated positive integers");
        }
    }
    if (sizes.empty()) throw ConfigError("config: model.hidden must name at least one layer");
    return sizes;
}

}  // namespace

RunConfig parse_run_config_text(const std::string& text) {
    KeyMap keys(text);
    RunConfig cfg;

    cfg.dataset_type = keys.get_string("dataset.type");
    if (cfg.dataset_type == "idx") {
        cfg.images_path = keys.get_string("dataset.images_path");
        cfg.labels_path = keys.get_string("dataset.labels_path");
    } else if (cfg.dataset_type == "csv") {
        cfg.csv_path = keys.get_string("dataset.csv_path");
    } else if (cfg.dataset_type == "synth") {
        cfg.synth_d = static_cast<int>(keys.get_int("dataset.synth_d", 8));
        cfg.synth_classes = static_cast<int>(keys.get_int("dataset.synth_classes", 4));
        cfg.synth_per_class = static_cast<int>(keys.get_int("dataset.synth_per_class", 50));
        cfg.synth_spread = keys.get_double("dataset.synth_spread", 0.3);
    } else {
        throw ConfigError("config: dataset.type must be idx, csv or synth (got '" +
                          cfg.dataset_type + "')");
    }
    cfg.test_fraction = keys.get_double("dataset.test_fraction", 0.2);
    if (cfg.test_fraction < 0.0 || cfg.test_fraction >= 1.0) {
        throw ConfigError("config: dataset.test_fraction must be in [0, 1)");
    }

    cfg.train.n = static_cast<int>(keys.get_int("clients.n"));
    cfg.train.t = static_cast<int>(keys.get_int("clients.t"));
    if (cfg.train.n < 1 || cfg.train.t < 0 || 3 * cfg.train.t >= cfg.train.n) {
        throw ConfigError("config: clients must satisfy n >= 1, t >= 0, n > 3t");
    }

    cfg.train.attack.f = static_cast<int>(keys.get_int("attack.f", 0));
    if (cfg.train.attack.f < 0 || cfg.train.attack.f > cfg.train.t) {
        throw ConfigError("config: attack.f must satisfy 0 <= f <= t");
    }
    std::string kind = keys.get_string("attack.kind", "sign_flip");
    try {
        cfg.train.attack.kind = attack_kind_from_string(kind);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (keys.has("attack.value")) {
        cfg.train.attack.fixed_value = Vector{keys.get_double("attack.value")};
    }
    cfg.train.attack.sigma = keys.get_double("attack.sigma", 1.0);
    cfg.train.attack.shift_magnitude = keys.get_double("attack.magnitude", 0.0);

    cfg.train.aggregator = keys.get_string("aggregator.name");
    try {
        get_aggregator(cfg.train.aggregator);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.train.eps = keys.get_double("aggregator.eps", kDefaultMebEps);
    if (!(cfg.train.eps > 0.0)) throw ConfigError("config: aggregator.eps must be > 0");

    std::string mode = keys.get_string("training.mode", "fedsgd");
    try {
        cfg.train.mode = train_mode_from_string(mode);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.train.rounds = static_cast<int>(keys.get_int("training.rounds"));
    if (cfg.train.rounds < 1) throw ConfigError("config: training.rounds must be >= 1");
    cfg.train.lr = keys.get_double("training.lr", 0.01);
    if (!(cfg.train.lr > 0.0)) throw ConfigError("config: training.lr must be > 0");
    cfg.train.local_steps = static_cast<int>(keys.get_int("training.local_steps", 0));
    cfg.train.batch_size = static_cast<int>(keys.get_int("training.batch_size", 32));
    if (cfg.train.local_steps < 0) throw ConfigError("config: training.local_steps must be >= 0");
    if (cfg.train.batch_size < 1) throw ConfigError("config: training.batch_size must be >= 1");

    std::string scheme = keys.get_string("partition.scheme", "homogeneous");
    try {
        cfg.train.scheme = partition_scheme_from_string(scheme);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    if (keys.has("model.hidden")) {
        cfg.train.hidden_sizes = parse_hidden(keys.get_string("model.hidden"));
    }

    cfg.seed = keys.get_u64("seed", 0);
    cfg.train.seed = cfg.seed;

    cfg.csv_out = keys.get_string("output.csv_path");
    cfg.svg_out = keys.get_string("output.svg_path", "");
    return cfg;
}

RunConfig parse_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config_text(ss.str());
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string resolved_config_text(const RunConfig& cfg) {
    std::ostringstream out;
    out << "dataset.type = " << cfg.dataset_type << "\n";
    if (cfg.dataset_type == "idx") {
        out << "dataset.images_path = " << cfg.images_path << "\n";
        out << "dataset.labels_path = " << cfg.labels_path << "\n";
    } else if (cfg.dataset_type == "csv") {
        out << "dataset.csv_path = " << cfg.csv_path << "\n";
    } else {
        out << "dataset.synth_d = " << cfg.synth_d << "\n";
        out << "dataset.synth_classes = " << cfg.synth_classes << "\n";
        out << "dataset.synth_per_class = " << cfg.synth_per_class << "\n";
        out << "dataset.synth_spread = " << fmt_double(cfg.synth_spread) << "\n";
    }
    out << "dataset.test_fraction = " << fmt_double(cfg.test_fraction) << "\n";
    out << "clients.n = " << cfg.train.n << "\n";
    out << "clients.t = " << cfg.train.t << "\n";
    out << "attack.kind = " << to_string(cfg.train.attack.kind) << "\n";
    out << "attack.f = " << cfg.train.attack.f << "\n";
    if (!cfg.train.attack.fixed_value.empty()) {
        out << "attack.value = " << fmt_double(cfg.train.attack.fixed_value[0]) << "\n";
    }
    if (cfg.train.attack.kind == AttackKind::gaussian_noise) {
        out << "attack.sigma = " << fmt_double(cfg.train.attack.sigma) << "\n";
    }
    if (cfg.train.attack.kind == AttackKind::shift) {
        out << "attack.magnitude = " << fmt_double(cfg.train.attack.shift_magnitude) << "\n";
    }
    out << "aggregator.name = " << cfg.train.aggregator << "\n";
    out << "aggregator.eps = " << fmt_double(cfg.train.eps) << "\n";
    out << "training.mode = " << to_string(cfg.train.mode) << "\n";
    out << "training.rounds = " << cfg.train.rounds << "\n";
    out << "training.lr = " << fmt_double(cfg.train.lr) << "\n";
    out << "training.local_steps = " << cfg.train.local_steps << "\n";
    out << "training.batch_size = " << cfg.train.batch_size << "\n";
    out << "partition.scheme = " << to_string(cfg.train.scheme) << "\n";
    out << "model.hidden = ";
    for (std::size_t i = 0; i < cfg.train.hidden_sizes.size(); ++i) {
        if (i) out << ",";
        out << cfg.train.hidden_sizes[i];
    }
    out << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "output.csv_path = " << cfg.csv_out << "\n";
    if (!cfg.svg_out.empty()) out << "output.svg_path = " << cfg.svg_out << "\n";
    return out.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
    std::string text = resolved_config_text(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::pair<Dataset, Dataset> load_configured_dataset(const RunConfig& cfg) {
    Dataset full;
    if (cfg.dataset_type == "idx") {
        full = load_idx(cfg.images_path, cfg.labels_path);
    } else if (cfg.dataset_type == "csv") {
        full = load_csv(cfg.csv_path);
    } else {
        full = synth_blobs(cfg.synth_d, cfg.synth_classes, cfg.synth_per_class, cfg.synth_spread,
                           cfg.seed);
    }
    return split_train_test(full, cfg.test_fraction, cfg.seed);
}

}  // namespace centagg
