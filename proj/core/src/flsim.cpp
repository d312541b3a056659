#include "centagg/flsim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "centagg/rng.hpp"

namespace centagg {

TrainMode train_mode_from_string(const std::string& s) {
    if (s == "fedsgd") return TrainMode::fedsgd;
    if (s == "fedavg") return TrainMode::fedavg;
    throw std::invalid_argument("unknown training mode '" + s + "' (valid: fedsgd, fedavg)");
}

PartitionScheme partition_scheme_from_string(const std::string& s) {
    if (s == "homogeneous") return PartitionScheme::homogeneous;
    if (s == "mild") return PartitionScheme::mild;
    if (s == "extreme") return PartitionScheme::extreme;
    throw std::invalid_argument("unknown partition scheme '" + s +
                                "' (valid: homogeneous, mild, extreme)");
}

std::string to_string(TrainMode mode) {
    return mode == TrainMode::fedsgd ? "fedsgd" : "fedavg";
}

std::string to_string(PartitionScheme scheme) {
    switch (scheme) {
        case PartitionScheme::homogeneous: return "homogeneous";
        case PartitionScheme::mild: return "mild";
        case PartitionScheme::extreme: return "extreme";
    }
    return "?";
}

std::vector<std::vector<int>> partition_data(const Dataset& data, PartitionScheme scheme, int n,
                                             std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("partition_data: n must be >= 1");
    if (data.size() < n) throw std::invalid_argument("partition_data: fewer samples than clients");
    Rng rng(mix64(seed ^ 0x9A27171071ULL));

    switch (scheme) {
        case PartitionScheme::homogeneous: {
            std::vector<int> order(static_cast<std::size_t>(data.size()));
            std::iota(order.begin(), order.end(), 0);
            rng.shuffle(order);
            std::vector<std::vector<int>> shards(static_cast<std::size_t>(n));
            const int base = data.size() / n;
            const int extra = data.size() % n;
            std::size_t pos = 0;
            for (int i = 0; i < n; ++i) {
                int take = base + (i < extra ? 1 : 0);
                auto& shard = shards[static_cast<std::size_t>(i)];
                shard.assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                             order.begin() + static_cast<std::ptrdiff_t>(pos + take));
                pos += static_cast<std::size_t>(take);
            }
            return shards;
        }

        case PartitionScheme::mild: {
            // The 10%/5%/15% split defines exactly ten shards per class.
            if (n != 10) throw std::invalid_argument("partition_data: mild scheme requires n = 10");
            std::vector<std::vector<int>> shards(static_cast<std::size_t>(n));
            for (int c = 0; c < data.class_count; ++c) {
                std::vector<int> members;
                for (int i = 0; i < data.size(); ++i) {
                    if (data.labels[static_cast<std::size_t>(i)] == c) members.push_back(i);
                }
                if (static_cast<int>(members.size()) < n) {
                    throw std::invalid_argument("partition_data: class " + std::to_string(c) +
                                                " too small for the mild scheme");
                }
                rng.shuffle(members);
                const auto s = static_cast<int>(members.size());
                const int s5 = s * 5 / 100;
                const int s15 = s * 15 / 100;
                const int rest = s - s5 - s15;

                // Shard sizes in slot order: eight 10% shards, then 5%, then 15%.
                std::vector<int> sizes(10);
                for (int j = 0; j < 8; ++j) sizes[static_cast<std::size_t>(j)] = rest / 8 + (j < rest % 8 ? 1 : 0);
                sizes[8] = s5;
                sizes[9] = s15;

                int pos = 0;
                for (int slot = 0; slot < 10; ++slot) {
                    // Rotate the slot-to-client map by class so the small and
                    // large shards move around the ring.
                    int client = (slot + c) % 10;
                    auto& shard = shards[static_cast<std::size_t>(client)];
                    for (int k = 0; k < sizes[static_cast<std::size_t>(slot)]; ++k) {
                        shard.push_back(members[static_cast<std::size_t>(pos++)]);
                    }
                }
            }
            return shards;
        }

        case PartitionScheme::extreme: {
            std::vector<int> order(static_cast<std::size_t>(data.size()));
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return data.labels[static_cast<std::size_t>(a)] < data.labels[static_cast<std::size_t>(b)];
            });

            const int parts = 2 * n;
            std::vector<std::vector<int>> partitions(static_cast<std::size_t>(parts));
            const int base = data.size() / parts;
            const int extra = data.size() % parts;
            std::size_t pos = 0;
            for (int p = 0; p < parts; ++p) {
                int take = base + (p < extra ? 1 : 0);
                if (take == 0) throw std::invalid_argument("partition_data: extreme scheme needs >= 2n samples");
                auto& part = partitions[static_cast<std::size_t>(p)];
                part.assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                            order.begin() + static_cast<std::ptrdiff_t>(pos + take));
                pos += static_cast<std::size_t>(take);
            }

            // Pair partition p with partition p+n; sorted order makes the two
            // halves hold different labels.
            for (int p = 0; p < n; ++p) {
                int la = data.labels[static_cast<std::size_t>(partitions[static_cast<std::size_t>(p)].front())];
                int lb = data.labels[static_cast<std::size_t>(partitions[static_cast<std::size_t>(p + n)].front())];
                if (la == lb) {
                    throw std::invalid_argument(
                        "partition_data: extreme scheme cannot pair two distinct classes "
                        "(too few classes for 2n partitions)");
                }
            }

            std::vector<int> pair_of_client(static_cast<std::size_t>(n));
            std::iota(pair_of_client.begin(), pair_of_client.end(), 0);
            rng.shuffle(pair_of_client);

            std::vector<std::vector<int>> shards(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                int p = pair_of_client[static_cast<std::size_t>(i)];
                auto& shard = shards[static_cast<std::size_t>(i)];
                const auto& first = partitions[static_cast<std::size_t>(p)];
                const auto& second = partitions[static_cast<std::size_t>(p + n)];
                shard.insert(shard.end(), first.begin(), first.end());
                shard.insert(shard.end(), second.begin(), second.end());
            }
            return shards;
        }
    }
    throw std::invalid_argument("partition_data: unknown scheme");
}

double round_lr(const TrainConfig& cfg, int round) {
    const double decay = cfg.lr / cfg.rounds;
    return cfg.lr / (1.0 + decay * round);
}

namespace {

AggregatorFn make_aggregator(const std::string& name, double eps) {
    // Validates the name (and produces the canonical error) first.
    AggregatorFn fallback = get_aggregator(name);
    if (name == "ball_center") {
        return [eps](const Layout& l) { return aggregate_ball_center(l, eps); };
    }
    if (name == "safe_area") {
        return [eps](const Layout& l) { return aggregate_safe_area(l, eps); };
    }
    return fallback;
}

struct RoundMetrics {
    double rad_cov = 0.0;
    double ratio = 0.0;
    bool infinite = false;
    double diameter = 0.0;
};

RoundMetrics compute_metrics(const Vector& output, const GroundTruth& truth, const Layout& layout,
                             double eps) {
    RoundMetrics m;
    RatioReport report = approximation_ratio(output, truth, layout, eps);
    m.rad_cov = report.rad_cov;
    m.ratio = report.ratio;
    m.infinite = report.infinite;
    m.diameter = nonfaulty_diameter(truth);
    return m;
}

}  // namespace

TrainState init_train_state(const TrainConfig& cfg, const Dataset& train, const Dataset& test) {
    if (cfg.rounds < 1) throw std::invalid_argument("train config: rounds must be >= 1");
    if (!(cfg.lr > 0.0)) throw std::invalid_argument("train config: lr must be > 0");
    if (3 * cfg.t >= cfg.n) throw std::invalid_argument("train config: requires n > 3t");
    if (cfg.attack.f > cfg.t) throw std::invalid_argument("train config: attack.f must be <= t");
    if (cfg.attack.f < 0) throw std::invalid_argument("train config: attack.f must be >= 0");
    if (cfg.batch_size < 1) throw std::invalid_argument("train config: batch_size must be >= 1");
    if (cfg.local_steps < 0) throw std::invalid_argument("train config: local_steps must be >= 0");
    if (train.size() == 0 || test.size() == 0) {
        throw std::invalid_argument("train config: empty dataset");
    }

    TrainState state;
    state.cfg = cfg;
    state.train = &train;
    state.test = &test;
    state.shards = partition_data(train, cfg.scheme, cfg.n, mix64(cfg.seed ^ 0x7A271710ULL));
    state.attacked = select_attacked(cfg.n, cfg.attack.f, mix64(cfg.seed ^ 0xA77AC4ULL));

    MLPConfig mlp;
    mlp.layer_sizes.push_back(train.dim());
    for (int h : cfg.hidden_sizes) mlp.layer_sizes.push_back(h);
    mlp.layer_sizes.push_back(train.class_count);
    mlp.init_seed = mix64(cfg.seed ^ 0x1217ULL);
    state.params = init_model(mlp);

    state.aggregator = make_aggregator(cfg.aggregator, cfg.eps);
    return state;
}

namespace {

bool is_attacked(const TrainState& state, int client) {
    return std::binary_search(state.attacked.begin(), state.attacked.end(), client);
}

RoundRecord finish_round(TrainState& state, const Vector& output, const GroundTruth& truth,
                         const Layout& layout,
                         std::chrono::steady_clock::time_point started) {
    RoundRecord rec;
    rec.round = state.round;

    auto [acc, loss] = evaluate_model(state.params, *state.test);
    rec.accuracy = acc;
    rec.loss = loss;

    RoundMetrics metrics = compute_metrics(output, truth, layout, state.cfg.eps);
    rec.rad_cov = metrics.rad_cov;
    rec.ratio = metrics.ratio;
    rec.ratio_infinite = metrics.infinite;
    rec.nonfaulty_diameter = metrics.diameter;

    rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               started)
                         .count();
    state.round += 1;
    return rec;
}

}  // namespace

RoundRecord run_round_fedsgd(TrainState& state) {
    const auto started = std::chrono::steady_clock::now();
    const TrainConfig& cfg = state.cfg;
    const double lr = round_lr(cfg, state.round);

    Layout layout;
    layout.n = cfg.n;
    layout.t = cfg.t;
    layout.d = static_cast<int>(state.params.flat.size());
    GroundTruth truth;

    for (int client = 0; client < cfg.n; ++client) {
        const auto& shard = state.shards[static_cast<std::size_t>(client)];
        auto [loss, grad] = forward_loss_grad(state.params, *state.train, shard);
        (void)loss;
        if (is_attacked(state, client)) {
            std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(client),
                                          static_cast<std::uint64_t>(state.round));
            auto transmitted = apply_attack(cfg.attack, grad, s);
            if (transmitted) layout.received.push_back({client, std::move(*transmitted)});
        } else {
            layout.received.push_back({client, grad});
            truth.honest_vectors.push_back({client, std::move(grad)});
        }
    }
    for (int id : state.attacked) truth.faulty_ids.insert(id);

    AggregationResult agg = state.aggregator(layout);
    for (std::size_t k = 0; k < state.params.flat.size(); ++k) {
        state.params.flat[k] -= lr * agg.output[k];
    }
    return finish_round(state, agg.output, truth, layout, started);
}

RoundRecord run_round_fedavg(TrainState& state) {
    const auto started = std::chrono::steady_clock::now();
    const TrainConfig& cfg = state.cfg;
    const double lr = round_lr(cfg, state.round);

    Layout layout;
    layout.n = cfg.n;
    layout.t = cfg.t;
    layout.d = static_cast<int>(state.params.flat.size());
    GroundTruth truth;

    for (int client = 0; client < cfg.n; ++client) {
        const auto& shard = state.shards[static_cast<std::size_t>(client)];
        int steps = cfg.local_steps > 0
                        ? cfg.local_steps
                        : static_cast<int>((shard.size() + cfg.batch_size - 1) /
                                           static_cast<std::size_t>(cfg.batch_size));
        std::uint64_t walk_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(client),
                                              static_cast<std::uint64_t>(state.round));

        if (is_attacked(state, client) && cfg.attack.kind == AttackKind::sign_flip) {
            // Sign-flip under parameter exchange: the faulty client negates
            // its per-step gradients during local training and transmits the
            // resulting parameters (recorded in run metadata as
            // fedavg_signflip=local_gradient_flip).
            ModelParams poisoned = local_update(state.params, *state.train, shard, steps,
                                                cfg.batch_size, lr, walk_seed, -1.0);
            layout.received.push_back({client, std::move(poisoned.flat)});
            continue;
        }

        ModelParams updated =
            local_update(state.params, *state.train, shard, steps, cfg.batch_size, lr, walk_seed);
        if (is_attacked(state, client)) {
            auto transmitted = apply_attack(cfg.attack, updated.flat, mix64(walk_seed ^ 0xA77AC2ULL));
            if (transmitted) layout.received.push_back({client, std::move(*transmitted)});
        } else {
            layout.received.push_back({client, updated.flat});
            truth.honest_vectors.push_back({client, std::move(updated.flat)});
        }
    }
    for (int id : state.attacked) truth.faulty_ids.insert(id);

    AggregationResult agg = state.aggregator(layout);
    state.params.flat = agg.output;
    return finish_round(state, agg.output, truth, layout, started);
}

std::vector<RoundRecord> run_training(const TrainConfig& cfg, const Dataset& train,
                                      const Dataset& test, const RoundCallback& on_round) {
    TrainState state = init_train_state(cfg, train, test);
    std::vector<RoundRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.rounds));
    for (int r = 0; r < cfg.rounds; ++r) {
        RoundRecord rec = cfg.mode == TrainMode::fedsgd ? run_round_fedsgd(state)
                                                        : run_round_fedavg(state);
        if (on_round) on_round(rec);
        records.push_back(rec);
    }
    return records;
}

}  // namespace centagg
