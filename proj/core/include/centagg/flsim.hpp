#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "centagg/aggregators.hpp"
#include "centagg/attacks.hpp"
#include "centagg/dataio.hpp"
#include "centagg/evaluation.hpp"
#include "centagg/mlp.hpp"

namespace centagg {

enum class TrainMode { fedsgd, fedavg };
enum class PartitionScheme { homogeneous, mild, extreme };

TrainMode train_mode_from_string(const std::string& s);
PartitionScheme partition_scheme_from_string(const std::string& s);
std::string to_string(TrainMode mode);
std::string to_string(PartitionScheme scheme);

struct TrainConfig {
    TrainMode mode = TrainMode::fedsgd;
    int rounds = 1;
    double lr = 0.01;
    int n = 10;
    int t = 3;
    std::string aggregator = "mean";
    double eps = kDefaultMebEps;
    AttackSpec attack;
    PartitionScheme scheme = PartitionScheme::homogeneous;
    int local_steps = 0;   // fedavg; 0 means one epoch over the shard
    int batch_size = 32;   // fedavg
    std::uint64_t seed = 0;
    std::vector<int> hidden_sizes = {32, 16};
};

struct RoundRecord {
    int round = 0;
    double accuracy = 0.0;
    double loss = 0.0;
    double rad_cov = 0.0;
    double nonfaulty_diameter = 0.0;
    double ratio = 0.0;
    bool ratio_infinite = false;
    double elapsed_ms = 0.0;
};

// Disjoint cover of all training indices.
//   homogeneous: seeded shuffle, split into n near-equal shards.
//   mild: per class, shards of 10% x (n-2), 5% and 15%, dealt so each client
//         receives one shard per class with the 5%/15% shards rotating by
//         class (requires n = 10 per the percentage split).
//   extreme: indices sorted by label, cut into 2n contiguous partitions;
//            client i receives partitions (p_i, p_i + n) for a seeded
//            permutation p, which pairs two distinct labels per client.
std::vector<std::vector<int>> partition_data(const Dataset& data, PartitionScheme scheme, int n,
                                             std::uint64_t seed);

struct TrainState {
    TrainConfig cfg;
    const Dataset* train = nullptr;
    const Dataset* test = nullptr;
    std::vector<std::vector<int>> shards;
    std::vector<int> attacked;  // sorted client ids, fixed for the run
    ModelParams params;
    AggregatorFn aggregator;
    int round = 0;
};

TrainState init_train_state(const TrainConfig& cfg, const Dataset& train, const Dataset& test);

// Learning rate for round r: lr / (1 + decay * r) with decay = lr / rounds.
double round_lr(const TrainConfig& cfg, int round);

// One synchronous round. Honest clients compute full-shard gradients at the
// global parameters (FedSGD) or run a local update (FedAvg); attacked clients
// transform what they send; the aggregator combines the received layout; and
// metrics are computed against the honest ground truth. Advances state.round.
RoundRecord run_round_fedsgd(TrainState& state);
RoundRecord run_round_fedavg(TrainState& state);

using RoundCallback = std::function<void(const RoundRecord&)>;

// Full training loop; invokes the callback after every round.
std::vector<RoundRecord> run_training(const TrainConfig& cfg, const Dataset& train,
                                      const Dataset& test, const RoundCallback& on_round = {});

}  // namespace centagg
