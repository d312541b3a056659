#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "centagg/dataio.hpp"
#include "centagg/types.hpp"

namespace centagg {

// Fully-connected ReLU network with a softmax cross-entropy head.
struct MLPConfig {
    std::vector<int> layer_sizes;  // input, hidden..., output (>= 2 entries)
    std::uint64_t init_seed = 0;
};

// Parameters flattened in a fixed order: for each layer l, the weight matrix
// W_l in row-major [out][in] order followed by the bias b_l[out].
struct ModelParams {
    std::vector<int> layer_sizes;
    Vector flat;
};

int param_count(const std::vector<int>& layer_sizes);

// Weights uniform in (-1/sqrt(fan_in), 1/sqrt(fan_in)), biases zero,
// deterministic in init_seed.
ModelParams init_model(const MLPConfig& cfg);

// Mean softmax cross-entropy over the batch and its exact gradient in the
// flat parameter order.
std::pair<double, Vector> forward_loss_grad(const ModelParams& params, const Dataset& data,
                                            std::span<const int> batch);

// (argmax accuracy, mean cross-entropy) over the whole dataset.
std::pair<double, double> evaluate_model(const ModelParams& params, const Dataset& data);

// `steps` sequential mini-batch steps x <- x - lr * gradient_sign * g over
// the shard, with a deterministic batch order drawn from `seed` (reshuffled
// at each epoch boundary). gradient_sign = -1 turns the walk into gradient
// ascent; the simulator uses it for clients whose local training is
// sign-flipped.
ModelParams local_update(const ModelParams& params, const Dataset& data,
                         std::span<const int> shard, int steps, int batch_size, double lr,
                         std::uint64_t seed, double gradient_sign = 1.0);

}  // namespace centagg
