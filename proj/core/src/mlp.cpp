#include "centagg/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "centagg/rng.hpp"

namespace centagg {

int param_count(const std::vector<int>& layer_sizes) {
    if (layer_sizes.size() < 2) throw std::invalid_argument("param_count: need >= 2 layers");
    int total = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        total += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
    }
    return total;
}

ModelParams init_model(const MLPConfig& cfg) {
    if (cfg.layer_sizes.size() < 2) throw std::invalid_argument("init_model: need >= 2 layers");
    for (int s : cfg.layer_sizes) {
        if (s <= 0) throw std::invalid_argument("init_model: layer sizes must be positive");
    }
    ModelParams params;
    params.layer_sizes = cfg.layer_sizes;
    params.flat.resize(static_cast<std::size_t>(param_count(cfg.layer_sizes)));

    Rng rng(cfg.init_seed);
    std::size_t pos = 0;
    for (std::size_t l = 0; l + 1 < cfg.layer_sizes.size(); ++l) {
        const int fan_in = cfg.layer_sizes[l];
        const int fan_out = cfg.layer_sizes[l + 1];
        const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (int i = 0; i < fan_out * fan_in; ++i) params.flat[pos++] = rng.uniform(-scale, scale);
        for (int i = 0; i < fan_out; ++i) params.flat[pos++] = 0.0;  // biases
    }
    return params;
}

namespace {

struct LayerView {
    const double* weights;  // [out][in] row-major
    const double* biases;   // [out]
    int in, out;
};

std::vector<LayerView> layer_views(const ModelParams& params) {
    std::vector<LayerView> views;
    std::size_t pos = 0;
    for (std::size_t l = 0; l + 1 < params.layer_sizes.size(); ++l) {
        LayerView v;
        v.in = params.layer_sizes[l];
        v.out = params.layer_sizes[l + 1];
        v.weights = params.flat.data() + pos;
        pos += static_cast<std::size_t>(v.in) * static_cast<std::size_t>(v.out);
        v.biases = params.flat.data() + pos;
        pos += static_cast<std::size_t>(v.out);
        views.push_back(v);
    }
    return views;
}

// Forward pass storing post-activation values per layer; activations[0] is
// the input. Returns the final logits in activations.back().
void forward(const std::vector<LayerView>& layers, const Vector& input,
             std::vector<Vector>& activations) {
    activations.resize(layers.size() + 1);
    activations[0] = input;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const LayerView& L = layers[l];
        Vector& out = activations[l + 1];
        out.assign(static_cast<std::size_t>(L.out), 0.0);
        const Vector& in = activations[l];
        for (int o = 0; o < L.out; ++o) {
            const double* row = L.weights + static_cast<std::size_t>(o) * static_cast<std::size_t>(L.in);
            double acc = L.biases[o];
            for (int i = 0; i < L.in; ++i) acc += row[i] * in[static_cast<std::size_t>(i)];
            const bool is_last = (l + 1 == layers.size());
            out[static_cast<std::size_t>(o)] = is_last ? acc : std::max(acc, 0.0);
        }
    }
}

// Numerically stable softmax cross-entropy: returns loss and overwrites
// logits with softmax probabilities.
double softmax_cross_entropy(Vector& logits, int label) {
    double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (auto& z : logits) {
        z = std::exp(z - mx);
        sum += z;
    }
    for (auto& z : logits) z /= sum;
    double p = std::max(logits[static_cast<std::size_t>(label)], 1e-300);
    return -std::log(p);
}

}  // namespace

std::pair<double, Vector> forward_loss_grad(const ModelParams& params, const Dataset& data,
                                            std::span<const int> batch) {
    if (batch.empty()) throw std::invalid_argument("forward_loss_grad: empty batch");
    if (data.dim() != params.layer_sizes.front()) {
        throw std::invalid_argument("forward_loss_grad: feature dimension does not match input layer");
    }
    const auto layers = layer_views(params);
    Vector grad(params.flat.size(), 0.0);
    double loss = 0.0;

    std::vector<Vector> activations;
    std::vector<Vector> deltas(layers.size());
    const double inv_batch = 1.0 / static_cast<double>(batch.size());

    for (int idx : batch) {
        const Vector& x = data.features[static_cast<std::size_t>(idx)];
        const int y = data.labels[static_cast<std::size_t>(idx)];
        forward(layers, x, activations);

        Vector probs = activations.back();
        loss += softmax_cross_entropy(probs, y) * inv_batch;

        // delta for the output layer: (p - onehot(y)) / B
        Vector& out_delta = deltas.back();
        out_delta.assign(probs.size(), 0.0);
        for (std::size_t c = 0; c < probs.size(); ++c) {
            out_delta[c] = (probs[c] - (static_cast<int>(c) == y ? 1.0 : 0.0)) * inv_batch;
        }

        // Backpropagate through the ReLU layers.
        for (std::size_t l = layers.size(); l-- > 0;) {
            const LayerView& L = layers[l];
            const Vector& in = activations[l];
            const Vector& delta = deltas[l];

            std::size_t base = 0;
            for (std::size_t ll = 0; ll < l; ++ll) {
                base += static_cast<std::size_t>(layers[ll].in) * static_cast<std::size_t>(layers[ll].out) +
                        static_cast<std::size_t>(layers[ll].out);
            }
            double* gw = grad.data() + base;
            double* gb = gw + static_cast<std::size_t>(L.in) * static_cast<std::size_t>(L.out);
            for (int o = 0; o < L.out; ++o) {
                const double dl = delta[static_cast<std::size_t>(o)];
                if (dl != 0.0) {
                    double* row = gw + static_cast<std::size_t>(o) * static_cast<std::size_t>(L.in);
                    for (int i = 0; i < L.in; ++i) row[i] += dl * in[static_cast<std::size_t>(i)];
                    gb[o] += dl;
                }
            }

            if (l > 0) {
                Vector& prev_delta = deltas[l - 1];
                prev_delta.assign(static_cast<std::size_t>(L.in), 0.0);
                for (int o = 0; o < L.out; ++o) {
                    const double dl = delta[static_cast<std::size_t>(o)];
                    if (dl == 0.0) continue;
                    const double* row = L.weights + static_cast<std::size_t>(o) * static_cast<std::size_t>(L.in);
                    for (int i = 0; i < L.in; ++i) prev_delta[static_cast<std::size_t>(i)] += dl * row[i];
                }
                // ReLU derivative on the hidden activation.
                for (int i = 0; i < L.in; ++i) {
                    if (activations[l][static_cast<std::size_t>(i)] <= 0.0) {
                        prev_delta[static_cast<std::size_t>(i)] = 0.0;
                    }
                }
            }
        }
    }
    return {loss, std::move(grad)};
}

std::pair<double, double> evaluate_model(const ModelParams& params, const Dataset& data) {
    if (data.size() == 0) throw std::invalid_argument("evaluate_model: empty dataset");
    const auto layers = layer_views(params);
    std::vector<Vector> activations;
    int correct = 0;
    double loss = 0.0;
    for (int idx = 0; idx < data.size(); ++idx) {
        forward(layers, data.features[static_cast<std::size_t>(idx)], activations);
        Vector probs = activations.back();
        int pred = static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
        if (pred == data.labels[static_cast<std::size_t>(idx)]) ++correct;
        loss += softmax_cross_entropy(probs, data.labels[static_cast<std::size_t>(idx)]);
    }
    return {static_cast<double>(correct) / data.size(), loss / data.size()};
}

ModelParams local_update(const ModelParams& params, const Dataset& data,
                         std::span<const int> shard, int steps, int batch_size, double lr,
                         std::uint64_t seed, double gradient_sign) {
    if (shard.empty()) throw std::invalid_argument("local_update: empty shard");
    if (steps < 1) throw std::invalid_argument("local_update: steps must be >= 1");
    if (batch_size < 1) throw std::invalid_argument("local_update: batch_size must be >= 1");

    ModelParams current = params;
    Rng rng(seed);
    std::vector<int> order(shard.begin(), shard.end());
    rng.shuffle(order);
    std::size_t cursor = 0;

    for (int s = 0; s < steps; ++s) {
        if (cursor >= order.size()) {
            rng.shuffle(order);
            cursor = 0;
        }
        std::size_t take = std::min(static_cast<std::size_t>(batch_size), order.size() - cursor);
        std::span<const int> batch(order.data() + cursor, take);
        cursor += take;

        auto [loss, grad] = forward_loss_grad(current, data, batch);
        (void)loss;
        for (std::size_t k = 0; k < current.flat.size(); ++k) {
            current.flat[k] -= lr * gradient_sign * grad[k];
        }
    }
    return current;
}

}  // namespace centagg
