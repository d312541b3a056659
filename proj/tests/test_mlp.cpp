#include <doctest.h>

#include <cmath>
#include <numeric>

#include "centagg/mlp.hpp"
#include "centagg/rng.hpp"

using namespace centagg;

namespace {

Dataset tiny_dataset(int n, int d, int classes, std::uint64_t seed) {
    Rng rng(seed);
    Dataset data;
    data.class_count = classes;
    for (int i = 0; i < n; ++i) {
        Vector v(static_cast<std::size_t>(d));
        for (auto& x : v) x = rng.normal();
        data.features.push_back(std::move(v));
        data.labels.push_back(static_cast<int>(rng.uniform_int(0, classes - 1)));
    }
    return data;
}

std::vector<int> all_indices(const Dataset& data) {
    std::vector<int> idx(static_cast<std::size_t>(data.size()));
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

}  // namespace

TEST_CASE("init model") {
    MLPConfig cfg{{4, 3, 2}, 99};
    ModelParams params = init_model(cfg);
    CHECK(params.flat.size() == 4 * 3 + 3 + 3 * 2 + 2);  // 23

    ModelParams again = init_model(cfg);
    CHECK(params.flat == again.flat);

    // Biases land at the tail of each layer block and start at zero.
    for (int i = 0; i < 3; ++i) CHECK(params.flat[static_cast<std::size_t>(12 + i)] == 0.0);
    for (int i = 0; i < 2; ++i) CHECK(params.flat[static_cast<std::size_t>(15 + 6 + i)] == 0.0);

    // Weight scale respects 1/sqrt(fan_in).
    for (int i = 0; i < 12; ++i) CHECK(std::abs(params.flat[static_cast<std::size_t>(i)]) <= 0.5);
}

TEST_CASE("forward loss") {
    SUBCASE("zero weights on two balanced classes give ln 2") {
        MLPConfig cfg{{3, 2}, 1};
        ModelParams params = init_model(cfg);
        for (auto& x : params.flat) x = 0.0;
        Dataset data = tiny_dataset(8, 3, 2, 5);
        auto [loss, grad] = forward_loss_grad(params, data, all_indices(data));
        (void)grad;
        CHECK(loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
    SUBCASE("duplicating the batch keeps the mean loss and gradient") {
        MLPConfig cfg{{4, 3, 2}, 2};
        ModelParams params = init_model(cfg);
        Dataset data = tiny_dataset(6, 4, 2, 6);
        std::vector<int> once = all_indices(data);
        std::vector<int> twice = once;
        twice.insert(twice.end(), once.begin(), once.end());
        auto [l1, g1] = forward_loss_grad(params, data, once);
        auto [l2, g2] = forward_loss_grad(params, data, twice);
        CHECK(l1 == doctest::Approx(l2).epsilon(1e-12));
        for (std::size_t k = 0; k < g1.size(); ++k) {
            CHECK(g1[k] == doctest::Approx(g2[k]).epsilon(1e-12));
        }
    }
    SUBCASE("empty batch and dimension mismatch error") {
        MLPConfig cfg{{4, 3, 2}, 3};
        ModelParams params = init_model(cfg);
        Dataset data = tiny_dataset(4, 3, 2, 7);  // wrong feature dim
        CHECK_THROWS_AS(forward_loss_grad(params, data, all_indices(data)), std::invalid_argument);
        Dataset ok = tiny_dataset(4, 4, 2, 7);
        CHECK_THROWS_AS(forward_loss_grad(params, ok, std::vector<int>{}), std::invalid_argument);
    }
}

TEST_CASE("gradient matches central finite differences") {
    Rng rng(2024);
    MLPConfig cfg{{4, 3, 2}, 11};
    ModelParams params = init_model(cfg);
    // Generic point: zero biases would park dead-input pre-activations
    // exactly on the ReLU kink.
    for (auto& x : params.flat) x += rng.uniform(-0.05, 0.05);
    Dataset data = tiny_dataset(5, 4, 2, 8);
    auto idx = all_indices(data);
    auto [loss, grad] = forward_loss_grad(params, data, idx);

    const double h = 1e-5;
    int probes = 0;
    for (int attempt = 0; attempt < 60 && probes < 5; ++attempt) {
        auto k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(params.flat.size()) - 1));
        auto loss_at = [&](double offset) {
            ModelParams moved = params;
            moved.flat[k] += offset;
            return forward_loss_grad(moved, data, idx).first;
        };
        double fp = loss_at(h), fm = loss_at(-h);
        double fd = (fp - fm) / (2.0 * h);
        double fd2 = (loss_at(2.0 * h) - loss_at(-2.0 * h)) / (4.0 * h);
        // Skip probes whose stencil touches a ReLU kink (step-size
        // disagreement or split one-sided slopes).
        double fd_scale = std::max(1.0, std::abs(fd));
        if (std::abs(fd - fd2) > 1e-6 * fd_scale) continue;
        if (std::abs((fp - loss) / h - (loss - fm) / h) > 1e-3 * fd_scale) continue;
        ++probes;
        double rel = std::abs(grad[k] - fd) / std::max({std::abs(grad[k]), std::abs(fd), 1e-3});
        CHECK(rel <= 1e-4);
    }
    CHECK(probes >= 3);
}

TEST_CASE("evaluate model") {
    SUBCASE("zero weights on ten balanced classes give ln 10") {
        MLPConfig cfg{{5, 10}, 4};
        ModelParams params = init_model(cfg);
        for (auto& x : params.flat) x = 0.0;
        Dataset data;
        data.class_count = 10;
        Rng rng(3);
        for (int c = 0; c < 10; ++c) {
            for (int i = 0; i < 3; ++i) {
                Vector v(5);
                for (auto& x : v) x = rng.normal();
                data.features.push_back(std::move(v));
                data.labels.push_back(c);
            }
        }
        auto [acc, loss] = evaluate_model(params, data);
        (void)acc;
        CHECK(loss == doctest::Approx(std::log(10.0)).epsilon(1e-12));
    }
    SUBCASE("majority-class predictor on a 90/10 split") {
        // Bias strongly toward class 0; weights zero so features are ignored.
        MLPConfig cfg{{2, 2}, 5};
        ModelParams params = init_model(cfg);
        for (auto& x : params.flat) x = 0.0;
        params.flat[params.flat.size() - 2] = 10.0;  // bias of class 0
        Dataset data;
        data.class_count = 2;
        for (int i = 0; i < 10; ++i) {
            data.features.push_back({0.1 * i, -0.2 * i});
            data.labels.push_back(i < 9 ? 0 : 1);
        }
        auto [acc, loss] = evaluate_model(params, data);
        (void)loss;
        CHECK(acc == doctest::Approx(0.9));
    }
}

TEST_CASE("local update") {
    MLPConfig cfg{{4, 3, 2}, 21};
    ModelParams params = init_model(cfg);
    Dataset data = tiny_dataset(12, 4, 2, 9);
    auto idx = all_indices(data);

    SUBCASE("zero learning rate is a no-op") {
        ModelParams out = local_update(params, data, idx, 3, 4, 0.0, 5);
        CHECK(out.flat == params.flat);
    }
    SUBCASE("deterministic in the seed") {
        ModelParams a = local_update(params, data, idx, 5, 4, 0.05, 123);
        ModelParams b = local_update(params, data, idx, 5, 4, 0.05, 123);
        ModelParams c = local_update(params, data, idx, 5, 4, 0.05, 124);
        CHECK(a.flat == b.flat);
        CHECK(a.flat != c.flat);
    }
    SUBCASE("one full-shard step equals one explicit gradient step") {
        ModelParams stepped = local_update(params, data, idx, 1, data.size(), 0.1, 77);
        auto [loss, grad] = forward_loss_grad(params, data, idx);
        (void)loss;
        for (std::size_t k = 0; k < params.flat.size(); ++k) {
            CHECK(stepped.flat[k] == doctest::Approx(params.flat[k] - 0.1 * grad[k]).epsilon(1e-12));
        }
    }
    SUBCASE("empty shard errors") {
        CHECK_THROWS_AS(local_update(params, data, std::vector<int>{}, 1, 4, 0.1, 0),
                        std::invalid_argument);
    }
}
