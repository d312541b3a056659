#include "centagg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "centagg/aggregators.hpp"
#include "centagg/geometry.hpp"
#include "centagg/instance_file.hpp"
#include "centagg/mlp.hpp"
#include "centagg/oracles.hpp"

namespace centagg {

namespace {

Vector random_point(Rng& rng, int d, double scale) {
    Vector v(static_cast<std::size_t>(d));
    for (auto& x : v) x = scale * rng.normal();
    return v;
}

}  // namespace

Layout random_layout(Rng& rng, int max_n, int max_d) {
    Layout layout;
    layout.n = static_cast<int>(rng.uniform_int(4, max_n));
    layout.t = static_cast<int>(rng.uniform_int(0, (layout.n - 1) / 3));
    layout.d = static_cast<int>(rng.uniform_int(1, max_d));
    const double scale = std::exp(rng.uniform(-2.0, 2.0));

    const int style = static_cast<int>(rng.uniform_int(0, 3));
    for (int i = 0; i < layout.n; ++i) {
        Vector v;
        switch (style) {
            case 0:  // iid gaussian
                v = random_point(rng, layout.d, scale);
                break;
            case 1: {  // cluster plus occasional outlier
                v = random_point(rng, layout.d, 0.2 * scale);
                if (rng.uniform() < 0.2) {
                    for (auto& x : v) x += 20.0 * scale * rng.normal();
                }
                break;
            }
            case 2: {  // small integer grid (exercises exact arithmetic)
                v.resize(static_cast<std::size_t>(layout.d));
                for (auto& x : v) x = static_cast<double>(rng.uniform_int(-4, 4));
                break;
            }
            default: {  // duplicates of a few base points
                if (i == 0 || rng.uniform() < 0.4 || layout.received.empty()) {
                    v = random_point(rng, layout.d, scale);
                } else {
                    auto j = static_cast<std::size_t>(
                        rng.uniform_int(0, static_cast<std::int64_t>(layout.received.size()) - 1));
                    v = layout.received[j].value;
                }
                break;
            }
        }
        layout.received.push_back({i, std::move(v)});
    }
    return layout;
}

GeneratedInstance random_adversarial_instance(Rng& rng, int max_n, int max_d) {
    const int n = static_cast<int>(rng.uniform_int(4, max_n));
    const int t = static_cast<int>(rng.uniform_int(1, std::max<std::int64_t>(1, (n - 1) / 3)));
    const int d = static_cast<int>(rng.uniform_int(1, max_d));
    return random_adversarial_instance_fixed(rng, n, t, d);
}

GeneratedInstance random_adversarial_instance_fixed(Rng& rng, int n, int t, int d) {
    if (n < 4 || t < 1 || 3 * t >= n || d < 1) {
        throw std::invalid_argument(
            "random_adversarial_instance: requires n >= 4, 1 <= t < n/3, d >= 1");
    }
    GeneratedInstance inst;
    Layout& layout = inst.layout;
    layout.n = n;
    layout.t = t;
    layout.d = d;
    const double scale = std::exp(rng.uniform(-2.0, 2.0));

    // Honest vectors: a cluster, a box, or two sub-clusters.
    const int family = static_cast<int>(rng.uniform_int(0, 2));
    Vector mu = random_point(rng, layout.d, scale);
    Vector mu2 = random_point(rng, layout.d, scale);
    const double sigma = scale * std::exp(rng.uniform(-2.0, 1.0));

    std::vector<Vector> honest;
    for (int i = 0; i < layout.n - layout.t; ++i) {
        Vector v(static_cast<std::size_t>(layout.d));
        switch (family) {
            case 0:
                for (std::size_t k = 0; k < v.size(); ++k) v[k] = mu[k] + sigma * rng.normal();
                break;
            case 1:
                for (std::size_t k = 0; k < v.size(); ++k) v[k] = mu[k] + sigma * rng.uniform(-1.0, 1.0);
                break;
            default: {
                const Vector& c = rng.uniform() < 0.5 ? mu : mu2;
                for (std::size_t k = 0; k < v.size(); ++k) v[k] = c[k] + 0.3 * sigma * rng.normal();
                break;
            }
        }
        honest.push_back(std::move(v));
    }

    // Faulty vectors: far outliers, sign flips, stealthy duplicates, spikes.
    std::vector<Vector> faulty;
    for (int i = 0; i < layout.t; ++i) {
        const int style = static_cast<int>(rng.uniform_int(0, 3));
        Vector v;
        switch (style) {
            case 0:
                v = random_point(rng, layout.d, scale * std::exp(rng.uniform(0.0, 4.0)));
                break;
            case 1: {
                v = honest[0];
                for (auto& x : v) x = -x;
                break;
            }
            case 2:
                v = honest[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<std::int64_t>(honest.size()) - 1))];
                break;
            default: {
                v = Vector(static_cast<std::size_t>(layout.d), 0.0);
                v[static_cast<std::size_t>(rng.uniform_int(0, layout.d - 1))] =
                    scale * 100.0 * (rng.uniform() < 0.5 ? -1.0 : 1.0);
                break;
            }
        }
        faulty.push_back(std::move(v));
    }

    // Shuffle which client ids are faulty.
    std::vector<int> ids(static_cast<std::size_t>(layout.n));
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(ids);
    std::vector<std::pair<int, Vector>> assigned;
    for (std::size_t i = 0; i < honest.size(); ++i) assigned.emplace_back(ids[i], honest[i]);
    for (std::size_t i = 0; i < faulty.size(); ++i) {
        int id = ids[honest.size() + i];
        assigned.emplace_back(id, faulty[i]);
        inst.truth.faulty_ids.insert(id);
    }
    std::sort(assigned.begin(), assigned.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [id, v] : assigned) {
        layout.received.push_back({id, v});
        if (!inst.truth.faulty_ids.count(id)) inst.truth.honest_vectors.push_back({id, std::move(v)});
    }
    return inst;
}

GeneratedInstance identical_honest_instance(Rng& rng, int max_n, int max_d) {
    GeneratedInstance inst;
    Layout& layout = inst.layout;
    layout.n = static_cast<int>(rng.uniform_int(4, max_n));
    layout.t = static_cast<int>(rng.uniform_int(1, std::max<std::int64_t>(1, (layout.n - 1) / 3)));
    layout.d = static_cast<int>(rng.uniform_int(1, max_d));
    const double scale = std::exp(rng.uniform(-2.0, 2.0));

    Vector v = random_point(rng, layout.d, scale);

    std::vector<int> ids(static_cast<std::size_t>(layout.n));
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(ids);
    std::set<int> faulty_ids(ids.begin(), ids.begin() + layout.t);

    for (int i = 0; i < layout.n; ++i) {
        if (faulty_ids.count(i)) {
            Vector w;
            switch (static_cast<int>(rng.uniform_int(0, 2))) {
                case 0: w = random_point(rng, layout.d, 50.0 * scale); break;
                case 1: w = v; break;  // stealthy: identical to the honest value
                default: {
                    w = v;
                    for (auto& x : w) x += scale * rng.normal();
                    break;
                }
            }
            layout.received.push_back({i, std::move(w)});
            inst.truth.faulty_ids.insert(i);
        } else {
            layout.received.push_back({i, v});
            inst.truth.honest_vectors.push_back({i, v});
        }
    }
    return inst;
}

namespace {

std::string dump(const Layout& layout, const GroundTruth* truth, const std::string& what) {
    std::ostringstream out;
    out << what << "\nreproducer:\n" << instance_to_string(layout, truth);
    return out.str();
}

bool vectors_equal(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != b[k]) return false;
    }
    return true;
}

}  // namespace

std::vector<std::string> check_oracle_equivalence(std::uint64_t seed, int trials) {
    Rng rng(mix64(seed ^ 0x0AC1E5ULL));
    std::vector<std::string> violations;

    for (int trial = 0; trial < trials; ++trial) {
        Layout layout = random_layout(rng, 8, 4);

        // Closed-form centroid hyperbox against enumerated S_Cent extremes.
        Hyperbox ch = centroid_hyperbox(layout);
        Hyperbox brute = brute_force_centroid_hyperbox(layout);
        for (int k = 0; k < layout.d; ++k) {
            auto kk = static_cast<std::size_t>(k);
            if (std::abs(ch.lo[kk] - brute.lo[kk]) > 1e-12 ||
                std::abs(ch.hi[kk] - brute.hi[kk]) > 1e-12) {
                violations.push_back(dump(layout, nullptr,
                                          "centroid_hyperbox closed form differs from brute force "
                                          "at coordinate " + std::to_string(k)));
                break;
            }
        }

        // Box output lies in TTH and CH.
        AggregationResult box = aggregate_box(layout);
        Hyperbox tth = trimmed_trusted_hyperbox(layout);
        if (!tth.contains(box.output, 1e-9) || !ch.contains(box.output, 1e-9)) {
            violations.push_back(dump(layout, nullptr, "box output escapes TTH or CH"));
        }

        // TTH and CH intersect on full layouts.
        if (!hyperbox_intersection(tth, ch, 1e-9).has_value()) {
            violations.push_back(dump(layout, nullptr, "TTH and CH fail to intersect with m = n"));
        }

        // MDA output is exactly one of the enumerated candidate centroids.
        AggregationResult mda = aggregate_mda(layout);
        CandidateCentroidSet cands = candidate_centroids(layout);
        bool found = false;
        for (const auto& c : cands.centroids) {
            if (vectors_equal(c, mda.output)) {
                found = true;
                break;
            }
        }
        if (!found) {
            violations.push_back(dump(layout, nullptr, "mda output is not a candidate centroid"));
        }

        // The mean of all received vectors is the average of all candidate
        // centroids, hence inside CH and the covering ball.
        AggregationResult mean = aggregate_mean(layout);
        if (!ch.contains(mean.output, 1e-9)) {
            violations.push_back(dump(layout, nullptr, "mean of received escapes CH"));
        }
        Ball ball = covering_ball(layout, 1e-4);
        if (euclidean_distance(mean.output, ball.center) > ball.radius * (1.0 + 1e-4) + 1e-9) {
            violations.push_back(dump(layout, nullptr, "mean of received escapes covering ball"));
        }
    }
    return violations;
}

std::vector<std::string> check_upper_bounds(std::uint64_t seed, int trials) {
    Rng rng(mix64(seed ^ 0xB0BD5ULL));
    std::vector<std::string> violations;

    for (int trial = 0; trial < trials; ++trial) {
        GeneratedInstance inst = random_adversarial_instance(rng, 10, 6);
        const Layout& layout = inst.layout;
        const double eps = 1e-4;

        auto ratio_of = [&](const Vector& output) {
            return approximation_ratio(output, inst.truth, layout, eps);
        };

        RatioReport ball = ratio_of(aggregate_ball_center(layout, eps).output);
        if (ball.infinite || ball.ratio > 1.0 + 1e-3) {
            violations.push_back(dump(layout, &inst.truth,
                                      "ball_center ratio " + std::to_string(ball.ratio) +
                                          " exceeds 1 + 1e-3"));
        }

        RatioReport mda = ratio_of(aggregate_mda(layout).output);
        if (mda.infinite || mda.ratio > 2.0 + 1e-6) {
            violations.push_back(dump(layout, &inst.truth,
                                      "mda ratio " + std::to_string(mda.ratio) + " exceeds 2 + 1e-6"));
        }

        AggregationResult box = aggregate_box(layout);
        RatioReport boxr = ratio_of(box.output);
        const double box_bound = 2.0 * std::sqrt(std::min(layout.n, layout.d)) + 1e-6;
        if (boxr.infinite || boxr.ratio > box_bound) {
            violations.push_back(dump(layout, &inst.truth,
                                      "box ratio " + std::to_string(boxr.ratio) + " exceeds " +
                                          std::to_string(box_bound)));
        }

        // Box validity against the honest trusted hyperbox.
        if (!check_validity(ValidityKind::box, inst.truth, layout, box.output, 1e-9)) {
            violations.push_back(dump(layout, &inst.truth, "box output escapes the trusted hyperbox"));
        }

        // TTH sits inside the honest trusted hyperbox when faults <= t.
        {
            Hyperbox tth = trimmed_trusted_hyperbox(layout);
            std::vector<Vector> honest;
            for (const auto& rv : inst.truth.honest_vectors) honest.push_back(rv.value);
            Hyperbox th = bounding_box(honest);
            bool ok = true;
            for (int k = 0; k < layout.d && ok; ++k) {
                auto kk = static_cast<std::size_t>(k);
                ok = tth.lo[kk] >= th.lo[kk] - 1e-12 && tth.hi[kk] <= th.hi[kk] + 1e-12;
            }
            if (!ok) {
                violations.push_back(dump(layout, &inst.truth, "TTH escapes the trusted hyperbox"));
            }
        }

        if (layout.d <= 2 && layout.n <= 12 && satisfies_safe_area_bound(layout)) {
            AggregationResult sa = aggregate_safe_area(layout, eps);
            RatioReport sar = ratio_of(sa.output);
            const double sa_bound = 2.0 * layout.d + 1.0 + 1e-3;
            if (sar.infinite || sar.ratio > sa_bound) {
                violations.push_back(dump(layout, &inst.truth,
                                          "safe_area ratio " + std::to_string(sar.ratio) +
                                              " exceeds " + std::to_string(sa_bound)));
            }
            // Membership in every subset hull, at the layout's scale.
            double extent = 1.0;
            std::vector<Vector> received;
            for (const auto& rv : layout.received) received.push_back(rv.value);
            Hyperbox range = bounding_box(received);
            for (int k = 0; k < layout.d; ++k) {
                auto kk = static_cast<std::size_t>(k);
                extent = std::max(extent, range.hi[kk] - range.lo[kk]);
            }
            CandidateCentroidSet cands = candidate_centroids(layout);
            // Indices refer to the client-id-sorted order.
            std::vector<const Vector*> by_id(received.size());
            {
                std::vector<std::pair<int, const Vector*>> tagged;
                for (const auto& rv : layout.received) tagged.emplace_back(rv.client_id, &rv.value);
                std::sort(tagged.begin(), tagged.end());
                for (std::size_t i = 0; i < tagged.size(); ++i) by_id[i] = tagged[i].second;
            }
            for (const auto& subset : cands.subsets) {
                std::vector<Vector> pts;
                for (int idx : subset) pts.push_back(*by_id[static_cast<std::size_t>(idx)]);
                if (convex_hull_contains(pts, sa.output, 1e-6).residual > 1e-4 * extent) {
                    violations.push_back(dump(layout, &inst.truth,
                                              "safe_area output leaves a subset hull"));
                    break;
                }
            }
        }
    }
    return violations;
}

std::vector<std::string> check_lower_bounds() {
    std::vector<std::string> violations;

    // Forced-output ratios for the box-validity construction.
    const int box_cases[][3] = {{4, 1, 3}, {7, 2, 5}, {10, 3, 8}};
    for (const auto& c : box_cases) {
        const int n = c[0], t = c[1], d = c[2];
        GeneratedInstance inst = gen_box_lb_instance(n, t, d, 1.0);
        Hyperbox tth = trimmed_trusted_hyperbox(inst.layout);
        bool origin_point = true;
        for (int k = 0; k < d; ++k) {
            auto kk = static_cast<std::size_t>(k);
            if (tth.lo[kk] != 0.0 || tth.hi[kk] != 0.0) origin_point = false;
        }
        if (!origin_point) {
            violations.push_back(dump(inst.layout, &inst.truth,
                                      "box lower-bound instance: TTH is not the origin point"));
            continue;
        }
        Vector origin(static_cast<std::size_t>(d), 0.0);
        RatioReport r = approximation_ratio(origin, inst.truth, inst.layout, 1e-6);
        const int min_term = std::min((n - t) / t, d);
        const double bound = std::sqrt(0.5 * min_term) - 1e-9;
        if (r.infinite || r.ratio < bound) {
            violations.push_back(dump(inst.layout, &inst.truth,
                                      "box lower-bound ratio " + std::to_string(r.ratio) +
                                          " below " + std::to_string(bound)));
        }
    }

    // Safe-area construction: measured ratio approaches 2d.
    const struct {
        int n, t, d;
        double eps;
    } convex_cases[] = {{4, 1, 1, 1.0}, {4, 1, 2, 0.1}};
    for (const auto& c : convex_cases) {
        GeneratedInstance inst = gen_convex_lb_instance(c.n, c.t, c.d, c.eps);
        AggregationResult sa = aggregate_safe_area(inst.layout, 1e-6, 1e-7);
        RatioReport r = approximation_ratio(sa.output, inst.truth, inst.layout, 1e-6);
        const double bound = 2.0 * c.d * (1.0 - 0.05);
        if (r.infinite || r.ratio < bound) {
            violations.push_back(dump(inst.layout, &inst.truth,
                                      "convex lower-bound ratio " + std::to_string(r.ratio) +
                                          " below " + std::to_string(bound)));
        }

        // Reported construction geometry: the honest centroid sits near
        // distance t*d/(n-t) from the forced point and the covering radius
        // near t/(2(n-t)), both within the eps discretization.
        Vector cs = cent_star(inst.truth);
        double dist = std::sqrt(std::inner_product(cs.begin(), cs.end(), cs.begin(), 0.0));
        double expect_dist = static_cast<double>(c.t) * c.d / (c.n - c.t);
        if (std::abs(dist - expect_dist) > c.eps + 1e-9) {
            violations.push_back(dump(inst.layout, &inst.truth,
                                      "convex lower-bound Cent* distance " + std::to_string(dist) +
                                          " deviates from " + std::to_string(expect_dist)));
        }
        CandidateCentroidSet cands = candidate_centroids(inst.layout);
        Ball exact = exact_min_enclosing_ball(cands.centroids);
        double expect_rad = static_cast<double>(c.t) / (2.0 * (c.n - c.t));
        if (std::abs(exact.radius - expect_rad) > c.eps + 1e-9) {
            violations.push_back(dump(inst.layout, &inst.truth,
                                      "convex lower-bound radius " + std::to_string(exact.radius) +
                                          " deviates from " + std::to_string(expect_rad)));
        }
    }
    return violations;
}

std::vector<std::string> check_validity_suite(std::uint64_t seed, int trials) {
    Rng rng(mix64(seed ^ 0x7A11D17ULL));
    std::vector<std::string> violations;

    for (int trial = 0; trial < trials; ++trial) {
        // Strong validity: identical honest vectors, arbitrary faults.
        GeneratedInstance inst = identical_honest_instance(rng, 10, 6);
        AggregationResult mda = aggregate_mda(inst.layout);
        if (!check_validity(ValidityKind::strong, inst.truth, inst.layout, mda.output, 1e-12)) {
            violations.push_back(dump(inst.layout, &inst.truth, "mda violates strong validity"));
        }
        AggregationResult box = aggregate_box(inst.layout);
        if (!check_validity(ValidityKind::box, inst.truth, inst.layout, box.output, 1e-12)) {
            violations.push_back(dump(inst.layout, &inst.truth, "box violates box validity"));
        }

        // Weak validity: every client sends the same vector.
        Layout weak;
        weak.n = inst.layout.n;
        weak.t = inst.layout.t;
        weak.d = inst.layout.d;
        const Vector& v = inst.truth.honest_vectors[0].value;
        GroundTruth weak_truth;
        for (int i = 0; i < weak.n; ++i) {
            weak.received.push_back({i, v});
            weak_truth.honest_vectors.push_back({i, v});
        }
        for (const auto& name : aggregator_names()) {
            if (name == "safe_area" && (weak.d > 2 || weak.n > 12)) continue;
            AggregationResult res = get_aggregator(name)(weak);
            if (!check_validity(ValidityKind::weak, weak_truth, weak, res.output, 1e-12)) {
                violations.push_back(dump(weak, &weak_truth,
                                          name + " violates weak validity"));
            }
        }
    }
    return violations;
}

std::vector<std::string> check_gradient_accuracy(std::uint64_t seed, int trials) {
    Rng rng(mix64(seed ^ 0x62AD5ULL));
    std::vector<std::string> violations;

    for (int trial = 0; trial < trials; ++trial) {
        MLPConfig cfg;
        const int inputs = static_cast<int>(rng.uniform_int(2, 6));
        const int classes = static_cast<int>(rng.uniform_int(2, 4));
        cfg.layer_sizes.push_back(inputs);
        const int hidden_layers = static_cast<int>(rng.uniform_int(1, 2));
        for (int h = 0; h < hidden_layers; ++h) {
            cfg.layer_sizes.push_back(static_cast<int>(rng.uniform_int(2, 5)));
        }
        cfg.layer_sizes.push_back(classes);
        cfg.init_seed = rng.next_u64();
        ModelParams params = init_model(cfg);
        // Nudge every parameter off its initial value. Zero-initialized
        // biases put hidden pre-activations exactly on the ReLU kink for
        // samples whose previous layer is fully inactive, which no finite
        // stencil can probe; a generic point has no such alignments.
        for (auto& x : params.flat) x += rng.uniform(-0.05, 0.05);

        Dataset data;
        data.class_count = classes;
        const int batch = static_cast<int>(rng.uniform_int(3, 8));
        std::vector<int> indices;
        for (int i = 0; i < batch; ++i) {
            data.features.push_back(random_point(rng, inputs, 1.0));
            data.labels.push_back(static_cast<int>(rng.uniform_int(0, classes - 1)));
            indices.push_back(i);
        }

        auto [loss0, grad] = forward_loss_grad(params, data, indices);

        const double h = 1e-5;
        int probes = 0;
        for (int attempt = 0; attempt < 60 && probes < 5; ++attempt) {
            auto k = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(params.flat.size()) - 1));
            auto loss_at = [&](double offset) {
                ModelParams moved = params;
                moved.flat[k] += offset;
                return forward_loss_grad(moved, data, indices).first;
            };
            double fp = loss_at(h), fm = loss_at(-h);
            double fp2 = loss_at(2.0 * h), fm2 = loss_at(-2.0 * h);
            double fd = (fp - fm) / (2.0 * h);
            double fd2 = (fp2 - fm2) / (4.0 * h);
            double slope_up = (fp - loss0) / h;
            double slope_down = (loss0 - fm) / h;
            // Central differences are a derivative oracle only where the loss
            // is smooth across the stencil: a ReLU kink off-center breaks the
            // two-step agreement, one at the evaluation point splits the
            // one-sided slopes. Such probes move on to another coordinate.
            double fd_scale = std::max(1.0, std::abs(fd));
            if (std::abs(fd - fd2) > 1e-6 * fd_scale) continue;
            if (std::abs(slope_up - slope_down) > 1e-3 * fd_scale) continue;
            ++probes;
            double rel = std::abs(grad[k] - fd) / std::max({std::abs(grad[k]), std::abs(fd), 1e-3});
            if (rel > 1e-4) {
                violations.push_back("gradient check: coordinate " + std::to_string(k) +
                                     " relative error " + std::to_string(rel) + " (trial " +
                                     std::to_string(trial) + ")");
            }
        }
    }
    return violations;
}

std::vector<std::string> check_geometry_invariants(std::uint64_t seed, int trials) {
    Rng rng(mix64(seed ^ 0x6E0ULL));
    std::vector<std::string> violations;

    for (int trial = 0; trial < trials; ++trial) {
        // Containment of the approximate MEB.
        {
            const int d = static_cast<int>(rng.uniform_int(1, rng.uniform() < 0.9 ? 16 : 256));
            const int m = static_cast<int>(rng.uniform_int(1, rng.uniform() < 0.9 ? 24 : 200));
            std::vector<Vector> pts;
            for (int i = 0; i < m; ++i) pts.push_back(random_point(rng, d, 1.0));
            if (rng.uniform() < 0.3) pts.push_back(pts[0]);  // duplicate
            Ball ball = min_enclosing_ball(pts, 1e-4);
            for (const auto& p : pts) {
                if (euclidean_distance(p, ball.center) > ball.radius * (1.0 + 1e-4) + 1e-12) {
                    violations.push_back("meb containment violated (trial " + std::to_string(trial) + ")");
                    break;
                }
            }
        }

        // Optimality against the exact support-set oracle in low dimension.
        {
            const int d = static_cast<int>(rng.uniform_int(1, 3));
            const int m = static_cast<int>(rng.uniform_int(1, 12));
            std::vector<Vector> pts;
            for (int i = 0; i < m; ++i) pts.push_back(random_point(rng, d, 1.0));
            const double eps = 1e-6;
            Ball approx = min_enclosing_ball(pts, eps);
            Ball exact = exact_min_enclosing_ball(pts);
            if (approx.radius > exact.radius * (1.0 + eps) + 1e-12 ||
                approx.radius < exact.radius - 1e-9) {
                violations.push_back("meb radius " + std::to_string(approx.radius) +
                                     " vs exact " + std::to_string(exact.radius) + " (trial " +
                                     std::to_string(trial) + ")");
            }
        }

        // Hull membership witness soundness and projection idempotence.
        {
            const int d = static_cast<int>(rng.uniform_int(1, 6));
            const int m = static_cast<int>(rng.uniform_int(1, 10));
            std::vector<Vector> pts;
            for (int i = 0; i < m; ++i) pts.push_back(random_point(rng, d, 1.0));

            Vector q(static_cast<std::size_t>(d), 0.0);
            if (rng.uniform() < 0.5) {
                // Random convex combination: guaranteed inside.
                double total = 0.0;
                std::vector<double> w(pts.size());
                for (auto& x : w) {
                    x = rng.uniform();
                    total += x;
                }
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    for (int k = 0; k < d; ++k) {
                        q[static_cast<std::size_t>(k)] += (w[i] / total) * pts[i][static_cast<std::size_t>(k)];
                    }
                }
            } else {
                q = random_point(rng, d, 3.0);
            }

            const double tol = 1e-6;
            HullMembership mem = convex_hull_contains(pts, q, tol);
            if (mem.inside) {
                double wsum = 0.0;
                Vector combo(static_cast<std::size_t>(d), 0.0);
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    if (mem.weights[i] < -tol) {
                        violations.push_back("hull witness has a negative weight (trial " +
                                             std::to_string(trial) + ")");
                    }
                    wsum += mem.weights[i];
                    for (int k = 0; k < d; ++k) {
                        combo[static_cast<std::size_t>(k)] += mem.weights[i] * pts[i][static_cast<std::size_t>(k)];
                    }
                }
                if (std::abs(wsum - 1.0) > tol) {
                    violations.push_back("hull witness weights do not sum to 1 (trial " +
                                         std::to_string(trial) + ")");
                }
                if (euclidean_distance(combo, q) > tol) {
                    violations.push_back("hull witness combination misses the query (trial " +
                                         std::to_string(trial) + ")");
                }
            }

            Vector proj = project_onto_hull(pts, q, 1e-7);
            Vector proj2 = project_onto_hull(pts, proj, 1e-7);
            if (euclidean_distance(proj, proj2) > 1e-6) {
                violations.push_back("hull projection is not idempotent (trial " +
                                     std::to_string(trial) + ")");
            }
        }

        // Hyperbox intersection is commutative and idempotent.
        {
            const int d = static_cast<int>(rng.uniform_int(1, 5));
            auto random_box = [&]() {
                Hyperbox box;
                box.lo.resize(static_cast<std::size_t>(d));
                box.hi.resize(static_cast<std::size_t>(d));
                for (int k = 0; k < d; ++k) {
                    double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
                    box.lo[static_cast<std::size_t>(k)] = std::min(a, b);
                    box.hi[static_cast<std::size_t>(k)] = std::max(a, b);
                }
                return box;
            };
            Hyperbox a = random_box(), b = random_box();
            auto ab = hyperbox_intersection(a, b);
            auto ba = hyperbox_intersection(b, a);
            if (ab.has_value() != ba.has_value()) {
                violations.push_back("hyperbox intersection is not commutative (trial " +
                                     std::to_string(trial) + ")");
            } else if (ab) {
                if (!vectors_equal(ab->lo, ba->lo) || !vectors_equal(ab->hi, ba->hi)) {
                    violations.push_back("hyperbox intersection is not commutative (trial " +
                                         std::to_string(trial) + ")");
                }
                auto abb = hyperbox_intersection(*ab, b);
                if (!abb || !vectors_equal(abb->lo, ab->lo) || !vectors_equal(abb->hi, ab->hi)) {
                    violations.push_back("hyperbox intersection is not idempotent (trial " +
                                         std::to_string(trial) + ")");
                }
            }
            auto aa = hyperbox_intersection(a, a);
            if (!aa || !vectors_equal(aa->lo, a.lo) || !vectors_equal(aa->hi, a.hi)) {
                violations.push_back("hyperbox self-intersection differs (trial " +
                                     std::to_string(trial) + ")");
            }
        }
    }
    return violations;
}

VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed, int trials) {
    VerifyReport report;
    report.suite = suite;

    auto run = [&](const std::string& name, std::vector<std::string> msgs) {
        report.summary_lines.push_back(name + ": " +
                                       (msgs.empty() ? "ok" : std::to_string(msgs.size()) + " violation(s)"));
        report.violations += static_cast<int>(msgs.size());
        for (auto& m : msgs) report.messages.push_back(name + ": " + m);
    };

    bool known = false;
    if (suite == "geometry" || suite == "all") {
        run("geometry", check_geometry_invariants(seed, trials));
        known = true;
    }
    if (suite == "bounds" || suite == "all") {
        run("oracle_equivalence", check_oracle_equivalence(seed, trials));
        run("upper_bounds", check_upper_bounds(seed, trials));
        run("validity", check_validity_suite(seed, trials));
        known = true;
    }
    if (suite == "lowerbounds" || suite == "all") {
        run("lower_bounds", check_lower_bounds());
        known = true;
    }
    if (suite == "gradients" || suite == "all") {
        run("gradients", check_gradient_accuracy(seed, std::min(trials, 50)));
        known = true;
    }
    if (!known) {
        throw ConfigError("unknown verify suite '" + suite +
                          "' (valid: geometry, bounds, lowerbounds, gradients, all)");
    }
    return report;
}

}  // namespace centagg
