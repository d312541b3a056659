#include "centagg/aggregators.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "centagg/geometry.hpp"

namespace centagg {

namespace {

// Same canonicalization as the candidates module: results depend only on the
// received multiset, not the arrival order.
std::vector<ReceivedVector> by_client_id(const Layout& layout) {
    std::vector<ReceivedVector> sorted = layout.received;
    std::sort(sorted.begin(), sorted.end(),
              [](const ReceivedVector& a, const ReceivedVector& b) {
                  return a.client_id < b.client_id;
              });
    return sorted;
}

}  // namespace

AggregationResult aggregate_mean(const Layout& layout) {
    validate_layout(layout);
    if (layout.received.empty()) throw std::invalid_argument("aggregate_mean: no received vectors");
    std::vector<ReceivedVector> sorted = by_client_id(layout);
    std::vector<int> all(sorted.size());
    std::iota(all.begin(), all.end(), 0);
    return AggregationResult{mean_of_subset(sorted, all), "mean", {}};
}

AggregationResult aggregate_ball_center(const Layout& layout, double eps) {
    Ball ball = covering_ball(layout, eps);
    AggregationResult res{std::move(ball.center), "ball_center", {}};
    res.diagnostics.ball_radius = ball.radius;
    return res;
}

AggregationResult aggregate_mda(const Layout& layout) {
    validate_layout(layout);
    // Subset indices in CandidateCentroidSet refer to the client-id-sorted
    // order, so measure diameters in the same order.
    std::vector<ReceivedVector> sorted = by_client_id(layout);
    CandidateCentroidSet cands = candidate_centroids(layout);
    const int m = layout.m();

    std::vector<double> dist(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            double dij = euclidean_distance(sorted[static_cast<std::size_t>(i)].value,
                                            sorted[static_cast<std::size_t>(j)].value);
            dist[static_cast<std::size_t>(i * m + j)] = dij;
            dist[static_cast<std::size_t>(j * m + i)] = dij;
        }
    }

    std::size_t best = 0;
    double best_diam = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < cands.subsets.size(); ++s) {
        const auto& subset = cands.subsets[s];
        double diam = 0.0;
        for (std::size_t i = 0; i < subset.size() && diam < best_diam; ++i) {
            for (std::size_t j = i + 1; j < subset.size(); ++j) {
                diam = std::max(diam, dist[static_cast<std::size_t>(subset[i] * m + subset[j])]);
                if (diam >= best_diam) break;
            }
        }
        // Strict < keeps the lexicographically smallest subset on ties.
        if (diam < best_diam) {
            best_diam = diam;
            best = s;
        }
    }

    AggregationResult res{cands.centroids[best], "mda", {}};
    res.diagnostics.chosen_subset = cands.subsets[best];
    return res;
}

AggregationResult aggregate_box(const Layout& layout, double tol) {
    validate_layout(layout);
    Hyperbox tth = trimmed_trusted_hyperbox(layout);
    Hyperbox ch = centroid_hyperbox(layout);

    Vector out(static_cast<std::size_t>(layout.d));
    for (int c = 0; c < layout.d; ++c) {
        auto k = static_cast<std::size_t>(c);
        double lo = std::max(tth.lo[k], ch.lo[k]);
        double hi = std::min(tth.hi[k], ch.hi[k]);
        if (lo > hi && lo - hi > tol) {
            throw IntegrityError("aggregate_box: TTH and CH disjoint at coordinate " +
                                 std::to_string(c) + " by " + std::to_string(lo - hi));
        }
        out[k] = 0.5 * (lo + hi);  // gap midpoint when the overlap is within tol
    }

    AggregationResult res{std::move(out), "box", {}};
    res.diagnostics.trimmed_box = std::move(tth);
    res.diagnostics.centroid_box = std::move(ch);
    return res;
}

AggregationResult aggregate_safe_area(const Layout& layout, double eps, double tol) {
    Ball ball = covering_ball(layout, eps);
    Vector point = safe_area_point(layout, ball.center, tol);
    AggregationResult res{std::move(point), "safe_area", {}};
    res.diagnostics.ball_radius = ball.radius;
    return res;
}

const std::vector<std::string>& aggregator_names() {
    static const std::vector<std::string> names = {"mean", "ball_center", "mda", "box", "safe_area"};
    return names;
}

AggregatorFn get_aggregator(const std::string& name) {
    if (name == "mean") return [](const Layout& l) { return aggregate_mean(l); };
    if (name == "ball_center") return [](const Layout& l) { return aggregate_ball_center(l); };
    if (name == "mda") return [](const Layout& l) { return aggregate_mda(l); };
    if (name == "box") return [](const Layout& l) { return aggregate_box(l); };
    if (name == "safe_area") return [](const Layout& l) { return aggregate_safe_area(l); };
    std::string valid;
    for (const auto& n : aggregator_names()) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw std::invalid_argument("unknown aggregator '" + name + "' (valid: " + valid + ")");
}

}  // namespace centagg
