#include "centagg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "centagg/geometry.hpp"

namespace centagg {

namespace {

// Smallest ball having all of `support` on its boundary, with center in the
// affine hull of the support: solve 2 (q_i - q_0) . c = |q_i|^2 - |q_0|^2 for
// c = q_0 + sum_i a_i (q_i - q_0) by Gaussian elimination on the a_i. Returns
// false when the support is affinely degenerate.
bool circumball(const std::vector<const Vector*>& support, Ball& out) {
    const std::size_t k = support.size();
    const std::size_t d = support[0]->size();
    if (k == 1) {
        out = Ball{*support[0], 0.0};
        return true;
    }

    // Gram system: G a = b with G_ij = u_i . u_j, b_i = |u_i|^2 / 2, where
    // u_i = q_i - q_0.
    const std::size_t r = k - 1;
    std::vector<Vector> u(r, Vector(d));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t c = 0; c < d; ++c) u[i][c] = (*support[i + 1])[c] - (*support[0])[c];
    }
    std::vector<std::vector<double>> g(r, std::vector<double>(r + 1, 0.0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) dot += u[i][c] * u[j][c];
            g[i][j] = dot;
        }
        double sq = 0.0;
        for (std::size_t c = 0; c < d; ++c) sq += u[i][c] * u[i][c];
        g[i][r] = 0.5 * sq;
    }

    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < r; ++row) {
            if (std::abs(g[row][col]) > std::abs(g[piv][col])) piv = row;
        }
        if (std::abs(g[piv][col]) < 1e-12) return false;
        std::swap(g[piv], g[col]);
        for (std::size_t row = 0; row < r; ++row) {
            if (row == col) continue;
            double f = g[row][col] / g[col][col];
            for (std::size_t c = col; c <= r; ++c) g[row][c] -= f * g[col][c];
        }
    }

    Vector center = *support[0];
    for (std::size_t i = 0; i < r; ++i) {
        double a = g[i][r] / g[i][i];
        for (std::size_t c = 0; c < d; ++c) center[c] += a * u[i][c];
    }
    out = Ball{std::move(center), 0.0};
    out.radius = euclidean_distance(out.center, *support[0]);
    return true;
}

}  // namespace

Ball exact_min_enclosing_ball(const std::vector<Vector>& points) {
    if (points.empty()) throw std::invalid_argument("exact_min_enclosing_ball: empty point list");
    const std::size_t d = points[0].size();
    for (const auto& p : points) require_same_dim(points[0], p, "exact_min_enclosing_ball");
    if (d > 3 || points.size() > 12) {
        throw std::invalid_argument("exact_min_enclosing_ball: supports d <= 3 and <= 12 points");
    }

    // Deduplicate to keep circumball systems nonsingular.
    std::vector<const Vector*> unique;
    for (const auto& p : points) {
        bool dup = false;
        for (const auto* q : unique) {
            if (*q == p) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(&p);
    }

    const std::size_t u = unique.size();
    const std::size_t max_support = std::min(u, d + 1);
    Ball best{*unique[0], std::numeric_limits<double>::infinity()};
    const double slack = 1e-9;

    std::vector<std::size_t> pick;
    auto consider = [&](const std::vector<std::size_t>& sel) {
        std::vector<const Vector*> support;
        support.reserve(sel.size());
        for (auto i : sel) support.push_back(unique[i]);
        Ball ball;
        if (!circumball(support, ball)) return;
        if (ball.radius >= best.radius) return;
        for (const auto* q : unique) {
            if (euclidean_distance(*q, ball.center) > ball.radius * (1.0 + slack) + slack) return;
        }
        best = ball;
    };

    // Enumerate support sets of each size.
    for (std::size_t size = 1; size <= max_support; ++size) {
        pick.assign(size, 0);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        if (size > u) break;
        while (true) {
            consider(pick);
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == u - size + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }

    if (!std::isfinite(best.radius)) throw std::runtime_error("exact_min_enclosing_ball: no valid ball");
    return best;
}

Hyperbox brute_force_centroid_hyperbox(const Layout& layout) {
    CandidateCentroidSet cands = candidate_centroids(layout);
    return bounding_box(cands.centroids);
}

}  // namespace centagg
