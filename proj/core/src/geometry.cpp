#include "centagg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace centagg {

double squared_distance(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "squared_distance");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

double euclidean_distance(const Vector& a, const Vector& b) {
    return std::sqrt(squared_distance(a, b));
}

namespace {

// Frank-Wolfe with away steps on the MEB dual
//   max_{w in simplex}  g(w) = sum_i w_i |p_i|^2 - |sum_i w_i p_i|^2,
// where g(w) = sum_i w_i |p_i - c(w)|^2 and c(w) = sum_i w_i p_i. For any
// feasible w, sqrt(g(w)) lower-bounds the optimal radius, which yields the
// (1+eps) stopping certificate against the exact max distance from c(w).
Ball meb_frank_wolfe(const std::vector<Vector>& pts, double eps) {
    const std::size_t m = pts.size();
    const std::size_t d = pts[0].size();

    if (m == 1) return Ball{pts[0], 0.0};

    // Farthest-point pair init.
    std::size_t a = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
        double s = squared_distance(pts[0], pts[i]);
        if (s > best) {
            best = s;
            a = i;
        }
    }
    std::size_t b = 0;
    best = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
        double s = squared_distance(pts[a], pts[i]);
        if (s > best) {
            best = s;
            b = i;
        }
    }

    std::vector<double> w(m, 0.0);
    Vector c(d, 0.0);
    if (a == b) {
        // All points coincide.
        return Ball{pts[0], 0.0};
    }
    w[a] = 0.5;
    w[b] = 0.5;
    for (std::size_t k = 0; k < d; ++k) c[k] = 0.5 * (pts[a][k] + pts[b][k]);

    auto dual_value = [&]() {
        double g = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (w[i] > 0.0) g += w[i] * squared_distance(pts[i], c);
        }
        return g;
    };

    const int max_iters = 200000;
    const double one_plus = (1.0 + eps) * (1.0 + eps);

    for (int it = 0; it < max_iters; ++it) {
        // Farthest point overall and nearest point in the support.
        std::size_t far = 0, near = m;
        double far_sq = -1.0, near_sq = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double s = squared_distance(pts[i], c);
            if (s > far_sq) {
                far_sq = s;
                far = i;
            }
            if (w[i] > 0.0 && s < near_sq) {
                near_sq = s;
                near = i;
            }
        }

        double g = dual_value();
        if (far_sq <= one_plus * g || far_sq == 0.0) break;

        // Candidate toward-step: w <- (1-alpha) w + alpha e_far,
        // optimal alpha = (|p_far - c|^2 - g) / (2 |p_far - c|^2).
        double toward_gain = far_sq - g;
        // Candidate away-step along w - e_near, bounded by feasibility.
        double away_gain = (near < m) ? g - near_sq : -1.0;

        if (toward_gain >= away_gain) {
            double alpha = toward_gain / (2.0 * far_sq);
            alpha = std::clamp(alpha, 0.0, 1.0);
            if (alpha <= 0.0) break;
            for (std::size_t i = 0; i < m; ++i) w[i] *= (1.0 - alpha);
            w[far] += alpha;
            for (std::size_t k = 0; k < d; ++k) c[k] += alpha * (pts[far][k] - c[k]);
        } else {
            double denom = 2.0 * near_sq;
            double alpha = denom > 0.0 ? away_gain / denom : 0.0;
            double alpha_max = w[near] / (1.0 - w[near]);
            alpha = std::clamp(alpha, 0.0, alpha_max);
            if (alpha <= 0.0) break;
            for (std::size_t i = 0; i < m; ++i) w[i] *= (1.0 + alpha);
            w[near] -= alpha;
            if (w[near] < 1e-18) w[near] = 0.0;
            for (std::size_t k = 0; k < d; ++k) c[k] += alpha * (c[k] - pts[near][k]);
        }
    }

    double r_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) r_sq = std::max(r_sq, squared_distance(pts[i], c));
    return Ball{std::move(c), std::sqrt(r_sq)};
}

}  // namespace

Ball min_enclosing_ball(const std::vector<Vector>& points, double eps) {
    if (points.empty()) throw std::invalid_argument("min_enclosing_ball: empty point list");
    if (!(eps > 0.0)) throw std::invalid_argument("min_enclosing_ball: eps must be > 0");
    const std::size_t d = points[0].size();
    for (const auto& p : points) require_same_dim(points[0], p, "min_enclosing_ball");

    if (d <= points.size()) return meb_frank_wolfe(points, eps);

    // High ambient dimension: the points span an affine subspace of dimension
    // < m. Build an orthonormal basis of span{p_i - p_0} by modified
    // Gram-Schmidt and solve in the (distance-preserving) reduced coordinates.
    const Vector& origin = points[0];
    std::vector<Vector> basis;
    basis.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        Vector v(d);
        for (std::size_t k = 0; k < d; ++k) v[k] = points[i][k] - origin[k];
        for (const auto& bvec : basis) {
            double dot = std::inner_product(v.begin(), v.end(), bvec.begin(), 0.0);
            for (std::size_t k = 0; k < d; ++k) v[k] -= dot * bvec[k];
        }
        double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (norm > 1e-12) {
            for (auto& x : v) x /= norm;
            basis.push_back(std::move(v));
        }
    }

    const std::size_t r = basis.size();
    std::vector<Vector> reduced(points.size(), Vector(r, 0.0));
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < d; ++k) dot += (points[i][k] - origin[k]) * basis[j][k];
            reduced[i][j] = dot;
        }
    }

    Ball low = r == 0 ? Ball{Vector{}, 0.0} : meb_frank_wolfe(reduced, eps);

    Vector center = origin;
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t k = 0; k < d; ++k) center[k] += low.center[j] * basis[j][k];
    }
    double r_sq = 0.0;
    for (const auto& p : points) r_sq = std::max(r_sq, squared_distance(p, center));
    return Ball{std::move(center), std::sqrt(r_sq)};
}

std::optional<Hyperbox> hyperbox_intersection(const Hyperbox& a, const Hyperbox& b, double tol) {
    require_same_dim(a.lo, b.lo, "hyperbox_intersection");
    Hyperbox out;
    out.lo.resize(a.dim());
    out.hi.resize(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) {
        double lo = std::max(a.lo[k], b.lo[k]);
        double hi = std::min(a.hi[k], b.hi[k]);
        if (lo > hi) {
            if (lo - hi > tol) return std::nullopt;
            lo = hi = 0.5 * (lo + hi);
        }
        out.lo[k] = lo;
        out.hi[k] = hi;
    }
    return out;
}

Hyperbox bounding_box(const std::vector<Vector>& points) {
    if (points.empty()) throw std::invalid_argument("bounding_box: empty point list");
    Hyperbox box{points[0], points[0]};
    for (const auto& p : points) {
        require_same_dim(points[0], p, "bounding_box");
        for (std::size_t k = 0; k < p.size(); ++k) {
            box.lo[k] = std::min(box.lo[k], p[k]);
            box.hi[k] = std::max(box.hi[k], p[k]);
        }
    }
    return box;
}

namespace {

struct MinNormResult {
    Vector point;
    std::vector<double> weights;
};

// Minimum-norm point of the translated support set in the affine hull:
// minimize |sum_i a_i u_i| subject to sum a = 1, via the bordered Gram
// system [[G, 1], [1^T, 0]] [a; lambda] = [0; 1]. Returns false when the
// system is numerically singular.
bool affine_min_norm(const std::vector<const Vector*>& support, const Vector& q,
                     std::vector<double>& coeffs) {
    const std::size_t k = support.size();
    const std::size_t d = q.size();
    std::vector<std::vector<double>> sys(k + 1, std::vector<double>(k + 2, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                dot += ((*support[i])[c] - q[c]) * ((*support[j])[c] - q[c]);
            }
            sys[i][j] = dot;
        }
        sys[i][k] = 1.0;
        sys[k][i] = 1.0;
    }
    sys[k][k + 1] = 1.0;

    for (std::size_t col = 0; col <= k; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row <= k; ++row) {
            if (std::abs(sys[row][col]) > std::abs(sys[piv][col])) piv = row;
        }
        if (std::abs(sys[piv][col]) < 1e-14) return false;
        std::swap(sys[piv], sys[col]);
        for (std::size_t row = 0; row <= k; ++row) {
            if (row == col) continue;
            double f = sys[row][col] / sys[col][col];
            for (std::size_t c = col; c <= k + 1; ++c) sys[row][c] -= f * sys[col][c];
        }
    }
    coeffs.resize(k);
    for (std::size_t i = 0; i < k; ++i) coeffs[i] = sys[i][k + 1] / sys[i][i];
    return true;
}

// Wolfe's minimum-norm-point algorithm for
//   min_{w in simplex} |sum_i w_i p_i - q|^2.
// Finitely terminating: alternates a Frank-Wolfe style vertex search with
// exact minimization over the affine hull of the current corral, dropping
// vertices whose coefficients leave the simplex. The conditional-gradient
// stop rule (duality gap <= tol^2, iteration cap) is kept, with a floor at
// the rounding scale of the objective.
MinNormResult min_norm_point(const std::vector<Vector>& pts, const Vector& q, double tol) {
    const std::size_t m = pts.size();
    const std::size_t d = q.size();

    std::size_t start = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        double s = squared_distance(pts[i], q);
        if (s < best) {
            best = s;
            start = i;
        }
    }

    std::vector<std::size_t> corral{start};
    std::vector<double> cw{1.0};
    Vector x = pts[start];

    const double scale = 1.0 + best;
    const double gap_tol = std::max(tol * tol, 1e-13 * scale);

    auto rebuild_x = [&]() {
        x.assign(d, 0.0);
        for (std::size_t i = 0; i < corral.size(); ++i) {
            for (std::size_t c = 0; c < d; ++c) x[c] += cw[i] * pts[corral[i]][c];
        }
    };

    for (int major = 0; major < 10000; ++major) {
        // Vertex most aligned with the descent direction q - x.
        std::size_t s_idx = 0;
        double s_val = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) dot += pts[i][c] * (x[c] - q[c]);
            if (dot < s_val) {
                s_val = dot;
                s_idx = i;
            }
        }
        double x_dot = 0.0;
        for (std::size_t c = 0; c < d; ++c) x_dot += x[c] * (x[c] - q[c]);
        if (2.0 * (x_dot - s_val) <= gap_tol) break;

        bool already = false;
        for (std::size_t i : corral) {
            if (i == s_idx) {
                already = true;
                break;
            }
        }
        if (already) break;  // no progress possible at this precision
        corral.push_back(s_idx);
        cw.push_back(0.0);

        // Minor cycle: exact affine solution, clipped back onto the simplex.
        for (std::size_t minor = 0; minor < 3 * m + 10; ++minor) {
            std::vector<const Vector*> support;
            support.reserve(corral.size());
            for (std::size_t i : corral) support.push_back(&pts[i]);
            std::vector<double> affine;
            if (!affine_min_norm(support, q, affine)) {
                // Degenerate corral: drop the smallest-weight vertex and retry.
                std::size_t drop = 0;
                for (std::size_t i = 1; i < cw.size(); ++i) {
                    if (cw[i] < cw[drop]) drop = i;
                }
                corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(drop));
                cw.erase(cw.begin() + static_cast<std::ptrdiff_t>(drop));
                if (corral.empty()) return MinNormResult{pts[start], [&] {
                                         std::vector<double> w(m, 0.0);
                                         w[start] = 1.0;
                                         return w;
                                     }()};
                continue;
            }

            bool interior = true;
            for (double a : affine) {
                if (a <= 1e-12) {
                    interior = false;
                    break;
                }
            }
            if (interior) {
                cw = affine;
                break;
            }

            // Step from cw toward the affine solution until a coefficient
            // hits zero, then drop those vertices.
            double theta = 1.0;
            for (std::size_t i = 0; i < cw.size(); ++i) {
                if (affine[i] <= 1e-12 && cw[i] - affine[i] > 0.0) {
                    theta = std::min(theta, cw[i] / (cw[i] - affine[i]));
                }
            }
            for (std::size_t i = 0; i < cw.size(); ++i) {
                cw[i] = (1.0 - theta) * cw[i] + theta * affine[i];
            }
            for (std::size_t i = corral.size(); i-- > 0;) {
                if (cw[i] <= 1e-12) {
                    corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(i));
                    cw.erase(cw.begin() + static_cast<std::ptrdiff_t>(i));
                }
            }
            if (corral.empty()) {
                corral.push_back(s_idx);
                cw.push_back(1.0);
            }
        }
        rebuild_x();
    }

    std::vector<double> w(m, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < corral.size(); ++i) {
        w[corral[i]] += cw[i];
        total += cw[i];
    }
    if (total > 0.0) {
        for (auto& v : w) v /= total;
    }
    return MinNormResult{std::move(x), std::move(w)};
}

}  // namespace

HullMembership convex_hull_contains(const std::vector<Vector>& points, const Vector& p, double tol) {
    if (points.empty()) throw std::invalid_argument("convex_hull_contains: empty point list");
    if (!(tol > 0.0)) throw std::invalid_argument("convex_hull_contains: tol must be > 0");
    for (const auto& v : points) require_same_dim(v, p, "convex_hull_contains");

    MinNormResult r = min_norm_point(points, p, tol);
    HullMembership out;
    out.residual = euclidean_distance(r.point, p);
    out.inside = out.residual <= tol;
    if (out.inside) out.weights = std::move(r.weights);
    return out;
}

Vector project_onto_hull(const std::vector<Vector>& points, const Vector& p, double tol) {
    if (points.empty()) throw std::invalid_argument("project_onto_hull: empty point list");
    for (const auto& v : points) require_same_dim(v, p, "project_onto_hull");
    return min_norm_point(points, p, tol).point;
}

}  // namespace centagg
