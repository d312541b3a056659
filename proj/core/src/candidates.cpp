#include "centagg/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace centagg {

void validate_layout(const Layout& layout) {
    if (layout.n <= 0) throw std::invalid_argument("layout: n must be positive");
    if (layout.t < 0) throw std::invalid_argument("layout: t must be non-negative");
    if (3 * layout.t >= layout.n) throw std::invalid_argument("layout: requires t < n/3");
    if (layout.d <= 0) throw std::invalid_argument("layout: d must be positive");
    const int m = layout.m();
    if (m < layout.n - layout.t || m > layout.n) {
        throw std::invalid_argument("layout: received count must satisfy n-t <= m <= n");
    }
    std::set<int> ids;
    for (const auto& rv : layout.received) {
        if (static_cast<int>(rv.value.size()) != layout.d) {
            throw std::invalid_argument("layout: vector dimension differs from d");
        }
        for (double x : rv.value) {
            if (!std::isfinite(x)) throw std::invalid_argument("layout: non-finite coordinate");
        }
        if (!ids.insert(rv.client_id).second) {
            throw std::invalid_argument("layout: duplicate client id " + std::to_string(rv.client_id));
        }
    }
}

bool satisfies_safe_area_bound(const Layout& layout) {
    int denom = std::max(3, layout.d + 1);
    return static_cast<long long>(layout.t) * denom < layout.n;
}

std::uint64_t subset_count_capped(int m, int k) {
    if (k < 0 || k > m) return 0;
    k = std::min(k, m - k);
    const std::uint64_t cap = 2 * kEnumerationCap;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        // Multiply before dividing: C(m-k+i, i) is integral at each step.
        c = c * static_cast<std::uint64_t>(m - k + i) / static_cast<std::uint64_t>(i);
        if (c > cap) return cap;
    }
    return c;
}

Vector mean_of_subset(const std::vector<ReceivedVector>& received, const std::vector<int>& subset) {
    Vector sum(received.empty() ? 0 : received[0].value.size(), 0.0);
    for (int idx : subset) {
        const Vector& v = received[static_cast<std::size_t>(idx)].value;
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += v[k];
    }
    const double inv = 1.0 / static_cast<double>(subset.size());
    for (auto& x : sum) x *= inv;
    return sum;
}

namespace {

// Operations whose result depends on the enumeration order of `received`
// work on a copy sorted by client id, making every aggregate a pure function
// of the received multiset regardless of arrival order.
const Layout* canonical(const Layout& layout, Layout& storage) {
    if (std::is_sorted(layout.received.begin(), layout.received.end(),
                       [](const ReceivedVector& a, const ReceivedVector& b) {
                           return a.client_id < b.client_id;
                       })) {
        return &layout;
    }
    storage = layout;
    std::sort(storage.received.begin(), storage.received.end(),
              [](const ReceivedVector& a, const ReceivedVector& b) {
                  return a.client_id < b.client_id;
              });
    return &storage;
}

// Visits all size-k index subsets of {0..m-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int m, int k, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

void require_enumeration_feasible(const Layout& layout, const char* op) {
    const int k = layout.n - layout.t;
    if (subset_count_capped(layout.m(), k) > kEnumerationCap) {
        throw std::invalid_argument(std::string(op) +
                                    ": subset count exceeds enumeration cap; use the closed-form "
                                    "centroid_hyperbox path instead");
    }
}

}  // namespace

CandidateCentroidSet candidate_centroids(const Layout& layout) {
    validate_layout(layout);
    require_enumeration_feasible(layout, "candidate_centroids");
    Layout storage;
    const Layout& canon = *canonical(layout, storage);
    const int k = canon.n - canon.t;

    CandidateCentroidSet out;
    for_each_subset(canon.m(), k, [&](const std::vector<int>& subset) {
        out.centroids.push_back(mean_of_subset(canon.received, subset));
        out.subsets.push_back(subset);
    });
    return out;
}

Hyperbox centroid_hyperbox(const Layout& layout) {
    validate_layout(layout);
    const int k = layout.n - layout.t;
    const int m = layout.m();

    Hyperbox box;
    box.lo.resize(static_cast<std::size_t>(layout.d));
    box.hi.resize(static_cast<std::size_t>(layout.d));
    std::vector<double> column(static_cast<std::size_t>(m));
    for (int c = 0; c < layout.d; ++c) {
        for (int i = 0; i < m; ++i) {
            column[static_cast<std::size_t>(i)] = layout.received[static_cast<std::size_t>(i)].value[static_cast<std::size_t>(c)];
        }
        std::sort(column.begin(), column.end());
        double lo_sum = 0.0, hi_sum = 0.0;
        for (int i = 0; i < k; ++i) lo_sum += column[static_cast<std::size_t>(i)];
        for (int i = m - k; i < m; ++i) hi_sum += column[static_cast<std::size_t>(i)];
        box.lo[static_cast<std::size_t>(c)] = lo_sum / k;
        box.hi[static_cast<std::size_t>(c)] = hi_sum / k;
    }
    return box;
}

Hyperbox trimmed_trusted_hyperbox(const Layout& layout) {
    validate_layout(layout);
    const int k = layout.n - layout.t;
    const int m = layout.m();

    Hyperbox box;
    box.lo.resize(static_cast<std::size_t>(layout.d));
    box.hi.resize(static_cast<std::size_t>(layout.d));
    std::vector<std::pair<double, int>> column(static_cast<std::size_t>(m));
    for (int c = 0; c < layout.d; ++c) {
        for (int i = 0; i < m; ++i) {
            const auto& rv = layout.received[static_cast<std::size_t>(i)];
            column[static_cast<std::size_t>(i)] = {rv.value[static_cast<std::size_t>(c)], rv.client_id};
        }
        std::sort(column.begin(), column.end());
        // 1-indexed order statistics [m-(n-t)+1, n-t].
        box.lo[static_cast<std::size_t>(c)] = column[static_cast<std::size_t>(m - k)].first;
        box.hi[static_cast<std::size_t>(c)] = column[static_cast<std::size_t>(k - 1)].first;
    }
    return box;
}

Ball covering_ball(const Layout& input, double eps) {
    validate_layout(input);
    require_enumeration_feasible(input, "covering_ball");
    Layout storage;
    const Layout& layout = *canonical(input, storage);
    const int k = layout.n - layout.t;
    const int m = layout.m();
    const int d = layout.d;

    if (d <= m) {
        return min_enclosing_ball(candidate_centroids(layout).centroids, eps);
    }

    // High-dimensional rounds: every candidate centroid lies in the affine
    // span of the received vectors, so build an orthonormal basis of that
    // span (rank < m), enumerate the candidate means in reduced coordinates,
    // and map the solved center back. Distances are preserved exactly.
    const Vector& origin = layout.received[0].value;
    std::vector<Vector> basis;
    basis.reserve(static_cast<std::size_t>(m - 1));
    for (int i = 1; i < m; ++i) {
        Vector v(static_cast<std::size_t>(d));
        const Vector& p = layout.received[static_cast<std::size_t>(i)].value;
        for (int c = 0; c < d; ++c) v[static_cast<std::size_t>(c)] = p[static_cast<std::size_t>(c)] - origin[static_cast<std::size_t>(c)];
        for (const auto& bvec : basis) {
            double dot = std::inner_product(v.begin(), v.end(), bvec.begin(), 0.0);
            for (int c = 0; c < d; ++c) v[static_cast<std::size_t>(c)] -= dot * bvec[static_cast<std::size_t>(c)];
        }
        double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (norm > 1e-12) {
            for (auto& x : v) x /= norm;
            basis.push_back(std::move(v));
        }
    }

    const std::size_t r = basis.size();
    std::vector<ReceivedVector> reduced(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        reduced[static_cast<std::size_t>(i)].client_id = layout.received[static_cast<std::size_t>(i)].client_id;
        Vector& q = reduced[static_cast<std::size_t>(i)].value;
        q.resize(r);
        const Vector& p = layout.received[static_cast<std::size_t>(i)].value;
        for (std::size_t j = 0; j < r; ++j) {
            double dot = 0.0;
            for (int c = 0; c < d; ++c) {
                dot += (p[static_cast<std::size_t>(c)] - origin[static_cast<std::size_t>(c)]) * basis[j][static_cast<std::size_t>(c)];
            }
            q[j] = dot;
        }
    }

    std::vector<Vector> reduced_centroids;
    for_each_subset(m, k, [&](const std::vector<int>& subset) {
        reduced_centroids.push_back(mean_of_subset(reduced, subset));
    });
    Ball low = min_enclosing_ball(reduced_centroids, eps);

    Vector center = origin;
    for (std::size_t j = 0; j < r; ++j) {
        for (int c = 0; c < d; ++c) {
            center[static_cast<std::size_t>(c)] += low.center[j] * basis[j][static_cast<std::size_t>(c)];
        }
    }
    return Ball{std::move(center), low.radius};
}

namespace {

double cross(const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone-chain convex hull (counter-clockwise, duplicates removed).
std::vector<Vector> hull_2d(std::vector<Vector> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t k = pts.size();
    if (k <= 2) return pts;
    std::vector<Vector> hull(2 * k);
    std::size_t h = 0;
    for (std::size_t i = 0; i < k; ++i) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0.0) --h;
        hull[h++] = pts[i];
    }
    for (std::size_t i = k - 1, lower = h + 1; i-- > 0;) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0.0) --h;
        hull[h++] = pts[i];
    }
    hull.resize(h - 1);
    return hull;
}

Vector project_segment(const Vector& a, const Vector& b, const Vector& p) {
    double ab0 = b[0] - a[0], ab1 = b[1] - a[1];
    double len_sq = ab0 * ab0 + ab1 * ab1;
    if (len_sq <= 0.0) return a;
    double s = ((p[0] - a[0]) * ab0 + (p[1] - a[1]) * ab1) / len_sq;
    s = std::clamp(s, 0.0, 1.0);
    return Vector{a[0] + s * ab0, a[1] + s * ab1};
}

// Exact nearest point of conv(pts) in the plane. Safe-area instances are
// restricted to d <= 2, where the iterative hull projection is both slower
// and too loose for the sliver-shaped subset hulls far outliers produce.
Vector project_hull_exact_2d(const std::vector<Vector>& pts, const Vector& p) {
    std::vector<Vector> hull = hull_2d(pts);
    if (hull.size() >= 3) {
        bool inside = true;
        for (std::size_t i = 0; i < hull.size() && inside; ++i) {
            const Vector& a = hull[i];
            const Vector& b = hull[(i + 1) % hull.size()];
            if (cross(a, b, p) < 0.0) inside = false;
        }
        if (inside) return p;
    }
    Vector best = hull[0];
    double best_sq = squared_distance(best, p);
    auto consider = [&](const Vector& q) {
        double s = squared_distance(q, p);
        if (s < best_sq) {
            best_sq = s;
            best = q;
        }
    };
    if (hull.size() == 1) return hull[0];
    if (hull.size() == 2) {
        consider(project_segment(hull[0], hull[1], p));
        return best;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        consider(project_segment(hull[i], hull[(i + 1) % hull.size()], p));
    }
    return best;
}

Vector project_hull_low_dim(const std::vector<Vector>& pts, const Vector& p) {
    if (p.size() == 1) {
        double lo = pts[0][0], hi = pts[0][0];
        for (const auto& q : pts) {
            lo = std::min(lo, q[0]);
            hi = std::max(hi, q[0]);
        }
        return Vector{std::clamp(p[0], lo, hi)};
    }
    return project_hull_exact_2d(pts, p);
}

// Closed half-plane {x : n . x <= c}.
struct HalfPlane {
    double nx, ny, c;
};

// Exact half-plane representation of a planar convex hull, covering the
// degenerate point and segment cases.
void append_hull_halfplanes(const std::vector<Vector>& pts, std::vector<HalfPlane>& out) {
    std::vector<Vector> hull = hull_2d(pts);
    if (hull.size() == 1) {
        const Vector& p = hull[0];
        out.push_back({1.0, 0.0, p[0]});
        out.push_back({-1.0, 0.0, -p[0]});
        out.push_back({0.0, 1.0, p[1]});
        out.push_back({0.0, -1.0, -p[1]});
        return;
    }
    if (hull.size() == 2) {
        const Vector &a = hull[0], &b = hull[1];
        double dx = b[0] - a[0], dy = b[1] - a[1];
        // Both sides of the carrier line plus the endpoint caps.
        out.push_back({-dy, dx, -dy * a[0] + dx * a[1]});
        out.push_back({dy, -dx, dy * a[0] - dx * a[1]});
        out.push_back({-dx, -dy, -dx * a[0] - dy * a[1]});
        out.push_back({dx, dy, dx * b[0] + dy * b[1]});
        return;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vector& a = hull[i];
        const Vector& b = hull[(i + 1) % hull.size()];
        // CCW edge a->b keeps the interior on its left: outward normal
        // (dy, -dx).
        double dx = b[0] - a[0], dy = b[1] - a[1];
        out.push_back({dy, -dx, dy * a[0] - dx * a[1]});
    }
}

// Sutherland-Hodgman clip of a convex region (vertex list) by a half-plane,
// with slack delta pushing the boundary outward.
std::vector<Vector> clip_region(const std::vector<Vector>& region, const HalfPlane& hp,
                                double delta) {
    std::vector<Vector> out;
    const std::size_t k = region.size();
    if (k == 0) return out;
    auto value = [&](const Vector& p) { return hp.nx * p[0] + hp.ny * p[1] - hp.c - delta; };
    for (std::size_t i = 0; i < k; ++i) {
        const Vector& cur = region[i];
        const Vector& nxt = region[(i + 1) % k];
        double vc = value(cur), vn = value(nxt);
        if (vc <= 0.0) out.push_back(cur);
        if ((vc < 0.0 && vn > 0.0) || (vc > 0.0 && vn < 0.0)) {
            double s = vc / (vc - vn);
            out.push_back(Vector{cur[0] + s * (nxt[0] - cur[0]), cur[1] + s * (nxt[1] - cur[1])});
        }
        if (k == 1) break;  // a single point has no edges to intersect
    }
    return out;
}

}  // namespace

Vector safe_area_point(const Layout& input, const Vector& target, double tol) {
    validate_layout(input);
    Layout storage;
    const Layout& layout = *canonical(input, storage);
    require_same_dim(target, layout.received.empty() ? target : layout.received[0].value,
                     "safe_area_point");
    if (layout.d > 2 || layout.n > 12 || !satisfies_safe_area_bound(layout)) {
        throw std::invalid_argument(
            "safe_area_point: unsupported instance (requires d <= 2, n <= 12, t < n/max{3,d+1})");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("safe_area_point: tol must be > 0");

    const int k = layout.n - layout.t;
    std::vector<std::vector<Vector>> hulls;
    for_each_subset(layout.m(), k, [&](const std::vector<int>& subset) {
        std::vector<Vector> pts;
        pts.reserve(subset.size());
        for (int idx : subset) pts.push_back(layout.received[static_cast<std::size_t>(idx)].value);
        hulls.push_back(std::move(pts));
    });

    double extent = 1.0;
    for (int c = 0; c < layout.d; ++c) {
        double lo = layout.received[0].value[static_cast<std::size_t>(c)];
        double hi = lo;
        for (const auto& rv : layout.received) {
            lo = std::min(lo, rv.value[static_cast<std::size_t>(c)]);
            hi = std::max(hi, rv.value[static_cast<std::size_t>(c)]);
        }
        extent = std::max(extent, hi - lo);
    }

    if (layout.d == 1) {
        // Every subset hull is an interval; the safe area is their overlap.
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (const auto& hull : hulls) {
            double a = hull[0][0], b = hull[0][0];
            for (const auto& p : hull) {
                a = std::min(a, p[0]);
                b = std::max(b, p[0]);
            }
            lo = std::max(lo, a);
            hi = std::min(hi, b);
        }
        if (lo > hi) {
            if (lo - hi > 1e-9 * extent) {
                throw IntegrityError("safe_area_point: empty interval intersection (gap " +
                                     std::to_string(lo - hi) + ")");
            }
            lo = hi = 0.5 * (lo + hi);
        }
        return Vector{std::clamp(target[0], lo, hi)};
    }

    // d == 2: the safe area is an exact intersection of convex polygons, so
    // clip a running region by every hull's half-planes. A graduated outward
    // slack absorbs the rounding collapse of pinch-point intersections
    // (theory guarantees the exact intersection is nonempty).
    std::vector<HalfPlane> planes;
    for (const auto& hull : hulls) append_hull_halfplanes(hull, planes);

    std::vector<Vector> region;
    for (double slack : {0.0, 1e-13, 1e-11, 1e-9, 1e-7, 1e-6}) {
        region = hull_2d(hulls[0]);
        const double delta = slack * extent;
        for (const auto& hp : planes) {
            // The half-plane normals are edge-length scaled; normalize the
            // slack accordingly.
            double norm = std::sqrt(hp.nx * hp.nx + hp.ny * hp.ny);
            region = clip_region(region, hp, delta * (norm > 0.0 ? norm : 1.0));
            if (region.empty()) break;
        }
        if (!region.empty()) break;
    }
    if (region.empty()) {
        throw IntegrityError("safe_area_point: empty numerical intersection after clipping");
    }
    return project_hull_exact_2d(region, target);
}

}  // namespace centagg
