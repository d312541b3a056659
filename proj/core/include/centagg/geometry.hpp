#pragma once

#include <optional>
#include <vector>

#include "centagg/types.hpp"

namespace centagg {

// Default tolerances: exact-geometry comparisons vs iterative results.
inline constexpr double kExactTol = 1e-9;
inline constexpr double kIterTol = 1e-6;
inline constexpr double kDefaultMebEps = 1e-4;

double euclidean_distance(const Vector& a, const Vector& b);
double squared_distance(const Vector& a, const Vector& b);

// (1+eps)-approximate minimum enclosing ball.
//
// The returned radius is the exact maximum distance from the returned center
// to the input points, so containment is tight; the certified guarantee is
// radius <= (1+eps) * (exact minimum radius). Internally the point set is
// first projected onto the affine span of the points whenever the ambient
// dimension exceeds the point count (an isometry, so radii are unchanged),
// then solved by a Frank-Wolfe iteration with away steps on the dual.
Ball min_enclosing_ball(const std::vector<Vector>& points, double eps = kDefaultMebEps);

// Per-coordinate [max(lo), min(hi)]; nullopt iff some coordinate has
// max(lo) > min(hi) + tol. Coordinates overlapping only within tol are
// clamped to their (possibly degenerate) midpoint interval so the result
// honors lo <= hi.
std::optional<Hyperbox> hyperbox_intersection(const Hyperbox& a, const Hyperbox& b,
                                              double tol = kExactTol);

// Smallest coordinate-parallel hyperbox containing the points.
Hyperbox bounding_box(const std::vector<Vector>& points);

struct HullMembership {
    bool inside = false;
    std::vector<double> weights;  // convex weights over `points`, valid when inside
    double residual = 0.0;        // || sum_i w_i p_i - query ||
};

// Tests p in conv(points) by solving the minimum-norm-point problem over the
// simplex with pairwise Frank-Wolfe steps (duality-gap stop at tol^2, capped
// at 10,000 iterations).
HullMembership convex_hull_contains(const std::vector<Vector>& points, const Vector& p,
                                    double tol = kIterTol);

// Nearest point to p in conv(points), same solver as convex_hull_contains.
Vector project_onto_hull(const std::vector<Vector>& points, const Vector& p,
                         double tol = kIterTol);

}  // namespace centagg
