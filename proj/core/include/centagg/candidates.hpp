#pragma once

#include <cstdint>
#include <vector>

#include "centagg/geometry.hpp"
#include "centagg/types.hpp"

namespace centagg {

// Server-side view of one round: n clients, fault bound t, dimension d, and
// the m received vectors with sender identities (n-t <= m <= n).
struct Layout {
    int n = 0;
    int t = 0;
    int d = 0;
    std::vector<ReceivedVector> received;

    int m() const { return static_cast<int>(received.size()); }
};

// Throws std::invalid_argument unless: t < n/3, n-t <= m <= n, all vectors
// finite and of dimension d, client ids distinct.
void validate_layout(const Layout& layout);

// Additional bound t < n / max{3, d+1} required by safe-area operations.
bool satisfies_safe_area_bound(const Layout& layout);

struct CandidateCentroidSet {
    std::vector<Vector> centroids;          // one per size-(n-t) subset, lexicographic
    std::vector<std::vector<int>> subsets;  // index subsets into the client-id-sorted received list
};

// C(m, n-t) beyond this count makes candidate enumeration refuse to run.
inline constexpr std::uint64_t kEnumerationCap = 1000000;

// Number of size-k subsets of an m-set, saturating at 2 * kEnumerationCap.
std::uint64_t subset_count_capped(int m, int k);

// Mean of the selected received vectors, accumulated in increasing index
// order. Shared by candidate enumeration and MDA so their outputs match
// bit for bit.
Vector mean_of_subset(const std::vector<ReceivedVector>& received, const std::vector<int>& subset);

// All centroids of size-(n-t) subsets of the received vectors, in
// deterministic lexicographic subset order.
CandidateCentroidSet candidate_centroids(const Layout& layout);

// Smallest coordinate-parallel hyperbox containing the candidate centroid
// set, computed in closed form: per coordinate, the mean of the n-t smallest
// received values up to the mean of the n-t largest. Never enumerates subsets.
Hyperbox centroid_hyperbox(const Layout& layout);

// Per coordinate, the interval between the (m-(n-t)+1)-th and (n-t)-th order
// statistics of the received values. Ties are broken by client id so the
// result is deterministic under duplicate values.
Hyperbox trimmed_trusted_hyperbox(const Layout& layout);

// Minimum enclosing ball of the candidate centroid set. When the dimension
// exceeds m the computation runs in reduced coordinates spanned by the
// received vectors (an isometry on the affine span of the candidates).
Ball covering_ball(const Layout& layout, double eps = kDefaultMebEps);

// Point of the safe area (intersection of all size-(n-t) subset hulls)
// closest to `target`. Supported only for d <= 2, n <= 12,
// t < n / max{3, d+1}; within that domain the intersection is computed
// exactly (interval overlap in 1-D, half-plane clipping in 2-D) and the
// target is projected onto it, so the result is accurate to rounding rather
// than to an iteration tolerance.
Vector safe_area_point(const Layout& layout, const Vector& target, double tol = kIterTol);

}  // namespace centagg
