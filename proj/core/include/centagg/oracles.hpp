#pragma once

#include <vector>

#include "centagg/candidates.hpp"
#include "centagg/types.hpp"

namespace centagg {

// Reference computations that are deliberately independent of the iterative
// solvers in geometry.cpp. The verification suites and tests compare the two
// routes against each other; neither side may be replaced by the other.

// Exact minimum enclosing ball by enumerating support sets of up to d+1
// points (circumballs of affinely independent subsets). Intended for d <= 3
// and at most ~12 points; complexity grows combinatorially.
Ball exact_min_enclosing_ball(const std::vector<Vector>& points);

// Bounding box of the explicitly enumerated candidate centroid set.
Hyperbox brute_force_centroid_hyperbox(const Layout& layout);

}  // namespace centagg
