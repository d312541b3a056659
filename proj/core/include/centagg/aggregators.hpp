#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "centagg/candidates.hpp"
#include "centagg/types.hpp"

namespace centagg {

struct AggregationDiagnostics {
    std::optional<std::vector<int>> chosen_subset;  // MDA: indices into received
    std::optional<Hyperbox> trimmed_box;            // Box: TTH
    std::optional<Hyperbox> centroid_box;           // Box: CH
    std::optional<double> ball_radius;              // ball_center: covering radius
};

struct AggregationResult {
    Vector output;
    std::string aggregator_name;
    AggregationDiagnostics diagnostics;
};

// Coordinate-wise mean of all received vectors.
AggregationResult aggregate_mean(const Layout& layout);

// Center of the minimum covering ball of the candidate centroid set.
AggregationResult aggregate_ball_center(const Layout& layout, double eps = kDefaultMebEps);

// Mean of the size-(n-t) subset with the smallest diameter (maximum pairwise
// distance); ties broken by the lexicographically smallest index subset.
AggregationResult aggregate_mda(const Layout& layout);

// Per-coordinate center of the intersection of the trimmed trusted hyperbox
// and the centroid hyperbox. A coordinate whose intervals are disjoint by
// more than tol raises IntegrityError (theory guarantees intersection for
// m = n); within tol the gap midpoint is used.
AggregationResult aggregate_box(const Layout& layout, double tol = kExactTol);

// Point of the safe area closest to the covering-ball center. Supported only
// on small instances (see safe_area_point).
AggregationResult aggregate_safe_area(const Layout& layout, double eps = kDefaultMebEps,
                                      double tol = kIterTol);

using AggregatorFn = std::function<AggregationResult(const Layout&)>;

// Lookup by name with default parameters. Valid names: mean, ball_center,
// mda, box, safe_area. Unknown names raise std::invalid_argument listing the
// valid set.
AggregatorFn get_aggregator(const std::string& name);

const std::vector<std::string>& aggregator_names();

}  // namespace centagg
