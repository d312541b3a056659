#pragma once

#include <set>
#include <string>
#include <vector>

#include "centagg/candidates.hpp"
#include "centagg/types.hpp"

namespace centagg {

// The simulator's private knowledge of a round. Never visible to aggregators;
// only evaluation code may take it as input.
struct GroundTruth {
    std::vector<ReceivedVector> honest_vectors;  // all non-faulty clients
    std::set<int> faulty_ids;
};

struct RatioReport {
    Vector cent_star;
    double rad_cov = 0.0;
    double distance = 0.0;
    double ratio = 0.0;
    bool infinite = false;  // rad_cov ~ 0 with a positive distance
};

// Radius below which the covering ball is treated as a point; the ratio is
// then 0 (distance also ~0) or the infinite marker.
inline constexpr double kZeroRadiusTol = 1e-12;

// Mean of the non-faulty clients' vectors.
Vector cent_star(const GroundTruth& truth);

// dist(output, Cent*) / Rad_cov with Rad_cov from covering_ball(layout, eps).
RatioReport approximation_ratio(const Vector& output, const GroundTruth& truth,
                                const Layout& layout, double eps = kDefaultMebEps);

enum class ValidityKind { weak, strong, box, convex };

ValidityKind validity_kind_from_string(const std::string& s);

// weak/strong: vacuously true unless the premise (all clients / all honest
// clients share one vector) holds, in which case the output must equal it
// within tol. box: output inside the trusted hyperbox of honest vectors.
// convex: output inside the convex hull of honest vectors.
bool check_validity(ValidityKind kind, const GroundTruth& truth, const Layout& layout,
                    const Vector& output, double tol = kExactTol);

// Maximum pairwise distance among the honest vectors.
double nonfaulty_diameter(const GroundTruth& truth);

struct GeneratedInstance {
    Layout layout;
    GroundTruth truth;
};

// Adversarial construction forcing every box-valid aggregator to the origin:
// with k* = min{floor((n-t)/t), d}, the honest vectors are n-t-k*t copies of
// the origin plus t copies of x*u_k for each k in [k*]; the t faulty clients
// also send the origin, which pins the trimmed trusted hyperbox to a single
// point. Requires n > 3t, t >= 1, x > 0.
GeneratedInstance gen_box_lb_instance(int n, int t, int d, double x);

// Adversarial construction collapsing the safe area to the origin: t honest
// vectors at base + eps*u_i for each i in [d] (base is the origin for d = 1
// and the unit vector (1,...,1)/sqrt(d) otherwise), n - dt vectors at the
// origin of which t are faulty. Requires n > max{3, d+1} * t, t >= 1.
GeneratedInstance gen_convex_lb_instance(int n, int t, int d, double eps);

}  // namespace centagg
