#include "centagg/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "centagg/geometry.hpp"

namespace centagg {

Vector cent_star(const GroundTruth& truth) {
    if (truth.honest_vectors.empty()) {
        throw std::invalid_argument("cent_star: no honest vectors");
    }
    Vector sum(truth.honest_vectors[0].value.size(), 0.0);
    for (const auto& rv : truth.honest_vectors) {
        require_same_dim(sum, rv.value, "cent_star");
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += rv.value[k];
    }
    for (auto& x : sum) x /= static_cast<double>(truth.honest_vectors.size());
    return sum;
}

RatioReport approximation_ratio(const Vector& output, const GroundTruth& truth,
                                const Layout& layout, double eps) {
    RatioReport report;
    report.cent_star = cent_star(truth);
    require_same_dim(output, report.cent_star, "approximation_ratio");
    report.distance = euclidean_distance(output, report.cent_star);
    report.rad_cov = covering_ball(layout, eps).radius;

    if (report.rad_cov <= kZeroRadiusTol) {
        if (report.distance <= kZeroRadiusTol) {
            report.ratio = 0.0;
        } else {
            report.infinite = true;
            report.ratio = 0.0;
        }
    } else {
        report.ratio = report.distance / report.rad_cov;
    }
    return report;
}

ValidityKind validity_kind_from_string(const std::string& s) {
    if (s == "weak") return ValidityKind::weak;
    if (s == "strong") return ValidityKind::strong;
    if (s == "box") return ValidityKind::box;
    if (s == "convex") return ValidityKind::convex;
    throw std::invalid_argument("unknown validity kind '" + s + "'");
}

namespace {

bool all_equal(const std::vector<ReceivedVector>& vs) {
    for (const auto& rv : vs) {
        if (rv.value != vs[0].value) return false;
    }
    return true;
}

bool within_tol(const Vector& a, const Vector& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a[k] - b[k]) > tol) return false;
    }
    return true;
}

}  // namespace

bool check_validity(ValidityKind kind, const GroundTruth& truth, const Layout& layout,
                    const Vector& output, double tol) {
    (void)layout;  // validity areas depend on ground truth only
    switch (kind) {
        case ValidityKind::weak: {
            if (!truth.faulty_ids.empty()) return true;
            if (truth.honest_vectors.empty() || !all_equal(truth.honest_vectors)) return true;
            return within_tol(output, truth.honest_vectors[0].value, tol);
        }
        case ValidityKind::strong: {
            if (truth.honest_vectors.empty() || !all_equal(truth.honest_vectors)) return true;
            return within_tol(output, truth.honest_vectors[0].value, tol);
        }
        case ValidityKind::box: {
            std::vector<Vector> honest;
            honest.reserve(truth.honest_vectors.size());
            for (const auto& rv : truth.honest_vectors) honest.push_back(rv.value);
            return bounding_box(honest).contains(output, tol);
        }
        case ValidityKind::convex: {
            std::vector<Vector> honest;
            honest.reserve(truth.honest_vectors.size());
            for (const auto& rv : truth.honest_vectors) honest.push_back(rv.value);
            return convex_hull_contains(honest, output, std::max(tol, 1e-12)).inside;
        }
    }
    throw std::invalid_argument("check_validity: unknown kind");
}

double nonfaulty_diameter(const GroundTruth& truth) {
    if (truth.honest_vectors.empty()) {
        throw std::invalid_argument("nonfaulty_diameter: no honest vectors");
    }
    double diam = 0.0;
    for (std::size_t i = 0; i < truth.honest_vectors.size(); ++i) {
        for (std::size_t j = i + 1; j < truth.honest_vectors.size(); ++j) {
            diam = std::max(diam, euclidean_distance(truth.honest_vectors[i].value,
                                                     truth.honest_vectors[j].value));
        }
    }
    return diam;
}

GeneratedInstance gen_box_lb_instance(int n, int t, int d, double x) {
    if (t < 1) throw std::invalid_argument("gen_box_lb_instance: requires t >= 1");
    if (3 * t >= n) throw std::invalid_argument("gen_box_lb_instance: requires n > 3t");
    if (d < 1) throw std::invalid_argument("gen_box_lb_instance: requires d >= 1");
    if (!(x > 0.0)) throw std::invalid_argument("gen_box_lb_instance: requires x > 0");

    const int k_star = std::min((n - t) / t, d);
    const int honest_origin = n - t - k_star * t;

    GeneratedInstance inst;
    inst.layout.n = n;
    inst.layout.t = t;
    inst.layout.d = d;

    int id = 0;
    Vector origin(static_cast<std::size_t>(d), 0.0);
    auto add = [&](const Vector& v, bool faulty) {
        inst.layout.received.push_back({id, v});
        if (faulty) {
            inst.truth.faulty_ids.insert(id);
        } else {
            inst.truth.honest_vectors.push_back({id, v});
        }
        ++id;
    };

    for (int i = 0; i < honest_origin; ++i) add(origin, false);
    for (int k = 0; k < k_star; ++k) {
        Vector unit(static_cast<std::size_t>(d), 0.0);
        unit[static_cast<std::size_t>(k)] = x;
        for (int i = 0; i < t; ++i) add(unit, false);
    }
    for (int i = 0; i < t; ++i) add(origin, true);
    return inst;
}

GeneratedInstance gen_convex_lb_instance(int n, int t, int d, double eps) {
    if (t < 1) throw std::invalid_argument("gen_convex_lb_instance: requires t >= 1");
    if (d < 1) throw std::invalid_argument("gen_convex_lb_instance: requires d >= 1");
    if (static_cast<long long>(std::max(3, d + 1)) * t >= n) {
        throw std::invalid_argument("gen_convex_lb_instance: requires n > max{3, d+1} * t");
    }
    if (!(eps > 0.0)) throw std::invalid_argument("gen_convex_lb_instance: requires eps > 0");

    GeneratedInstance inst;
    inst.layout.n = n;
    inst.layout.t = t;
    inst.layout.d = d;

    Vector base(static_cast<std::size_t>(d), 0.0);
    if (d > 1) {
        const double c = 1.0 / std::sqrt(static_cast<double>(d));
        base.assign(static_cast<std::size_t>(d), c);
    }

    int id = 0;
    auto add = [&](const Vector& v, bool faulty) {
        inst.layout.received.push_back({id, v});
        if (faulty) {
            inst.truth.faulty_ids.insert(id);
        } else {
            inst.truth.honest_vectors.push_back({id, v});
        }
        ++id;
    };

    for (int i = 0; i < d; ++i) {
        Vector v = base;
        v[static_cast<std::size_t>(i)] += eps;
        for (int j = 0; j < t; ++j) add(v, false);
    }
    Vector origin(static_cast<std::size_t>(d), 0.0);
    const int origin_count = n - d * t;
    for (int i = 0; i < origin_count - t; ++i) add(origin, false);
    for (int i = 0; i < t; ++i) add(origin, true);
    return inst;
}

}  // namespace centagg
