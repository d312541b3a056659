#pragma once

#include <initializer_list>
#include <vector>

#include "centagg/candidates.hpp"
#include "centagg/evaluation.hpp"

namespace centagg::test {

// Layout with client ids 0..m-1 in order.
inline Layout make_layout(int n, int t, std::vector<Vector> values) {
    Layout layout;
    layout.n = n;
    layout.t = t;
    layout.d = values.empty() ? 1 : static_cast<int>(values[0].size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        layout.received.push_back({static_cast<int>(i), std::move(values[i])});
    }
    return layout;
}

// 1-D convenience.
inline Layout make_layout_1d(int n, int t, std::vector<double> values) {
    std::vector<Vector> vs;
    vs.reserve(values.size());
    for (double v : values) vs.push_back(Vector{v});
    return make_layout(n, t, std::move(vs));
}

inline GroundTruth truth_from(const Layout& layout, std::initializer_list<int> faulty) {
    GroundTruth truth;
    for (int id : faulty) truth.faulty_ids.insert(id);
    for (const auto& rv : layout.received) {
        if (!truth.faulty_ids.count(rv.client_id)) truth.honest_vectors.push_back(rv);
    }
    return truth;
}

}  // namespace centagg::test
