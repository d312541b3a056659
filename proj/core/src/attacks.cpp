#include "centagg/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "centagg/rng.hpp"

namespace centagg {

AttackKind attack_kind_from_string(const std::string& s) {
    if (s == "sign_flip") return AttackKind::sign_flip;
    if (s == "omit") return AttackKind::omit;
    if (s == "fixed_vector") return AttackKind::fixed_vector;
    if (s == "gaussian_noise") return AttackKind::gaussian_noise;
    if (s == "shift") return AttackKind::shift;
    throw std::invalid_argument(
        "unknown attack kind '" + s +
        "' (valid: sign_flip, omit, fixed_vector, gaussian_noise, shift)");
}

std::string to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::sign_flip: return "sign_flip";
        case AttackKind::omit: return "omit";
        case AttackKind::fixed_vector: return "fixed_vector";
        case AttackKind::gaussian_noise: return "gaussian_noise";
        case AttackKind::shift: return "shift";
    }
    throw std::invalid_argument("unknown attack kind enum value");
}

std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t client_id, std::uint64_t round) {
    return mix64(mix64(run_seed ^ mix64(client_id + 1)) ^ mix64(round + 1));
}

std::optional<Vector> apply_attack(const AttackSpec& spec, const Vector& honest,
                                   std::uint64_t derived_seed) {
    switch (spec.kind) {
        case AttackKind::sign_flip: {
            Vector out(honest.size());
            for (std::size_t k = 0; k < honest.size(); ++k) out[k] = -honest[k];
            return out;
        }
        case AttackKind::omit:
            return std::nullopt;
        case AttackKind::fixed_vector: {
            // A single entry broadcasts to the transmitted dimension.
            if (spec.fixed_value.size() == 1) return Vector(honest.size(), spec.fixed_value[0]);
            if (spec.fixed_value.size() != honest.size()) {
                throw std::invalid_argument("apply_attack: fixed_vector dimension mismatch");
            }
            return spec.fixed_value;
        }
        case AttackKind::gaussian_noise: {
            Rng rng(derived_seed);
            Vector out(honest.size());
            for (std::size_t k = 0; k < honest.size(); ++k) out[k] = honest[k] + spec.sigma * rng.normal();
            return out;
        }
        case AttackKind::shift: {
            Vector dir = spec.shift_direction;
            if (dir.empty()) dir.assign(honest.size(), 1.0);
            if (dir.size() != honest.size()) {
                throw std::invalid_argument("apply_attack: shift direction dimension mismatch");
            }
            double norm = std::sqrt(std::inner_product(dir.begin(), dir.end(), dir.begin(), 0.0));
            if (norm <= 0.0) throw std::invalid_argument("apply_attack: zero shift direction");
            Vector out(honest.size());
            for (std::size_t k = 0; k < honest.size(); ++k) {
                out[k] = honest[k] + spec.shift_magnitude * dir[k] / norm;
            }
            return out;
        }
    }
    throw std::invalid_argument("apply_attack: unknown attack kind");
}

std::vector<int> select_attacked(int n, int f, std::uint64_t seed) {
    if (f < 0 || f > n) throw std::invalid_argument("select_attacked: requires 0 <= f <= n");
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng(mix64(seed ^ 0xA77AC5ED5E1EC7ULL));
    rng.shuffle(ids);
    ids.resize(static_cast<std::size_t>(f));
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace centagg
