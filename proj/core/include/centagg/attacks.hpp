#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "centagg/types.hpp"

namespace centagg {

enum class AttackKind { sign_flip, omit, fixed_vector, gaussian_noise, shift };

AttackKind attack_kind_from_string(const std::string& s);
std::string to_string(AttackKind kind);

struct AttackSpec {
    AttackKind kind = AttackKind::sign_flip;
    int f = 0;  // number of attacked clients, <= t of the experiment

    Vector fixed_value;          // fixed_vector
    double sigma = 1.0;          // gaussian_noise
    Vector shift_direction;      // shift; empty means (1,...,1), normalized internally
    double shift_magnitude = 0.0;
};

// Per-(client, round) seed: run_seed, client id and round are folded through
// the SplitMix64 finalizer in a fixed composition so every implementation of
// this scheme derives identical streams:
//   derive_seed(s, c, r) = mix64(mix64(s ^ mix64(c + 1)) ^ mix64(r + 1))
std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t client_id, std::uint64_t round);

// What the server receives from an attacked client whose honest transmission
// would have been `honest` (a gradient under FedSGD, parameters under
// FedAvg). nullopt means no message (omission). Deterministic in
// derived_seed.
std::optional<Vector> apply_attack(const AttackSpec& spec, const Vector& honest,
                                   std::uint64_t derived_seed);

// Deterministic pseudo-random subset of {0..n-1} of size f, sorted. Fixed for
// a whole run (static adversary).
std::vector<int> select_attacked(int n, int f, std::uint64_t seed);

}  // namespace centagg
