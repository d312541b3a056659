#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "centagg/evaluation.hpp"
#include "centagg/rng.hpp"

namespace centagg {

// Deterministic randomized instance generators shared by the verification
// suites, the unit tests and the acceptance suite.

// Valid layout with m = n and assorted value distributions (clusters,
// uniform boxes, integer grids, duplicates). t may be zero.
Layout random_layout(Rng& rng, int max_n = 8, int max_d = 4);

// Layout with exactly t faulty vectors injected (t >= 1) and the matching
// ground truth; faulty identities are shuffled among the client ids and the
// faulty values range from far outliers to stealthy duplicates.
GeneratedInstance random_adversarial_instance(Rng& rng, int max_n = 10, int max_d = 6);

// Same construction at a fixed shape (requires n >= 4, 1 <= t < n/3, d >= 1).
GeneratedInstance random_adversarial_instance_fixed(Rng& rng, int n, int t, int d);

// All honest clients share one vector; the t faulty vectors are arbitrary.
GeneratedInstance identical_honest_instance(Rng& rng, int max_n = 10, int max_d = 6);

// Each checker runs `trials` randomized instances (deterministic in seed) and
// returns one message per violation, each carrying a layout dump reproducer.
std::vector<std::string> check_oracle_equivalence(std::uint64_t seed, int trials);
std::vector<std::string> check_upper_bounds(std::uint64_t seed, int trials);
std::vector<std::string> check_lower_bounds();
std::vector<std::string> check_validity_suite(std::uint64_t seed, int trials);
std::vector<std::string> check_gradient_accuracy(std::uint64_t seed, int trials);
std::vector<std::string> check_geometry_invariants(std::uint64_t seed, int trials);

struct VerifyReport {
    std::string suite;
    int violations = 0;
    std::vector<std::string> messages;      // violation details with reproducers
    std::vector<std::string> summary_lines; // one line per executed checker
};

// suite is one of: geometry, bounds, lowerbounds, gradients, all.
VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed, int trials);

}  // namespace centagg
