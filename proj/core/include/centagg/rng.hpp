#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace centagg {

// SplitMix64 finalizer. Used both as a stream mixer and to derive
// per-(client, round) seeds; the exact constants below are part of the
// deterministic run contract and must not change.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic RNG with hand-rolled double mappings. std::mt19937_64 has a
// fully specified bit stream, and the mappings below avoid the
// implementation-defined std::*_distribution wrappers, so the same seed
// produces the same draws on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi] via 128-bit multiply-shift rejection-free
    // scaling (bias < 2^-64, irrelevant for simulation purposes).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t r = next_u64();
        auto wide = static_cast<unsigned __int128>(r) * range;
        return lo + static_cast<std::int64_t>(wide >> 64);
    }

    // Standard normal via Box-Muller; one cached draw.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // Fisher-Yates shuffle, deterministic given the engine state.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 eng_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace centagg
