#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace centagg {

// Model/gradient coordinates. Dimension is fixed per layout; entries must be
// finite (validated at the layout boundary, not per arithmetic op).
using Vector = std::vector<double>;

// Closed per-coordinate intervals [lo[k], hi[k]]. Degenerate boxes (lo == hi)
// are permitted.
struct Hyperbox {
    Vector lo;
    Vector hi;

    std::size_t dim() const { return lo.size(); }

    bool contains(const Vector& v, double tol = 0.0) const {
        if (v.size() != lo.size()) return false;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] < lo[k] - tol || v[k] > hi[k] + tol) return false;
        }
        return true;
    }

    Vector center() const {
        Vector c(lo.size());
        for (std::size_t k = 0; k < lo.size(); ++k) c[k] = 0.5 * (lo[k] + hi[k]);
        return c;
    }
};

struct Ball {
    Vector center;
    double radius = 0.0;
};

// One received message: who sent it and what they sent.
struct ReceivedVector {
    int client_id = 0;
    Vector value;
};

// Raised when a run configuration fails schema validation (CLI exit code 2).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a theoretical guarantee is violated at runtime, e.g. an empty
// box intersection on a full layout (CLI exit code 4).
class IntegrityError : public std::runtime_error {
  public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

inline void require_same_dim(const Vector& a, const Vector& b, const char* where) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
}

}  // namespace centagg
