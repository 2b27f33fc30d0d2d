#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lipchain/point_cloud.hpp"

namespace lipchain {

// Lipschitz constant of a curve class; L > 0 and finite.
class LipClass {
public:
    explicit LipClass(double L);

    double value() const noexcept { return L_; }

private:
    double L_;
};

// Shear image of a point: u = L*x + y, v = L*x - y. Cone comparability
// becomes coordinatewise dominance: p <= q iff u_p <= u_q and v_p <= v_q.
struct TransformedPoint {
    double u = 0.0;
    double v = 0.0;

    friend bool operator==(const TransformedPoint&, const TransformedPoint&) = default;
};

struct ChainResult {
    std::size_t value = 0;
    // Original cloud indices in chain order; absent for empty clouds or when
    // the caller asked for the value only.
    std::optional<std::vector<std::size_t>> witness;
};

struct WitnessReport {
    bool chain_ok = true;        // consecutive cone_leq holds along the witness
    bool slope_ok = true;        // piecewise-linear slopes within L (4-ulp slack)
    double max_abs_slope = 0.0;  // +inf if two witness points share x with distinct y
    std::size_t length = 0;

    bool pass() const noexcept { return chain_ok && slope_ok; }
};

// True iff p and q can lie on one graph with Lipschitz constant <= L and
// q is reachable from p going right: q.x >= p.x and |q.y - p.y| <= L*(q.x - p.x).
// Exact IEEE comparisons, no epsilon. Partial order; points sharing x with
// distinct y are incomparable, exact duplicates are mutually comparable.
bool cone_leq(Point p, Point q, const LipClass& cls) noexcept;

std::vector<TransformedPoint> shear_transform(const PointCloud& cloud, const LipClass& cls);

inline constexpr std::size_t kBruteForceMaxPoints = 20;

// Exact maximum over all subsets totally ordered by cone_leq. Verification
// oracle; throws std::length_error above kBruteForceMaxPoints.
ChainResult longest_chain_bruteforce(const PointCloud& cloud, const LipClass& cls);

// O(n^2) longest-path DP directly on cone_leq.
ChainResult longest_chain_dp(const PointCloud& cloud, const LipClass& cls,
                             bool want_witness = true);

// O(n log n): shear, sort by (u, v), patience sorting on the v sequence.
// The witness is the lexicographically first optimal chain in sorted order.
ChainResult longest_chain_fast(const PointCloud& cloud, const LipClass& cls,
                               bool want_witness = true);

// Certifies a witness: consecutive cone_leq, then the piecewise-linear
// function through the points (sorted by x, constant beyond the range) must
// have every segment slope within L. Throws std::invalid_argument on
// out-of-range or repeated indices.
WitnessReport validate_witness(const PointCloud& cloud, const LipClass& cls,
                               std::span<const std::size_t> witness);

}  // namespace lipchain
