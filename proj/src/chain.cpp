#include "lipchain/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lipchain {

LipClass::LipClass(double L) : L_(L) {
    if (!std::isfinite(L) || L <= 0.0) {
        throw std::invalid_argument("Lipschitz constant must be finite and > 0");
    }
}

bool cone_leq(Point p, Point q, const LipClass& cls) noexcept {
    return q.x >= p.x && std::abs(q.y - p.y) <= cls.value() * (q.x - p.x);
}

std::vector<TransformedPoint> shear_transform(const PointCloud& cloud, const LipClass& cls) {
    const double L = cls.value();
    std::vector<TransformedPoint> out;
    out.reserve(cloud.size());
    for (const Point& p : cloud.points) {
        out.push_back(TransformedPoint{L * p.x + p.y, L * p.x - p.y});
    }
    return out;
}

namespace {

// Chain order for a set already known to be totally ordered: x, then y (equal
// x inside a chain means exact duplicates), then index for determinism.
std::vector<std::size_t> sort_chain_indices(const PointCloud& cloud,
                                            std::vector<std::size_t> idx) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const Point& pa = cloud.points[a];
        const Point& pb = cloud.points[b];
        if (pa.x != pb.x) return pa.x < pb.x;
        if (pa.y != pb.y) return pa.y < pb.y;
        return a < b;
    });
    return idx;
}

}  // namespace

ChainResult longest_chain_bruteforce(const PointCloud& cloud, const LipClass& cls) {
    const std::size_t n = cloud.size();
    if (n > kBruteForceMaxPoints) {
        throw std::length_error("longest_chain_bruteforce: cloud larger than " +
                                std::to_string(kBruteForceMaxPoints) + " points");
    }
    if (n == 0) return {};

    std::uint32_t best_mask = 0;
    std::size_t best_count = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const std::size_t count = std::popcount(mask);
        if (count <= best_count) continue;

        bool is_chain = true;
        for (std::size_t i = 0; i < n && is_chain; ++i) {
            if (!(mask & (1u << i))) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!(mask & (1u << j))) continue;
                if (!cone_leq(cloud.points[i], cloud.points[j], cls) &&
                    !cone_leq(cloud.points[j], cloud.points[i], cls)) {
                    is_chain = false;
                    break;
                }
            }
        }
        if (is_chain) {
            best_mask = mask;
            best_count = count;
        }
    }

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
        if (best_mask & (1u << i)) members.push_back(i);
    }
    ChainResult result;
    result.value = best_count;
    result.witness = sort_chain_indices(cloud, std::move(members));
    return result;
}

ChainResult longest_chain_dp(const PointCloud& cloud, const LipClass& cls, bool want_witness) {
    const std::size_t n = cloud.size();
    if (n == 0) return {};

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    order = sort_chain_indices(cloud, std::move(order));

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best_len(n, 1);
    std::vector<std::size_t> parent(n, kNone);
    std::size_t best_pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& pi = cloud.points[order[i]];
        for (std::size_t j = 0; j < i; ++j) {
            if (best_len[j] + 1 > best_len[i] &&
                cone_leq(cloud.points[order[j]], pi, cls)) {
                best_len[i] = best_len[j] + 1;
                parent[i] = j;
            }
        }
        if (best_len[i] > best_len[best_pos]) best_pos = i;
    }

    ChainResult result;
    result.value = best_len[best_pos];
    if (want_witness) {
        std::vector<std::size_t> chain;
        chain.reserve(result.value);
        for (std::size_t pos = best_pos; pos != kNone; pos = parent[pos]) {
            chain.push_back(order[pos]);
        }
        std::reverse(chain.begin(), chain.end());
        result.witness = std::move(chain);
    }
    return result;
}

ChainResult longest_chain_fast(const PointCloud& cloud, const LipClass& cls, bool want_witness) {
    const std::size_t n = cloud.size();
    if (n == 0) return {};

    const std::vector<TransformedPoint> ts = shear_transform(cloud, cls);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ts[a].u != ts[b].u) return ts[a].u < ts[b].u;
        if (ts[a].v != ts[b].v) return ts[a].v < ts[b].v;
        return a < b;
    });

    // Longest non-decreasing subsequence of v in sorted order: each element
    // replaces the leftmost pile top strictly above it.
    std::vector<double> tops;
    for (std::size_t k = 0; k < n; ++k) {
        const double v = ts[order[k]].v;
        auto it = std::upper_bound(tops.begin(), tops.end(), v);
        if (it == tops.end()) {
            tops.push_back(v);
        } else {
            *it = v;
        }
    }

    ChainResult result;
    result.value = tops.size();
    if (!want_witness) return result;

    // len_start[k] = longest non-decreasing run beginning at sorted position k;
    // equals the pile index of -v scanned right to left.
    std::vector<std::size_t> len_start(n);
    std::vector<double> neg_tops;
    for (std::size_t k = n; k-- > 0;) {
        const double w = -ts[order[k]].v;
        auto it = std::upper_bound(neg_tops.begin(), neg_tops.end(), w);
        len_start[k] = static_cast<std::size_t>(it - neg_tops.begin()) + 1;
        if (it == neg_tops.end()) {
            neg_tops.push_back(w);
        } else {
            *it = w;
        }
    }

    // Greedy over sorted positions: at rank r pick the first position that
    // still heads a completion of the required length and does not decrease v.
    // Yields the lexicographically first optimal chain in sorted order.
    std::vector<std::size_t> chain;
    chain.reserve(result.value);
    double prev_v = -std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    for (std::size_t remaining = result.value; remaining > 0; --remaining) {
        while (len_start[pos] != remaining || ts[order[pos]].v < prev_v) ++pos;
        chain.push_back(order[pos]);
        prev_v = ts[order[pos]].v;
        ++pos;
    }
    result.witness = std::move(chain);
    return result;
}

WitnessReport validate_witness(const PointCloud& cloud, const LipClass& cls,
                               std::span<const std::size_t> witness) {
    std::vector<bool> seen(cloud.size(), false);
    for (std::size_t idx : witness) {
        if (idx >= cloud.size()) {
            throw std::invalid_argument("witness index out of range: " + std::to_string(idx));
        }
        if (seen[idx]) {
            throw std::invalid_argument("repeated witness index: " + std::to_string(idx));
        }
        seen[idx] = true;
    }

    WitnessReport report;
    report.length = witness.size();
    for (std::size_t k = 0; k + 1 < witness.size(); ++k) {
        if (!cone_leq(cloud.points[witness[k]], cloud.points[witness[k + 1]], cls)) {
            report.chain_ok = false;
        }
    }

    // Piecewise-linear function through the witness points, sorted by x and
    // extended by constants beyond the range; the flat tails never contribute.
    std::vector<Point> pts;
    pts.reserve(witness.size());
    for (std::size_t idx : witness) pts.push_back(cloud.points[idx]);
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double dx = pts[k + 1].x - pts[k].x;
        const double dy = pts[k + 1].y - pts[k].y;
        if (dx == 0.0) {
            if (dy != 0.0) {
                report.max_abs_slope = std::numeric_limits<double>::infinity();
            }
            continue;  // exact duplicates contribute no segment
        }
        report.max_abs_slope = std::max(report.max_abs_slope, std::abs(dy) / dx);
    }

    // |dy| <= L*dx checked through a division picks up rounding; allow 4 ulp.
    double tolerance = cls.value();
    for (int i = 0; i < 4; ++i) {
        tolerance = std::nextafter(tolerance, std::numeric_limits<double>::infinity());
    }
    report.slope_ok = report.max_abs_slope <= tolerance;
    return report;
}

}  // namespace lipchain
