#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lipchain/chain.hpp"

namespace lipchain {

struct TrialBatch {
    std::size_t n = 0;
    LipClass cls;
    std::uint64_t master_seed = 0;
    std::vector<std::size_t> values;  // chain value per trial, ordered by trial index
    std::string generator_id;

    std::size_t trials() const noexcept { return values.size(); }
};

struct ScalingRecord {
    std::size_t n = 0;
    double lipschitz = 0.0;
    std::size_t trials = 0;
    double median_value = 0.0;
    double mean_value = 0.0;
    double ratio_median = 0.0;        // median / sqrt(n)
    double ratio_mean = 0.0;          // mean / sqrt(n)
    double median_over_sqrt2n = 0.0;  // median / sqrt(2n)
    double stderr_mean = 0.0;         // sample sd (T-1 divisor) / sqrt(T)
};

// Trial t draws a fresh cloud from SeedSpec{master_seed, t} and solves it with
// the fast solver. Deterministic for any thread count (threads == 0 means
// hardware concurrency); values are assembled by trial index.
TrialBatch run_trials(std::size_t n, LipClass cls, std::size_t trials,
                      std::uint64_t master_seed, unsigned threads = 0);

// Median is the order-statistic median (mean of the two middle order
// statistics for even counts). Throws std::invalid_argument on empty batches.
ScalingRecord summarize(const TrialBatch& batch);

// One record per grid point; cell i reseeds with derive_stream_state(master_seed, i)
// so cells never share trial streams. Grid must be non-empty and strictly increasing.
std::vector<ScalingRecord> scaling_study(std::span<const std::size_t> n_grid, LipClass cls,
                                         std::size_t trials, std::uint64_t master_seed,
                                         unsigned threads = 0);

inline constexpr std::size_t kDefaultTrials = 50;

// Half-decade grid from 1e2 to 1e5.
inline constexpr std::size_t kDefaultGrid[] = {100, 316, 1000, 3162, 10000, 31623, 100000};

}  // namespace lipchain
