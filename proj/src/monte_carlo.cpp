#include "lipchain/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lipchain/point_cloud.hpp"
#include "lipchain/rng.hpp"
#include "lipchain/version.hpp"

namespace lipchain {

namespace {

// Runs body(0..count) across workers pulling indices from a shared counter.
// Callers index their output by i, so scheduling never affects results.
template <typename Body>
void parallel_for_index(std::size_t count, unsigned threads, const Body& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        try {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                body(i);
            }
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

TrialBatch run_trials(std::size_t n, LipClass cls, std::size_t trials,
                      std::uint64_t master_seed, unsigned threads) {
    if (n < 1) throw std::invalid_argument("run_trials: n must be >= 1");
    if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");

    TrialBatch batch{n, cls, master_seed, std::vector<std::size_t>(trials), kGeneratorId};
    parallel_for_index(trials, threads, [&](std::size_t t) {
        const PointCloud cloud = generate_uniform(n, SeedSpec{master_seed, t});
        batch.values[t] = longest_chain_fast(cloud, cls, /*want_witness=*/false).value;
    });
    return batch;
}

ScalingRecord summarize(const TrialBatch& batch) {
    const std::size_t count = batch.values.size();
    if (count == 0) throw std::invalid_argument("summarize: empty batch");

    std::vector<std::size_t> sorted = batch.values;
    std::sort(sorted.begin(), sorted.end());
    const double median =
        count % 2 == 1
            ? static_cast<double>(sorted[count / 2])
            : (static_cast<double>(sorted[count / 2 - 1]) + static_cast<double>(sorted[count / 2])) / 2.0;

    double sum = 0.0;
    for (std::size_t v : batch.values) sum += static_cast<double>(v);
    const double mean = sum / static_cast<double>(count);

    double stderr_mean = 0.0;
    if (count > 1) {
        double sq = 0.0;
        for (std::size_t v : batch.values) {
            const double d = static_cast<double>(v) - mean;
            sq += d * d;
        }
        stderr_mean = std::sqrt(sq / static_cast<double>(count - 1)) /
                      std::sqrt(static_cast<double>(count));
    }

    const double sqrt_n = std::sqrt(static_cast<double>(batch.n));
    ScalingRecord rec;
    rec.n = batch.n;
    rec.lipschitz = batch.cls.value();
    rec.trials = count;
    rec.median_value = median;
    rec.mean_value = mean;
    rec.ratio_median = median / sqrt_n;
    rec.ratio_mean = mean / sqrt_n;
    rec.median_over_sqrt2n = median / std::sqrt(2.0 * static_cast<double>(batch.n));
    rec.stderr_mean = stderr_mean;
    return rec;
}

std::vector<ScalingRecord> scaling_study(std::span<const std::size_t> n_grid, LipClass cls,
                                         std::size_t trials, std::uint64_t master_seed,
                                         unsigned threads) {
    if (n_grid.empty()) throw std::invalid_argument("scaling_study: empty grid");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i) {
        if (n_grid[i] >= n_grid[i + 1]) {
            throw std::invalid_argument("scaling_study: grid must be strictly increasing");
        }
    }

    std::vector<ScalingRecord> records;
    records.reserve(n_grid.size());
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const std::uint64_t cell_seed = derive_stream_state(master_seed, i);
        records.push_back(summarize(run_trials(n_grid[i], cls, trials, cell_seed, threads)));
    }
    return records;
}

}  // namespace lipchain
