#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lipchain/chain.hpp"
#include "lipchain/monte_carlo.hpp"

namespace lipchain {

// Carried in JSON metadata and as '#' comment headers on CSV files.
// invocation/timestamp are optional; the timestamp is the only
// non-deterministic field and never appears outside metadata.
struct RunMeta {
    std::string tool_version;
    std::string generator_id;
    std::string invocation;
    std::uint64_t master_seed = 0;
    std::string timestamp;
};

// "n,L,trial,N,ratio" with ratio = N/sqrt(n) at 12 significant digits.
std::string write_trials_csv(const TrialBatch& batch);

// "n,L,trials,median_N,mean_N,ratio_median,ratio_mean,median_over_sqrt2n,stderr_mean"
std::string write_scaling_csv(std::span<const ScalingRecord> records);

// {"metadata": {generator_id, master_seed, T, L, tool_version[, invocation, timestamp]},
//  "records": [...]} with fixed key order, 2-space indent.
std::string write_scaling_json(std::span<const ScalingRecord> records, const RunMeta& meta,
                               std::size_t trials, double lipschitz);

std::string witness_report_json(const WitnessReport& report);

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (n, ratio)
};

struct ReferenceLine {
    std::string label;
    double value = 0.0;
};

struct FigureSpec {
    std::vector<Series> series;
    std::vector<ReferenceLine> reference_lines;
    bool log_x = true;
    std::optional<std::pair<double, double>> y_range;  // auto-scaled when absent
};

// Self-contained SVG 1.1, byte-deterministic: one polyline plus circle
// markers per series, one dashed labelled horizontal line per reference.
// Throws std::invalid_argument on empty or malformed specs.
std::string render_figure(const FigureSpec& spec);

}  // namespace lipchain
