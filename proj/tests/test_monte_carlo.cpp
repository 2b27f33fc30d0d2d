#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "lipchain/monte_carlo.hpp"
#include "lipchain/rng.hpp"
#include "lipchain/version.hpp"

using namespace lipchain;

TEST_SUITE("monte-carlo") {

TEST_CASE("run_trials: single-point clouds always give 1") {
    const TrialBatch batch = run_trials(1, LipClass(1.0), 10, 42);
    REQUIRE(batch.trials() == 10);
    for (std::size_t v : batch.values) CHECK(v == 1);
    CHECK(batch.generator_id == kGeneratorId);
}

TEST_CASE("run_trials: reproducible and thread-count independent") {
    const TrialBatch a = run_trials(100, LipClass(1.0), 5, 42, 1);
    const TrialBatch b = run_trials(100, LipClass(1.0), 5, 42, 1);
    const TrialBatch c = run_trials(100, LipClass(1.0), 5, 42, 4);
    CHECK(a.values == b.values);
    CHECK(a.values == c.values);
}

TEST_CASE("run_trials: values stay within [1, n]") {
    const TrialBatch batch = run_trials(50, LipClass(2.0), 40, 9);
    for (std::size_t v : batch.values) {
        CHECK(v >= 1);
        CHECK(v <= 50);
    }
}

TEST_CASE("run_trials: argument validation") {
    CHECK_THROWS_AS(run_trials(0, LipClass(1.0), 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_trials(5, LipClass(1.0), 0, 1), std::invalid_argument);
}

// Pilot run (seed 42, 30 trials at n = 10^4, L = 1) gave ratio_median 1.44;
// the asserted band is frozen around that observation.
TEST_CASE("run_trials: n = 10^4 ratio sits inside the frozen band") {
    const TrialBatch batch = run_trials(10000, LipClass(1.0), 30, 42);
    const ScalingRecord rec = summarize(batch);
    CHECK(rec.ratio_median >= 1.25);
    CHECK(rec.ratio_median <= 1.45);
}

TEST_CASE("summarize: single value") {
    const TrialBatch batch{10, LipClass(1.0), 0, {3}, kGeneratorId};
    const ScalingRecord rec = summarize(batch);
    CHECK(rec.median_value == 3.0);
    CHECK(rec.mean_value == 3.0);
    CHECK(rec.stderr_mean == 0.0);
}

TEST_CASE("summarize: even count averages the middle order statistics") {
    const TrialBatch batch{10, LipClass(1.0), 0, {2, 4}, kGeneratorId};
    CHECK(summarize(batch).median_value == 3.0);
}

TEST_CASE("summarize: odd count takes the middle order statistic") {
    const TrialBatch batch{10, LipClass(1.0), 0, {1, 2, 2, 3, 10}, kGeneratorId};
    const ScalingRecord rec = summarize(batch);
    CHECK(rec.median_value == 2.0);
    CHECK(rec.mean_value == doctest::Approx(3.6));
}

TEST_CASE("summarize: ratios recompute from stored fields") {
    const TrialBatch batch = run_trials(400, LipClass(1.0), 11, 3);
    const ScalingRecord rec = summarize(batch);
    CHECK(rec.ratio_median == doctest::Approx(rec.median_value / 20.0).epsilon(1e-12));
    CHECK(rec.median_over_sqrt2n ==
          doctest::Approx(rec.median_value / std::sqrt(800.0)).epsilon(1e-12));
    CHECK(rec.ratio_mean == doctest::Approx(rec.mean_value / 20.0).epsilon(1e-12));
}

TEST_CASE("summarize: empty batch is an argument error") {
    const TrialBatch batch{10, LipClass(1.0), 0, {}, kGeneratorId};
    CHECK_THROWS_AS(summarize(batch), std::invalid_argument);
}

TEST_CASE("summarize: permutation invariant in the values") {
    TrialBatch batch = run_trials(200, LipClass(1.0), 21, 5);
    const ScalingRecord before = summarize(batch);
    SplitMix64 gen(1);
    std::shuffle(batch.values.begin(), batch.values.end(), gen);
    const ScalingRecord after = summarize(batch);
    CHECK(after.median_value == before.median_value);
    CHECK(after.mean_value == doctest::Approx(before.mean_value).epsilon(1e-14));
    CHECK(after.stderr_mean == doctest::Approx(before.stderr_mean).epsilon(1e-12));
}

TEST_CASE("scaling_study: n = 1 grid point") {
    const std::size_t grid[] = {1};
    const auto records = scaling_study(grid, LipClass(1.0), 5, 42);
    REQUIRE(records.size() == 1);
    CHECK(records[0].median_value == 1.0);
    CHECK(records[0].ratio_median == 1.0);
}

TEST_CASE("scaling_study: grid validation") {
    const std::size_t decreasing[] = {100, 100};
    CHECK_THROWS_AS(scaling_study(decreasing, LipClass(1.0), 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(scaling_study({}, LipClass(1.0), 5, 1), std::invalid_argument);
}

TEST_CASE("scaling_study: reproducible across thread counts") {
    const std::size_t grid[] = {50, 120};
    const auto a = scaling_study(grid, LipClass(1.0), 8, 77, 1);
    const auto b = scaling_study(grid, LipClass(1.0), 8, 77, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].median_value == b[i].median_value);
        CHECK(a[i].mean_value == b[i].mean_value);
        CHECK(a[i].stderr_mean == b[i].stderr_mean);
    }
}

// Pilot run (seed 4242, T = 30): ratio_median 1.45, 1.4546, 1.44 — the ratio
// overshoots sqrt(2) around n = 10^3 and then settles back toward it, so the
// frozen assertions are an envelope plus shrinking distance, not monotonicity.
TEST_CASE("scaling_study: ratio_median hovers near sqrt(2) along a small grid") {
    const std::size_t grid[] = {100, 1000, 10000};
    const auto records = scaling_study(grid, LipClass(1.0), 30, 4242);
    REQUIRE(records.size() == 3);
    for (const auto& rec : records) {
        CHECK(rec.ratio_median >= 1.38);
        CHECK(rec.ratio_median <= 1.48);
    }
    CHECK(std::abs(records[2].ratio_median - std::sqrt(2.0)) <
          std::abs(records[1].ratio_median - std::sqrt(2.0)));
}

// Pilot run (seed 42, T = 50): the single-cell L = 2 study at n = 10^4 gave
// ratio_median 2.02, the plateau that reads as the constant 2.
TEST_CASE("scaling_study: L = 2 plateau at n = 10^4") {
    const std::size_t grid[] = {10000};
    const auto records = scaling_study(grid, LipClass(2.0), 50, 42);
    REQUIRE(records.size() == 1);
    CHECK(records[0].ratio_median >= 1.90);
    CHECK(records[0].ratio_median <= 2.05);
}

TEST_CASE("L = 2 dominates L = 1 trial by trial on shared seeds") {
    const TrialBatch one = run_trials(300, LipClass(1.0), 20, 2025);
    const TrialBatch two = run_trials(300, LipClass(2.0), 20, 2025);
    REQUIRE(one.trials() == two.trials());
    for (std::size_t t = 0; t < one.trials(); ++t) {
        CHECK(two.values[t] >= one.values[t]);
    }
}

}  // TEST_SUITE
