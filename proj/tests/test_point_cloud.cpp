#include <algorithm>
#include <set>
#include <utility>

#include <doctest.h>

#include "lipchain/point_cloud.hpp"
#include "lipchain/rng.hpp"

using namespace lipchain;

TEST_SUITE("point-cloud") {

TEST_CASE("generate_uniform: n = 0 gives an empty cloud") {
    const PointCloud cloud = generate_uniform(0, SeedSpec{12345, 0});
    CHECK(cloud.empty());
    CHECK(cloud.size() == 0);
}

TEST_CASE("generate_uniform: same seed, same cloud") {
    const PointCloud a = generate_uniform(5, SeedSpec{42, 0});
    const PointCloud b = generate_uniform(5, SeedSpec{42, 0});
    REQUIRE(a.size() == 5);
    CHECK(a.points == b.points);
}

TEST_CASE("generate_uniform: large cloud stays in range with no duplicate points") {
    const PointCloud cloud = generate_uniform(100000, SeedSpec{42, 0});
    REQUIRE(cloud.size() == 100000);
    for (const Point& p : cloud.points) {
        CHECK(p.x >= 0.0);
        CHECK(p.x < 1.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y < 1.0);
    }
    std::vector<std::pair<double, double>> coords;
    coords.reserve(cloud.size());
    for (const Point& p : cloud.points) coords.emplace_back(p.x, p.y);
    std::sort(coords.begin(), coords.end());
    CHECK(std::adjacent_find(coords.begin(), coords.end()) == coords.end());
}

TEST_CASE("generate_uniform: deterministic over random (n, seed) pairs") {
    SplitMix64 meta(0xfeedbeef);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = meta() % 64;
        const SeedSpec seed{meta(), meta() % 16};
        CHECK(generate_uniform(n, seed).points == generate_uniform(n, seed).points);
    }
}

TEST_CASE("generate_uniform: one million coordinates all in [0,1)") {
    const PointCloud cloud = generate_uniform(500000, SeedSpec{7, 3});
    std::size_t in_range = 0;
    for (const Point& p : cloud.points) {
        in_range += (p.x >= 0.0 && p.x < 1.0) ? 1 : 0;
        in_range += (p.y >= 0.0 && p.y < 1.0) ? 1 : 0;
    }
    CHECK(in_range == 1000000);
}

TEST_CASE("generate_uniform: sibling streams share no point") {
    const PointCloud a = generate_uniform(10000, SeedSpec{99, 0});
    const PointCloud b = generate_uniform(10000, SeedSpec{99, 1});
    std::set<std::pair<double, double>> seen;
    for (const Point& p : a.points) seen.emplace(p.x, p.y);
    for (const Point& p : b.points) CHECK(seen.count({p.x, p.y}) == 0);
}

TEST_CASE("load_cloud: single record") {
    const PointCloud cloud = load_cloud("0.5,0.25\n");
    REQUIRE(cloud.size() == 1);
    CHECK(cloud.points[0] == Point{0.5, 0.25});
}

TEST_CASE("load_cloud: empty input") {
    CHECK(load_cloud("").empty());
}

TEST_CASE("load_cloud: comments and blank lines are skipped, order preserved") {
    const PointCloud cloud = load_cloud("# header comment\n0.1,0.2\n\n0.3,0.4\r\n# done\n0.5,0.6");
    REQUIRE(cloud.size() == 3);
    CHECK(cloud.points[0] == Point{0.1, 0.2});
    CHECK(cloud.points[1] == Point{0.3, 0.4});
    CHECK(cloud.points[2] == Point{0.5, 0.6});
}

TEST_CASE("load_cloud: malformed input names the line") {
    CHECK_THROWS_WITH_AS(load_cloud("0.1,abc\n"), doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_WITH_AS(load_cloud("0.1,0.2\n0.3\n"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(load_cloud("1,2\n3,4\n5,6,7\n"), doctest::Contains("line 3"), ParseError);
    CHECK_THROWS_WITH_AS(load_cloud("nan,0.5\n"), doctest::Contains("non-finite"), ParseError);
    CHECK_THROWS_WITH_AS(load_cloud("0.5,inf\n"), doctest::Contains("non-finite"), ParseError);
    try {
        load_cloud("# ok\n0.1,0.2\nbroken\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("save_cloud: empty and single-point formatting") {
    CHECK(save_cloud(PointCloud{}) == "");
    CHECK(save_cloud(PointCloud{{Point{0.5, 0.25}}}) == "0.5,0.25\n");
}

TEST_CASE("save_cloud/load_cloud: exact round trip on random clouds") {
    SplitMix64 meta(0x5eed);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = meta() % 64;
        const PointCloud cloud = generate_uniform(n, SeedSpec{meta(), 0});
        const PointCloud back = load_cloud(save_cloud(cloud));
        CHECK(back.points == cloud.points);
    }
}

}  // TEST_SUITE
