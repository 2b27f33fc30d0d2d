#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lipchain {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct PointCloud {
    std::vector<Point> points;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

// (master_seed, stream_index) fully determines a generated cloud; distinct
// stream indices under one master seed give independent streams (rng.hpp).
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

// Thrown by load_cloud; line() is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// n points with i.i.d. uniform [0,1) coordinates, drawn x then y per point.
PointCloud generate_uniform(std::size_t n, SeedSpec seed);

// Point file format: one "x,y" per line, '#' lines are comments, blank lines
// ignored. Numbers must be finite decimals.
PointCloud load_cloud(std::string_view text);

// Shortest round-trip decimals; load_cloud(save_cloud(c)) == c exactly.
std::string save_cloud(const PointCloud& cloud);

}  // namespace lipchain
