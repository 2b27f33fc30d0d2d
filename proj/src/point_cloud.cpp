#include "lipchain/point_cloud.hpp"

#include <charconv>
#include <cmath>

#include "lipchain/numfmt.hpp"
#include "lipchain/rng.hpp"

namespace lipchain {

PointCloud generate_uniform(std::size_t n, SeedSpec seed) {
    SplitMix64 gen(derive_stream_state(seed.master_seed, seed.stream_index));
    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = gen.next_double();
        const double y = gen.next_double();
        cloud.points.push_back(Point{x, y});
    }
    return cloud;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_coordinate(std::string_view field, std::size_t line_no) {
    field = trim(field);
    double value = 0.0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || end != field.data() + field.size() || field.empty()) {
        throw ParseError(line_no, "unparsable number '" + std::string(field) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(line_no, "non-finite value '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

PointCloud load_cloud(std::string_view text) {
    PointCloud cloud;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;

        const std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError(line_no, "expected 'x,y', got '" + std::string(line) + "'");
        }
        std::string_view rest = line.substr(comma + 1);
        if (rest.find(',') != std::string_view::npos) {
            throw ParseError(line_no, "expected two fields, got '" + std::string(line) + "'");
        }
        const double x = parse_coordinate(line.substr(0, comma), line_no);
        const double y = parse_coordinate(rest, line_no);
        cloud.points.push_back(Point{x, y});
    }
    return cloud;
}

std::string save_cloud(const PointCloud& cloud) {
    std::string out;
    out.reserve(cloud.size() * 24);
    for (const Point& p : cloud.points) {
        out += format_shortest(p.x);
        out += ',';
        out += format_shortest(p.y);
        out += '\n';
    }
    return out;
}

}  // namespace lipchain
