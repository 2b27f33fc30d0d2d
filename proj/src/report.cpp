#include "lipchain/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "lipchain/numfmt.hpp"

namespace lipchain {

std::string write_trials_csv(const TrialBatch& batch) {
    const double sqrt_n = std::sqrt(static_cast<double>(batch.n));
    std::string out = "n,L,trial,N,ratio\n";
    const std::string n_str = std::to_string(batch.n);
    const std::string l_str = format_shortest(batch.cls.value());
    for (std::size_t t = 0; t < batch.values.size(); ++t) {
        out += n_str;
        out += ',';
        out += l_str;
        out += ',';
        out += std::to_string(t);
        out += ',';
        out += std::to_string(batch.values[t]);
        out += ',';
        out += format_sig13(static_cast<double>(batch.values[t]) / sqrt_n);
        out += '\n';
    }
    return out;
}

std::string write_scaling_csv(std::span<const ScalingRecord> records) {
    std::string out =
        "n,L,trials,median_N,mean_N,ratio_median,ratio_mean,median_over_sqrt2n,stderr_mean\n";
    for (const ScalingRecord& rec : records) {
        out += std::to_string(rec.n);
        out += ',';
        out += format_shortest(rec.lipschitz);
        out += ',';
        out += std::to_string(rec.trials);
        out += ',';
        out += format_sig13(rec.median_value);
        out += ',';
        out += format_sig13(rec.mean_value);
        out += ',';
        out += format_sig13(rec.ratio_median);
        out += ',';
        out += format_sig13(rec.ratio_mean);
        out += ',';
        out += format_sig13(rec.median_over_sqrt2n);
        out += ',';
        out += format_sig13(rec.stderr_mean);
        out += '\n';
    }
    return out;
}

std::string write_scaling_json(std::span<const ScalingRecord> records, const RunMeta& meta,
                               std::size_t trials, double lipschitz) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json& m = doc["metadata"];
    m["generator_id"] = meta.generator_id;
    m["master_seed"] = meta.master_seed;
    m["T"] = trials;
    m["L"] = lipschitz;
    m["tool_version"] = meta.tool_version;
    if (!meta.invocation.empty()) m["invocation"] = meta.invocation;
    if (!meta.timestamp.empty()) m["timestamp"] = meta.timestamp;

    doc["records"] = nlohmann::ordered_json::array();
    for (const ScalingRecord& rec : records) {
        nlohmann::ordered_json r;
        r["n"] = rec.n;
        r["L"] = rec.lipschitz;
        r["trials"] = rec.trials;
        r["median_N"] = rec.median_value;
        r["mean_N"] = rec.mean_value;
        r["ratio_median"] = rec.ratio_median;
        r["ratio_mean"] = rec.ratio_mean;
        r["median_over_sqrt2n"] = rec.median_over_sqrt2n;
        r["stderr_mean"] = rec.stderr_mean;
        doc["records"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

std::string witness_report_json(const WitnessReport& report) {
    nlohmann::ordered_json j;
    j["pass"] = report.pass();
    j["chain_ok"] = report.chain_ok;
    j["slope_ok"] = report.slope_ok;
    j["max_abs_slope"] = report.max_abs_slope;  // serialized as null if infinite
    j["length"] = report.length;
    return j.dump();
}

namespace {

// Figure styling; not part of any output contract.
namespace style {
constexpr double kWidth = 860;
constexpr double kHeight = 520;
constexpr double kMarginLeft = 70;
constexpr double kMarginRight = 170;
constexpr double kMarginTop = 30;
constexpr double kMarginBottom = 60;
constexpr double kMarkerRadius = 3;
constexpr const char* kFont = "Helvetica, Arial, sans-serif";
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);
constexpr const char* kXAxisLabel = "n";
constexpr const char* kYAxisLabel = "median(N) / √n";
}  // namespace style

std::string px(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf, buf + len);
}

std::string tick_label(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf, buf + len);
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct LinearScale {
    double domain_min = 0;
    double domain_max = 1;
    double range_min = 0;
    double range_max = 1;

    double operator()(double v) const {
        return range_min + (v - domain_min) / (domain_max - domain_min) * (range_max - range_min);
    }
};

void pad_domain(double& lo, double& hi, double fraction, double fallback) {
    if (lo == hi) {
        lo -= fallback;
        hi += fallback;
        return;
    }
    const double pad = (hi - lo) * fraction;
    lo -= pad;
    hi += pad;
}

}  // namespace

std::string render_figure(const FigureSpec& spec) {
    if (spec.series.empty()) {
        throw std::invalid_argument("render_figure: no series");
    }
    for (const Series& s : spec.series) {
        if (s.points.empty()) {
            throw std::invalid_argument("render_figure: empty series '" + s.label + "'");
        }
        for (const auto& [n, ratio] : s.points) {
            if (!std::isfinite(n) || !std::isfinite(ratio) || (spec.log_x && n <= 0)) {
                throw std::invalid_argument("render_figure: bad data point in '" + s.label + "'");
            }
        }
    }
    for (const ReferenceLine& ref : spec.reference_lines) {
        if (!std::isfinite(ref.value)) {
            throw std::invalid_argument("render_figure: non-finite reference line");
        }
    }

    const auto xcoord = [&](double n) { return spec.log_x ? std::log10(n) : n; };

    double xmin = xcoord(spec.series[0].points[0].first);
    double xmax = xmin;
    double ymin = spec.series[0].points[0].second;
    double ymax = ymin;
    for (const Series& s : spec.series) {
        for (const auto& [n, ratio] : s.points) {
            xmin = std::min(xmin, xcoord(n));
            xmax = std::max(xmax, xcoord(n));
            ymin = std::min(ymin, ratio);
            ymax = std::max(ymax, ratio);
        }
    }
    if (!spec.y_range) {
        for (const ReferenceLine& ref : spec.reference_lines) {
            ymin = std::min(ymin, ref.value);
            ymax = std::max(ymax, ref.value);
        }
    } else {
        ymin = spec.y_range->first;
        ymax = spec.y_range->second;
        if (!(ymin < ymax)) throw std::invalid_argument("render_figure: bad y range");
    }
    pad_domain(xmin, xmax, 0.04, spec.log_x ? 0.5 : 1.0);
    if (!spec.y_range) pad_domain(ymin, ymax, 0.08, 0.1);

    const double plot_left = style::kMarginLeft;
    const double plot_right = style::kWidth - style::kMarginRight;
    const double plot_top = style::kMarginTop;
    const double plot_bottom = style::kHeight - style::kMarginBottom;
    const LinearScale sx{xmin, xmax, plot_left, plot_right};
    const LinearScale sy{ymin, ymax, plot_bottom, plot_top};

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           px(style::kWidth) + "\" height=\"" + px(style::kHeight) + "\" viewBox=\"0 0 " +
           px(style::kWidth) + " " + px(style::kHeight) + "\">\n";
    svg += "<rect width=\"" + px(style::kWidth) + "\" height=\"" + px(style::kHeight) +
           "\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + px(plot_left) + "\" y=\"" + px(plot_top) + "\" width=\"" +
           px(plot_right - plot_left) + "\" height=\"" + px(plot_bottom - plot_top) +
           "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

    // x ticks: decades in log mode, else five evenly spaced values
    std::vector<std::pair<double, std::string>> xticks;
    if (spec.log_x) {
        for (int k = static_cast<int>(std::ceil(xmin)); k <= static_cast<int>(std::floor(xmax));
             ++k) {
            xticks.emplace_back(k, tick_label(std::pow(10.0, k)));
        }
    }
    if (xticks.size() < 2) {
        xticks.clear();
        for (int i = 0; i <= 4; ++i) {
            const double t = xmin + (xmax - xmin) * i / 4.0;
            xticks.emplace_back(t, tick_label(spec.log_x ? std::pow(10.0, t) : t));
        }
    }
    for (const auto& [t, label] : xticks) {
        const double x = sx(t);
        svg += "<line class=\"tick\" x1=\"" + px(x) + "\" x2=\"" + px(x) + "\" y1=\"" +
               px(plot_bottom) + "\" y2=\"" + px(plot_bottom + 5) +
               "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + px(x) + "\" y=\"" + px(plot_bottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"" + std::string(style::kFont) +
               "\" font-size=\"12\">" + xml_escape(label) + "</text>\n";
    }

    // y ticks at a "nice" step close to range/6
    {
        const double rough = (ymax - ymin) / 6.0;
        const double magnitude = std::pow(10.0, std::floor(std::log10(rough)));
        double step = magnitude * 10.0;
        for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
            if (rough <= m * magnitude) {
                step = m * magnitude;
                break;
            }
        }
        for (long k = static_cast<long>(std::ceil(ymin / step));
             static_cast<double>(k) * step <= ymax; ++k) {
            const double v = static_cast<double>(k) * step;
            const double y = sy(v);
            svg += "<line x1=\"" + px(plot_left) + "\" x2=\"" + px(plot_right) + "\" y1=\"" +
                   px(y) + "\" y2=\"" + px(y) + "\" stroke=\"#eeeeee\"/>\n";
            svg += "<line class=\"tick\" x1=\"" + px(plot_left - 5) + "\" x2=\"" + px(plot_left) +
                   "\" y1=\"" + px(y) + "\" y2=\"" + px(y) + "\" stroke=\"#333333\"/>\n";
            svg += "<text x=\"" + px(plot_left - 9) + "\" y=\"" + px(y + 4) +
                   "\" text-anchor=\"end\" font-family=\"" + std::string(style::kFont) +
                   "\" font-size=\"12\">" + xml_escape(tick_label(v)) + "</text>\n";
        }
    }

    // axis labels
    svg += "<text x=\"" + px((plot_left + plot_right) / 2) + "\" y=\"" +
           px(style::kHeight - 18) + "\" text-anchor=\"middle\" font-family=\"" +
           std::string(style::kFont) + "\" font-size=\"14\">" +
           xml_escape(style::kXAxisLabel) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + px((plot_top + plot_bottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"" + std::string(style::kFont) +
           "\" font-size=\"14\" transform=\"rotate(-90 20 " + px((plot_top + plot_bottom) / 2) +
           ")\">" + xml_escape(style::kYAxisLabel) + "</text>\n";

    for (const ReferenceLine& ref : spec.reference_lines) {
        const double y = sy(ref.value);
        svg += "<line class=\"ref\" x1=\"" + px(plot_left) + "\" x2=\"" + px(plot_right) +
               "\" y1=\"" + px(y) + "\" y2=\"" + px(y) +
               "\" stroke=\"#555555\" stroke-dasharray=\"6,4\"/>\n";
        svg += "<text class=\"ref-label\" x=\"" + px(plot_right - 6) + "\" y=\"" + px(y - 6) +
               "\" text-anchor=\"end\" font-family=\"" + std::string(style::kFont) +
               "\" font-size=\"12\" fill=\"#555555\">" + xml_escape(ref.label) + "</text>\n";
    }

    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        const Series& s = spec.series[i];
        const char* color = style::kPalette[i % style::kPaletteSize];
        std::string pts;
        for (const auto& [n, ratio] : s.points) {
            if (!pts.empty()) pts += ' ';
            pts += px(sx(xcoord(n))) + "," + px(sy(ratio));
        }
        svg += "<polyline class=\"series\" points=\"" + pts + "\" fill=\"none\" stroke=\"" +
               std::string(color) + "\" stroke-width=\"1.5\"/>\n";
        for (const auto& [n, ratio] : s.points) {
            svg += "<circle class=\"marker\" cx=\"" + px(sx(xcoord(n))) + "\" cy=\"" +
                   px(sy(ratio)) + "\" r=\"" + px(style::kMarkerRadius) + "\" fill=\"" +
                   std::string(color) + "\"/>\n";
        }
    }

    // legend to the right of the plot area
    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        const char* color = style::kPalette[i % style::kPaletteSize];
        const double y = plot_top + 14 + 20 * static_cast<double>(i);
        svg += "<line x1=\"" + px(plot_right + 12) + "\" x2=\"" + px(plot_right + 34) +
               "\" y1=\"" + px(y) + "\" y2=\"" + px(y) + "\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + px(plot_right + 40) + "\" y=\"" + px(y + 4) +
               "\" font-family=\"" + std::string(style::kFont) + "\" font-size=\"12\">" +
               xml_escape(spec.series[i].label) + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace lipchain
