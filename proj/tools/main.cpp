#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lipchain/chain.hpp"
#include "lipchain/monte_carlo.hpp"
#include "lipchain/numfmt.hpp"
#include "lipchain/point_cloud.hpp"
#include "lipchain/report.hpp"
#include "lipchain/rng.hpp"
#include "lipchain/version.hpp"

namespace {

using namespace lipchain;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitIo = 3;

std::string iso8601_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << bytes;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

RunMeta make_meta(const std::string& invocation, std::uint64_t master_seed) {
    return RunMeta{kToolVersion, kGeneratorId, invocation, master_seed, iso8601_now()};
}

std::string csv_comment_header(const RunMeta& meta) {
    std::string out;
    out += "# tool_version: " + meta.tool_version + "\n";
    out += "# generator_id: " + meta.generator_id + "\n";
    out += "# invocation: " + meta.invocation + "\n";
    out += "# master_seed: " + std::to_string(meta.master_seed) + "\n";
    out += "# timestamp: " + meta.timestamp + "\n";
    return out;
}

std::string summary_line(const ScalingRecord& rec) {
    return "n=" + std::to_string(rec.n) + " L=" + format_shortest(rec.lipschitz) +
           " trials=" + std::to_string(rec.trials) + " median_N=" + format_sig13(rec.median_value) +
           " mean_N=" + format_sig13(rec.mean_value) +
           " ratio_median=" + format_sig13(rec.ratio_median) +
           " median_over_sqrt2n=" + format_sig13(rec.median_over_sqrt2n);
}

int run_compute(const std::string& input, double lipschitz, const std::string& solver,
                bool with_witness) {
    std::string text;
    try {
        text = read_file(input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }

    PointCloud cloud;
    try {
        cloud = load_cloud(text);
    } catch (const ParseError& e) {
        std::cerr << "error: parse failure in '" << input << "': " << e.what() << "\n";
        return kExitIo;
    }

    const LipClass cls(lipschitz);
    ChainResult result;
    try {
        if (solver == "brute") {
            result = longest_chain_bruteforce(cloud, cls);
        } else if (solver == "dp") {
            result = longest_chain_dp(cloud, cls, with_witness);
        } else {
            result = longest_chain_fast(cloud, cls, with_witness);
        }
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::cout << result.value << "\n";
    if (with_witness) {
        const std::vector<std::size_t> witness =
            result.witness ? *result.witness : std::vector<std::size_t>{};
        std::cout << "witness:";
        for (std::size_t idx : witness) std::cout << ' ' << idx;
        std::cout << "\n";
        std::cout << witness_report_json(validate_witness(cloud, cls, witness)) << "\n";
    }
    return kExitOk;
}

int run_simulate(std::size_t n, double lipschitz, std::size_t trials, std::uint64_t seed,
                 const std::string& out_path, unsigned threads, const std::string& invocation) {
    const TrialBatch batch = run_trials(n, LipClass(lipschitz), trials, seed, threads);
    const ScalingRecord rec = summarize(batch);
    std::cout << summary_line(rec) << "\n";
    if (!out_path.empty()) {
        try {
            write_file(out_path, csv_comment_header(make_meta(invocation, seed)) +
                                     write_trials_csv(batch));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitIo;
        }
    }
    return kExitOk;
}

int run_scaling(const std::vector<std::size_t>& grid, double lipschitz, std::size_t trials,
                std::uint64_t seed, const std::string& json_path, const std::string& csv_path,
                unsigned threads, const std::string& invocation) {
    const std::vector<ScalingRecord> records =
        scaling_study(grid, LipClass(lipschitz), trials, seed, threads);
    for (const ScalingRecord& rec : records) std::cout << summary_line(rec) << "\n";

    const RunMeta meta = make_meta(invocation, seed);
    try {
        if (!json_path.empty()) {
            write_file(json_path, write_scaling_json(records, meta, trials, lipschitz));
        }
        if (!csv_path.empty()) {
            write_file(csv_path, csv_comment_header(meta) + write_scaling_csv(records));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int run_figure(const std::vector<std::string>& study_paths,
               const std::vector<std::string>& reference_args, bool linear_x,
               const std::string& out_path) {
    FigureSpec spec;
    spec.log_x = !linear_x;
    try {
        for (const std::string& path : study_paths) {
            const nlohmann::json doc = nlohmann::json::parse(read_file(path));
            Series series;
            series.label = "L=" + format_shortest(doc.at("metadata").at("L").get<double>());
            for (const auto& rec : doc.at("records")) {
                series.points.emplace_back(rec.at("n").get<double>(),
                                           rec.at("ratio_median").get<double>());
            }
            spec.series.push_back(std::move(series));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }

    for (const std::string& arg : reference_args) {
        if (arg == "sqrt2") {
            spec.reference_lines.push_back(ReferenceLine{"√2 ≈ 1.41421", std::sqrt(2.0)});
            continue;
        }
        double value = 0.0;
        const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
        if (ec != std::errc{} || end != arg.data() + arg.size() || !std::isfinite(value)) {
            std::cerr << "error: --reference expects 'sqrt2' or a number, got '" << arg << "'\n";
            return kExitUsage;
        }
        spec.reference_lines.push_back(ReferenceLine{format_shortest(value), value});
    }

    try {
        write_file(out_path, render_figure(spec));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int run_verify(std::size_t max_n, std::size_t cases, std::uint64_t seed, bool inject_fault) {
    const double lipschitz_values[] = {0.5, 1.0, 2.0, 5.0};
    std::size_t checks = 0;
    std::size_t failed = 0;
    bool printed_example = false;

    for (std::size_t case_i = 0; case_i < cases; ++case_i) {
        SplitMix64 aux(derive_stream_state(seed, 2 * case_i));
        const std::size_t n = max_n == 0 ? 0 : aux() % (max_n + 1);
        const PointCloud cloud = generate_uniform(n, SeedSpec{seed, 2 * case_i + 1});

        for (double raw_l : lipschitz_values) {
            const LipClass cls(raw_l);
            ++checks;

            const ChainResult dp = longest_chain_dp(cloud, cls);
            const ChainResult fast = longest_chain_fast(cloud, cls);
            std::size_t fast_value = fast.value;
            if (inject_fault && n >= 1) ++fast_value;

            bool ok = dp.value == fast_value;
            std::string brute_str = "(skipped)";
            if (n <= kBruteForceMaxPoints) {
                const ChainResult brute = longest_chain_bruteforce(cloud, cls);
                brute_str = std::to_string(brute.value);
                ok = ok && brute.value == dp.value;
                if (brute.witness && !validate_witness(cloud, cls, *brute.witness).pass()) ok = false;
            }
            if (dp.witness && !validate_witness(cloud, cls, *dp.witness).pass()) ok = false;
            if (fast.witness && !validate_witness(cloud, cls, *fast.witness).pass()) ok = false;

            if (!ok) {
                ++failed;
                if (!printed_example) {
                    printed_example = true;
                    std::cerr << "mismatch: case=" << case_i << " L=" << format_shortest(raw_l)
                              << " n=" << n << " brute=" << brute_str << " dp=" << dp.value
                              << " fast=" << fast_value << " master_seed=" << seed
                              << " stream=" << (2 * case_i + 1) << "\ncloud:\n"
                              << save_cloud(cloud);
                }
            }
        }
    }

    std::cout << "verify: cases=" << cases << " checks=" << checks << " passed="
              << (checks - failed) << " failed=" << failed << "\n";
    if (failed > 0) {
        std::cout << "solver mismatch detected\n";
        return kExitVerifyFailed;
    }
    std::cout << "all solvers agree\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    std::string invocation;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) invocation += ' ';
        invocation += argv[i];
    }

    CLI::App app{"lipchain: how many points of a planar cloud lie on one L-Lipschitz graph"};
    app.set_version_flag("--version", lipchain::kToolVersion);
    app.require_subcommand(1);

    // compute
    auto* compute = app.add_subcommand("compute", "Solve a single point cloud file");
    std::string input_path;
    double compute_l = 1.0;
    bool with_witness = false;
    std::string solver = "fast";
    compute->add_option("input", input_path, "point cloud file, one 'x,y' per line")->required();
    compute->add_option("-L,--lipschitz", compute_l, "Lipschitz constant (> 0)")
        ->capture_default_str();
    compute->add_flag("--witness", with_witness, "print an optimal chain and its certificate");
    compute->add_option("--solver", solver, "solver to use")
        ->check(CLI::IsMember({"fast", "dp", "brute"}))
        ->capture_default_str();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo trials at a single n");
    std::size_t sim_n = 0;
    double sim_l = 1.0;
    std::size_t sim_trials = lipchain::kDefaultTrials;
    std::uint64_t sim_seed = 0;
    std::string sim_out;
    unsigned sim_threads = 0;
    simulate->add_option("--n", sim_n, "points per cloud")->required()->check(CLI::PositiveNumber);
    simulate->add_option("-L,--lipschitz", sim_l, "Lipschitz constant (> 0)")
        ->capture_default_str();
    simulate->add_option("--trials", sim_trials, "number of trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--seed", sim_seed, "master seed (required for reproducibility)")
        ->required();
    simulate->add_option("--out", sim_out, "write per-trial CSV here");
    simulate->add_option("--threads", sim_threads, "worker threads, 0 = all cores")
        ->capture_default_str();

    // scaling
    auto* scaling = app.add_subcommand("scaling", "Median/mean scaling study over an n-grid");
    std::string grid_arg = [] {
        std::string s;
        for (std::size_t n : lipchain::kDefaultGrid) {
            if (!s.empty()) s += ',';
            s += std::to_string(n);
        }
        return s;
    }();
    double scal_l = 1.0;
    std::size_t scal_trials = lipchain::kDefaultTrials;
    std::uint64_t scal_seed = 0;
    std::string out_json;
    std::string out_csv;
    unsigned scal_threads = 0;
    scaling->add_option("--n-grid", grid_arg, "comma-separated strictly increasing n values")
        ->capture_default_str();
    scaling->add_option("-L,--lipschitz", scal_l, "Lipschitz constant (> 0)")
        ->capture_default_str();
    scaling->add_option("--trials", scal_trials, "trials per grid point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    scaling->add_option("--seed", scal_seed, "master seed (required for reproducibility)")
        ->required();
    scaling->add_option("--out-json", out_json, "write the study as JSON here");
    scaling->add_option("--out-csv", out_csv, "write the study as CSV here");
    scaling->add_option("--threads", scal_threads, "worker threads, 0 = all cores")
        ->capture_default_str();

    // figure
    auto* figure = app.add_subcommand("figure", "Render scaling studies as an SVG chart");
    std::vector<std::string> study_paths;
    std::vector<std::string> references;
    bool linear_x = false;
    std::string fig_out;
    figure->add_option("--scaling", study_paths, "scaling study JSON file(s)")
        ->required()
        ->expected(1, -1);
    figure->add_option("--reference", references, "horizontal reference: 'sqrt2' or a number");
    figure->add_flag("--linear-x", linear_x, "linear x axis instead of log");
    figure->add_option("--out", fig_out, "output SVG path")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "Cross-check brute force, DP and fast solvers");
    std::size_t max_n = 12;
    std::size_t cases = 500;
    std::uint64_t verify_seed = 7;
    bool inject_fault = false;
    verify->add_option("--max-n", max_n, "maximum cloud size (brute force joins for n <= 20)")
        ->capture_default_str();
    verify->add_option("--cases", cases, "number of random clouds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--seed", verify_seed, "master seed")->capture_default_str();
    verify->add_flag("--inject-fault", inject_fault, "")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(compute)) {
            return run_compute(input_path, compute_l, solver, with_witness);
        }
        if (app.got_subcommand(simulate)) {
            return run_simulate(sim_n, sim_l, sim_trials, sim_seed, sim_out, sim_threads,
                                invocation);
        }
        if (app.got_subcommand(scaling)) {
            std::vector<std::size_t> grid;
            std::size_t pos = 0;
            while (pos <= grid_arg.size()) {
                const std::size_t comma = std::min(grid_arg.find(',', pos), grid_arg.size());
                std::size_t value = 0;
                const char* first = grid_arg.data() + pos;
                const char* last = grid_arg.data() + comma;
                const auto [end, ec] = std::from_chars(first, last, value);
                if (ec != std::errc{} || end != last || first == last) {
                    std::cerr << "error: bad --n-grid entry in '" << grid_arg << "'\n";
                    return kExitUsage;
                }
                grid.push_back(value);
                pos = comma + 1;
            }
            for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
                if (grid[i] >= grid[i + 1]) {
                    std::cerr << "error: --n-grid must be strictly increasing\n";
                    return kExitUsage;
                }
            }
            return run_scaling(grid, scal_l, scal_trials, scal_seed, out_json, out_csv,
                               scal_threads, invocation);
        }
        if (app.got_subcommand(figure)) {
            return run_figure(study_paths, references, linear_x, fig_out);
        }
        if (app.got_subcommand(verify)) {
            return run_verify(max_n, cases, verify_seed, inject_fault);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
