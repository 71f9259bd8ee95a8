#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "pmbo/baselines.hpp"
#include "pmbo/harness.hpp"

using namespace pmbo;
namespace fs = std::filesystem;

namespace {

RunTrace trace_of(const std::vector<double>& values) {
    RunTrace trace;
    for (double v : values) trace.append({0.1, -0.2}, v, SampleOrigin::Seed);
    return trace;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("pmbo_test_" + tag);
    fs::remove_all(dir);
    return dir;
}

// Minimal well-formedness check: declaration, balanced tags, quoted
// attributes consumed silently.
bool xml_well_formed(const std::string& text) {
    if (text.rfind("<?xml", 0) != 0) return false;
    std::vector<std::string> stack;
    std::size_t i = text.find("?>");
    if (i == std::string::npos) return false;
    i += 2;
    while (i < text.size()) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        const std::size_t close = text.find('>', i);
        if (close == std::string::npos) return false;
        std::string tag = text.substr(i + 1, close - i - 1);
        if (!tag.empty() && tag.front() == '/') {
            if (stack.empty()) return false;
            if (stack.back() != tag.substr(1)) return false;
            stack.pop_back();
        } else if (!tag.empty() && tag.back() != '/') {
            const std::size_t space = tag.find_first_of(" \t\n");
            stack.push_back(space == std::string::npos ? tag : tag.substr(0, space));
        }
        i = close + 1;
    }
    return stack.empty();
}

}  // namespace

TEST_CASE("aggregate: examples and the lower-middle median rule") {
    const AggregateCurve single = aggregate({trace_of({3.0, 1.0})}, "a");
    CHECK(single.median == std::vector<double>{3.0, 1.0});
    CHECK(single.lo == single.median);
    CHECK(single.hi == single.median);

    const AggregateCurve odd =
        aggregate({trace_of({1.0}), trace_of({2.0}), trace_of({3.0})}, "a");
    CHECK(odd.median == std::vector<double>{2.0});
    CHECK(odd.lo == std::vector<double>{1.0});
    CHECK(odd.hi == std::vector<double>{3.0});

    const AggregateCurve even = aggregate(
        {trace_of({1.0}), trace_of({2.0}), trace_of({3.0}), trace_of({4.0})}, "a");
    CHECK(even.median == std::vector<double>{2.0});

    CHECK_THROWS_AS(aggregate({trace_of({1.0, 2.0}), trace_of({1.0})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}

TEST_CASE("trace csv round-trip preserves every value") {
    const Objective himmel = make_objective("himmelblau2");
    const RunTrace trace = random_search(himmel, 25, 3);

    std::stringstream stream;
    write_trace_csv(stream, "random-r0", "random", trace);
    const LoadedTrace loaded = read_trace_csv(stream);
    CHECK(loaded.run_id == "random-r0");
    CHECK(loaded.algorithm == "random");
    REQUIRE(loaded.trace.evaluations() == trace.evaluations());
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        CHECK(loaded.trace.records[i].x == trace.records[i].x);
        CHECK(loaded.trace.records[i].f == trace.records[i].f);
        CHECK(loaded.trace.records[i].best_so_far == trace.records[i].best_so_far);
        CHECK(loaded.trace.records[i].origin == trace.records[i].origin);
    }
}

TEST_CASE("config parsing") {
    const ExperimentConfig config = parse_config_text(
        "# benchmark sweep\n"
        "objective = hartmann3\n"
        "algorithms = pmbo-chebyshev, random , sobol\n"
        "repeats = 5\n"
        "max_evaluations = 300\n"
        "seed_size = 50\n"
        "gamma = 0.5\n"
        "bootstrap_B = 20\n"
        "rng_seed = 0\n"
        "out_dir = /tmp/out\n");
    CHECK(config.objective == "hartmann3");
    CHECK(config.algorithms == std::vector<std::string>{"pmbo-chebyshev", "random", "sobol"});
    CHECK(config.repeats == 5);
    CHECK(config.max_evaluations == 300);
    CHECK(config.out_dir == "/tmp/out");

    CHECK_THROWS_AS(parse_config_text("objective = hartmann3\n"), ConfigError);  // no algorithms
    CHECK_THROWS_AS(parse_config_text("objective = h\nalgorithms = random\nrepeats = zero\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("objective = h\nalgorithms = random\nunknown_key = 1\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/config.txt"), ConfigError);
}

TEST_CASE("run_experiment: file contract and determinism") {
    const fs::path dir = fresh_dir("exp");
    ExperimentConfig config;
    config.objective = "himmelblau2";
    config.algorithms = {"random", "sobol"};
    config.repeats = 2;
    config.max_evaluations = 30;
    config.seed_size = 10;
    config.base_rng_seed = 1;
    config.out_dir = dir.string();

    const AggregateResult result = run_experiment(config);
    REQUIRE(result.curves.size() == 2);

    // 4 trace CSVs + summary + plot.
    CHECK(fs::exists(dir / "random_rep0.csv"));
    CHECK(fs::exists(dir / "random_rep1.csv"));
    CHECK(fs::exists(dir / "sobol_rep0.csv"));
    CHECK(fs::exists(dir / "sobol_rep1.csv"));
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(fs::exists(dir / "convergence.svg"));

    // 30 evaluations + header.
    const std::string csv = slurp(dir / "random_rep0.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 31);

    // Summary's final best equals the last row of the corresponding CSV.
    const nlohmann::json summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    for (const auto& run : summary.at("runs")) {
        std::ifstream in(dir / run.at("file").get<std::string>());
        const LoadedTrace loaded = read_trace_csv(in);
        CHECK(run.at("final_best").get<double>() == loaded.trace.final_best());
        CHECK(run.at("evaluations").get<std::size_t>() == loaded.trace.evaluations());
    }

    // Byte-identical rerun.
    std::map<std::string, std::string> before;
    for (const auto& entry : fs::directory_iterator(dir))
        before[entry.path().filename().string()] = slurp(entry.path());
    const AggregateResult again = run_experiment(config);
    for (const auto& entry : fs::directory_iterator(dir))
        CHECK(before.at(entry.path().filename().string()) == slurp(entry.path()));
    REQUIRE(again.curves.size() == result.curves.size());
    CHECK(again.curves[0].median == result.curves[0].median);

    CHECK_THROWS_AS(
        [&] {
            ExperimentConfig bad = config;
            bad.algorithms = {"annealing"};
            run_experiment(bad);
        }(),
        ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("run_experiment covers pmbo runs with surrogate manifests") {
    const fs::path dir = fresh_dir("pmbo");
    ExperimentConfig config;
    config.objective = "himmelblau2";
    config.algorithms = {"pmbo-sobol"};
    config.repeats = 1;
    config.max_evaluations = 24;
    config.seed_size = 12;
    config.bootstrap_replicates = 4;
    config.out_dir = dir.string();

    run_experiment(config);
    const nlohmann::json summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    const auto& run = summary.at("runs").at(0);
    CHECK(run.at("algorithm") == "pmbo-sobol");
    CHECK(run.at("surrogate").contains("coefficients"));
    CHECK(run.at("surrogate").at("dimension") == 2);
    fs::remove_all(dir);
}

TEST_CASE("emit_plot writes well-formed svg") {
    const fs::path dir = fresh_dir("plot");
    fs::create_directories(dir);

    AggregateResult result;
    result.curves.push_back(aggregate({trace_of({3.0, 2.0, 2.0, 1.0})}, "flat"));
    const fs::path file = dir / "plot.svg";
    emit_plot(result, file.string(), "demo");
    const std::string svg = slurp(file);
    CHECK(xml_well_formed(svg));
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("flat") != std::string::npos);

    // Non-positive values force the linear axis; still well-formed.
    AggregateResult negative;
    negative.curves.push_back(aggregate({trace_of({1.0, -2.0})}, "neg"));
    emit_plot(negative, file.string());
    CHECK(xml_well_formed(slurp(file)));

    CHECK_THROWS_AS(emit_plot(AggregateResult{}, file.string()), std::invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("threaded runs produce the same files as serial runs") {
    ExperimentConfig config;
    config.objective = "himmelblau2";
    config.algorithms = {"random", "cmaes"};
    config.repeats = 3;
    config.max_evaluations = 40;
    config.base_rng_seed = 5;

    const fs::path serial_dir = fresh_dir("serial");
    config.out_dir = serial_dir.string();
    run_experiment(config);

    const fs::path threaded_dir = fresh_dir("threaded");
    config.out_dir = threaded_dir.string();
    setenv("PMBO_THREADS", "4", 1);
    run_experiment(config);
    unsetenv("PMBO_THREADS");

    for (const auto& entry : fs::directory_iterator(serial_dir)) {
        const fs::path other = threaded_dir / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
    }
    fs::remove_all(serial_dir);
    fs::remove_all(threaded_dir);
}

TEST_CASE("aggregate_directory pads early-stopped traces") {
    const fs::path dir = fresh_dir("agg");
    fs::create_directories(dir);
    {
        std::ofstream a(dir / "algo_rep0.csv");
        write_trace_csv(a, "algo-r0", "algo", trace_of({5.0, 4.0, 3.0}));
        std::ofstream b(dir / "algo_rep1.csv");
        write_trace_csv(b, "algo-r1", "algo", trace_of({6.0}));
    }
    const AggregateResult result = aggregate_directory(dir.string());
    REQUIRE(result.curves.size() == 1);
    CHECK(result.curves[0].median.size() == 3);
    CHECK(result.curves[0].hi == std::vector<double>{6.0, 6.0, 6.0});
    CHECK(result.curves[0].lo == std::vector<double>{5.0, 4.0, 3.0});
    fs::remove_all(dir);
}
