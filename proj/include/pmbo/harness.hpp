#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmbo/objectives.hpp"
#include "pmbo/trace.hpp"

namespace pmbo {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One benchmark sweep: every algorithm is repeated with per-repeat seeds
/// base_rng_seed + r, traces land as CSV files under out_dir.
struct ExperimentConfig {
    std::string objective;
    std::vector<std::string> algorithms;  // pmbo-<seed-strategy>, random, sobol, cmaes
    int repeats = 5;
    int max_evaluations = 300;
    int seed_size = 50;
    double gamma = 0.5;
    int bootstrap_replicates = 20;
    std::uint64_t base_rng_seed = 0;
    std::string out_dir;
};

/// Parses the flat key = value config format (see README for keys).
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Median plus min/max band of best_so_far across repeats of one algorithm.
struct AggregateCurve {
    std::string algorithm;
    std::vector<double> median;
    std::vector<double> lo;
    std::vector<double> hi;
};

struct AggregateResult {
    std::vector<AggregateCurve> curves;
};

/// Element-wise median (lower-middle value for even counts) and min/max of
/// best_so_far. All traces must have equal length.
AggregateCurve aggregate(const std::vector<RunTrace>& traces, const std::string& algorithm = "");

/// Runs one algorithm by name ("pmbo-random", "pmbo-chebyshev",
/// "pmbo-sobol", "pmbo-cmaes", "random", "sobol", "cmaes").
RunTrace run_algorithm(const std::string& algorithm, const Objective& objective,
                       const ExperimentConfig& config, std::uint64_t rng_seed);

/// Full sweep: one trace CSV per (algorithm, repeat), a JSON summary and an
/// SVG convergence plot under config.out_dir. Deterministic given the
/// config; the PMBO_THREADS environment variable caps run parallelism.
AggregateResult run_experiment(const ExperimentConfig& config);

/// One SVG convergence chart: median line plus shaded band per algorithm,
/// log-scale y-axis when every plotted value is positive.
void emit_plot(const AggregateResult& result, const std::string& path,
               const std::string& title = "");

/// CSV schema: run_id,algorithm,eval_index,origin,x_1..x_m,f,best_so_far
/// with floats at 17 significant digits.
void write_trace_csv(std::ostream& out, const std::string& run_id, const std::string& algorithm,
                     const RunTrace& trace);

struct LoadedTrace {
    std::string run_id;
    std::string algorithm;
    RunTrace trace;
};

LoadedTrace read_trace_csv(std::istream& in);

/// Reads every *.csv under dir (sorted by filename), aggregates per
/// algorithm with shorter traces padded by their final best.
AggregateResult aggregate_directory(const std::string& dir);

}  // namespace pmbo
