#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pmbo/harness.hpp"
#include "pmbo/objectives.hpp"

namespace {

int cmd_run(const std::string& config_path) {
    const pmbo::ExperimentConfig config = pmbo::parse_config_file(config_path);
    const pmbo::AggregateResult result = pmbo::run_experiment(config);
    for (const pmbo::AggregateCurve& curve : result.curves)
        std::cout << curve.algorithm << ": median final best " << curve.median.back() << " (band ["
                  << curve.lo.back() << ", " << curve.hi.back() << "])\n";
    std::cout << "results written to " << config.out_dir << "\n";
    return 0;
}

int cmd_optimize(const std::string& objective_name, const std::string& algorithm, int budget,
                 std::uint64_t seed, int seed_size, double gamma, int bootstrap, const std::string& out) {
    const pmbo::Objective objective = pmbo::make_objective(objective_name);
    pmbo::ExperimentConfig config;
    config.objective = objective_name;
    config.max_evaluations = budget;
    config.seed_size = seed_size;
    config.gamma = gamma;
    config.bootstrap_replicates = bootstrap;
    const pmbo::RunTrace trace = pmbo::run_algorithm(algorithm, objective, config, seed);
    const std::string run_id = algorithm + "-s" + std::to_string(seed);
    if (out.empty()) {
        pmbo::write_trace_csv(std::cout, run_id, algorithm, trace);
    } else {
        std::ofstream file(out);
        if (!file) throw pmbo::ConfigError("cannot write: " + out);
        pmbo::write_trace_csv(file, run_id, algorithm, trace);
    }
    std::cerr << "final best " << trace.final_best() << " after " << trace.evaluations()
              << " evaluations (" << pmbo::stop_reason_name(trace.reason) << ")\n";
    return 0;
}

int cmd_plot(const std::string& in_dir, const std::string& out_file) {
    const pmbo::AggregateResult result = pmbo::aggregate_directory(in_dir);
    pmbo::emit_plot(result, out_file);
    std::cout << "plot written to " << out_file << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial-model-based blackbox optimization benchmark driver"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "Run a full experiment from a config file");
    run->add_option("--config", config_path, "Experiment config file")->required();

    std::string objective_name, algorithm, out;
    int budget = 300, seed_size = 50, bootstrap = 20;
    std::uint64_t seed = 0;
    double gamma = 0.5;
    CLI::App* optimize = app.add_subcommand("optimize", "Run a single optimizer and emit its trace");
    optimize->add_option("--objective", objective_name, "Objective name")->required();
    optimize->add_option("--algo", algorithm, "Algorithm name")->required();
    optimize->add_option("--budget", budget, "Evaluation budget");
    optimize->add_option("--seed", seed, "RNG seed");
    optimize->add_option("--seed-size", seed_size, "PMBO seed size");
    optimize->add_option("--gamma", gamma, "Acquisition gamma");
    optimize->add_option("--bootstrap", bootstrap, "Bootstrap replicates");
    optimize->add_option("--out", out, "Trace CSV path (default: stdout)");

    std::string in_dir, out_file;
    CLI::App* plot = app.add_subcommand("plot", "Aggregate trace CSVs into a convergence plot");
    plot->add_option("--in", in_dir, "Directory of trace CSVs")->required();
    plot->add_option("--out", out_file, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*run) return cmd_run(config_path);
        if (*optimize)
            return cmd_optimize(objective_name, algorithm, budget, seed, seed_size, gamma,
                                bootstrap, out);
        if (*plot) return cmd_plot(in_dir, out_file);
    } catch (const pmbo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
