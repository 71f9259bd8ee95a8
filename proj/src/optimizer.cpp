#include "pmbo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pmbo/baselines.hpp"
#include "pmbo/rng.hpp"

namespace pmbo {

namespace {

// Stream tags for deriving independent RNG streams from the run seed.
constexpr std::uint64_t kBootstrapStream = 0x1000;
constexpr std::uint64_t kExploitStream = 0x2000;

void validate(const PmboConfig& config, int dimension) {
    if (dimension < 1) throw std::invalid_argument("pmbo: objective dimension must be >= 1");
    if (config.seed.size < 1) throw std::invalid_argument("pmbo: seed size must be >= 1");
    if (config.max_evaluations < config.seed.size)
        throw std::invalid_argument("pmbo: max_evaluations must cover the seed");
    if (config.bootstrap_replicates < 1)
        throw std::invalid_argument("pmbo: bootstrap_replicates must be >= 1");
    if (config.ridge < 0.0) throw std::invalid_argument("pmbo: ridge must be >= 0");
    if (config.convergence_patience < 1)
        throw std::invalid_argument("pmbo: convergence_patience must be >= 1");
    if (config.acquisition.gamma < 0.0 || config.acquisition.gamma > 1.0)
        throw std::invalid_argument("pmbo: gamma must be in [0,1]");
}

double evaluate_checked(const Objective& objective, const Point& x) {
    const double f = objective.evaluate_unit(x);
    if (!std::isfinite(f)) {
        std::string msg = "objective returned a non-finite value at (";
        for (std::size_t i = 0; i < x.size(); ++i)
            msg += (i ? ", " : "") + std::to_string(x[i]);
        throw std::runtime_error(msg + ")");
    }
    return f;
}

Incumbent incumbent_of(const SampleSet& samples) {
    Incumbent best{samples[0].x, samples[0].f};
    for (const Sample& s : samples) {
        if (s.f < best.f) best = {s.x, s.f};
    }
    return best;
}

void refit(OptimizerState& state, const PmboConfig& config) {
    state.surrogate =
        fit_with_fallback(state.samples, state.indices, state.generating_nodes, config.ridge);
    state.ensemble = bootstrap_fit(
        state.samples, state.indices, state.generating_nodes, config.bootstrap_replicates,
        mix_seed(config.rng_seed, kBootstrapStream + static_cast<std::uint64_t>(state.iteration)),
        config.ridge);
}

}  // namespace

int initial_degree_for_seed(int dimension, int seed_size) {
    const long long cap = static_cast<long long>(seed_size / 1.5);
    int degree = 0;
    // |total_degree_set(m, n, 1)| = C(m + n, n), grown incrementally.
    long long size = 1;
    for (int n = 1;; ++n) {
        size = size * (dimension + n) / n;  // exact: C(m+n, n) from C(m+n-1, n-1)
        if (size > cap) break;
        degree = n;
    }
    return degree;
}

OptimizerState initialize(const Objective& objective, const PmboConfig& config) {
    const int m = objective.dimension();
    validate(config, m);

    GeneratingNodes gen = leja_chebyshev_nodes(kMaxExponent);

    std::vector<Point> seed_points;
    std::vector<double> seed_values;
    switch (config.seed.strategy) {
        case SeedStrategy::Random:
            seed_points = random_uniform_points(m, config.seed.size, config.rng_seed);
            break;
        case SeedStrategy::Chebyshev:
            seed_points = chebyshev_seed(m, config.seed.size, gen);
            break;
        case SeedStrategy::Sobol:
            seed_points = sobol_points(m, config.seed.size);
            break;
        case SeedStrategy::Cmaes: {
            // The first seed.size ask-points of a fresh CMA-ES run on this
            // objective; the values come along for free.
            auto stream = cmaes_sample_stream(objective, config.seed.size, config.rng_seed);
            for (auto& [x, f] : stream) {
                seed_points.push_back(std::move(x));
                seed_values.push_back(f);
            }
            break;
        }
    }

    SampleSet samples(m);
    for (std::size_t i = 0; i < seed_points.size(); ++i) {
        const double f = i < seed_values.size() ? seed_values[i]
                                                : evaluate_checked(objective, seed_points[i]);
        samples.append(std::move(seed_points[i]), f, SampleOrigin::Seed);
    }

    const int degree = config.initial_degree_cap >= 0
                           ? config.initial_degree_cap
                           : initial_degree_for_seed(m, config.seed.size);
    MultiIndexSet indices = total_degree_set(m, degree, DegreeNorm::L1);

    OptimizerState state{
        std::move(samples), indices, std::move(gen), {indices, {}, {}}, {}, {}, 0, 0,
    };
    state.evaluations_used = static_cast<int>(state.samples.size());
    state.incumbent = incumbent_of(state.samples);
    refit(state, config);
    return state;
}

Point surrogate_minimize(const PolynomialSurrogate& surrogate, int restarts,
                         std::uint64_t rng_seed) {
    if (restarts < 1) throw std::invalid_argument("surrogate_minimize: restarts must be >= 1");
    const int m = surrogate.dimension();

    // Best unisolvent node of the surrogate's own index set.
    Point best_node;
    double best_node_value = std::numeric_limits<double>::infinity();
    for (const MultiIndex& alpha : surrogate.indices) {
        Point node = node_for_index(alpha, surrogate.generating_nodes);
        const double value = surrogate.evaluate(node);
        if (value < best_node_value) {
            best_node_value = value;
            best_node = std::move(node);
        }
    }

    std::vector<Point> starts;
    starts.push_back(std::move(best_node));
    for (Point& p : random_uniform_points(m, restarts - 1, rng_seed))
        starts.push_back(std::move(p));

    Point best = starts.front();
    double best_value = best_node_value;

    for (const Point& start : starts) {
        Point x = start;
        double fx = surrogate.evaluate(x);
        if (fx < best_value) {
            best_value = fx;
            best = x;
        }
        for (int iter = 0; iter < 200; ++iter) {
            const Point grad = surrogate.gradient(x);

            // Fixed-point residual of the projection map.
            Point projected = x;
            for (int d = 0; d < m; ++d) projected[static_cast<std::size_t>(d)] -= grad[static_cast<std::size_t>(d)];
            clamp_to_unit_cube(projected);
            double residual = 0.0;
            for (int d = 0; d < m; ++d) {
                const double r = x[static_cast<std::size_t>(d)] - projected[static_cast<std::size_t>(d)];
                residual += r * r;
            }
            if (std::sqrt(residual) <= 1e-9) break;

            // Backtracking line search, halving from step 1.
            double step_size = 1.0;
            bool accepted = false;
            for (int halving = 0; halving < 60; ++halving) {
                Point candidate = x;
                for (int d = 0; d < m; ++d)
                    candidate[static_cast<std::size_t>(d)] -= step_size * grad[static_cast<std::size_t>(d)];
                clamp_to_unit_cube(candidate);
                const double fc = surrogate.evaluate(candidate);
                double agreement = 0.0;  // grad . (candidate - x), <= 0 for descent
                for (int d = 0; d < m; ++d)
                    agreement += grad[static_cast<std::size_t>(d)] *
                                 (candidate[static_cast<std::size_t>(d)] - x[static_cast<std::size_t>(d)]);
                if (fc <= fx + 1e-4 * agreement) {
                    x = std::move(candidate);
                    fx = fc;
                    accepted = true;
                    break;
                }
                step_size *= 0.5;
            }
            if (!accepted) break;
            if (fx < best_value) {
                best_value = fx;
                best = x;
            }
        }
    }
    return best;
}

bool step(OptimizerState& state, const Objective& objective, const PmboConfig& config) {
    if (state.evaluations_used >= config.max_evaluations)
        throw std::logic_error("step: evaluation budget already exhausted");

    const double gamma =
        gamma_at(config.acquisition, state.evaluations_used, config.max_evaluations);

    IndexSelection selection;
    try {
        selection = select_next_index(state.indices, state.generating_nodes, state.surrogate,
                                      state.ensemble, gamma);
    } catch (const FrontierExhaustedError&) {
        return false;
    }

    const double f = evaluate_checked(objective, selection.node);
    state.samples.append(selection.node, f, SampleOrigin::Frontier);
    state.evaluations_used += 1;
    state.indices = state.indices.with_index(selection.index);

    if (config.exploit_model_optimum && state.evaluations_used < config.max_evaluations) {
        Point candidate = surrogate_minimize(
            state.surrogate, 16,
            mix_seed(config.rng_seed,
                     kExploitStream + static_cast<std::uint64_t>(state.iteration)));
        bool duplicate = false;
        for (const Sample& s : state.samples) {
            if (squared_distance(s.x, candidate) < kDuplicateRadius * kDuplicateRadius) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            const double fc = evaluate_checked(objective, candidate);
            state.samples.append(std::move(candidate), fc, SampleOrigin::Exploit);
            state.evaluations_used += 1;
        }
    }

    refit(state, config);
    state.incumbent = incumbent_of(state.samples);
    state.iteration += 1;
    return true;
}

RunTrace run_pmbo(const Objective& objective, const PmboConfig& config) {
    OptimizerState state = initialize(objective, config);

    RunTrace trace;
    trace.reason = StopReason::Budget;
    std::size_t logged = 0;
    auto sync_trace = [&] {
        for (; logged < state.samples.size(); ++logged) {
            const Sample& s = state.samples[logged];
            trace.append(s.x, s.f, s.origin);
        }
    };
    sync_trace();

    while (state.evaluations_used < config.max_evaluations) {
        if (!step(state, objective, config)) break;  // frontier exhausted
        sync_trace();

        const std::size_t n = trace.records.size();
        const std::size_t window = static_cast<std::size_t>(config.convergence_patience);
        if (n >= static_cast<std::size_t>(config.seed.size) + window) {
            const double improvement =
                trace.records[n - 1 - window].best_so_far - trace.records[n - 1].best_so_far;
            if (improvement < config.convergence_tol) {
                trace.reason = StopReason::Converged;
                break;
            }
        }
    }
    trace.final_surrogate = std::move(state.surrogate);
    return trace;
}

}  // namespace pmbo
