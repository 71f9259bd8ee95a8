#pragma once

#include <cstdint>

#include "pmbo/acquisition.hpp"
#include "pmbo/multiindex.hpp"
#include "pmbo/objectives.hpp"
#include "pmbo/sampling.hpp"
#include "pmbo/surrogate.hpp"
#include "pmbo/trace.hpp"

namespace pmbo {

/// Points closer than this (Euclidean) to an already-evaluated sample are
/// not re-evaluated by the exploitation step.
inline constexpr double kDuplicateRadius = 1e-9;

struct PmboConfig {
    SeedConfig seed;
    /// Initial total degree of the index set; negative selects the largest
    /// n with |total_degree_set(m, n, 1)| <= floor(seed.size / 1.5).
    int initial_degree_cap = -1;
    AcquisitionConfig acquisition;
    int bootstrap_replicates = 20;
    double ridge = 0.0;
    bool exploit_model_optimum = true;
    int max_evaluations = 300;
    double convergence_tol = 1e-8;
    int convergence_patience = 30;
    std::uint64_t rng_seed = 0;
};

struct Incumbent {
    Point x;
    double f = 0.0;
};

struct OptimizerState {
    SampleSet samples;
    MultiIndexSet indices;
    GeneratingNodes generating_nodes;
    PolynomialSurrogate surrogate;
    BootstrapEnsemble ensemble;
    Incumbent incumbent;
    int evaluations_used = 0;
    int iteration = 0;
};

/// Degree selected by the oversampling rule for a given seed size.
int initial_degree_for_seed(int dimension, int seed_size);

/// Draws and evaluates the seed, builds the initial total-degree index set,
/// and fits surrogate and ensemble. Non-finite objective values are
/// reported with the offending point.
OptimizerState initialize(const Objective& objective, const PmboConfig& config);

/// One refinement iteration: select a frontier index by acquisition,
/// evaluate its node, enlarge the index set, optionally evaluate the
/// surrogate minimizer, refit, and update the incumbent. Never exceeds the
/// evaluation budget. Returns false when the frontier is exhausted.
bool step(OptimizerState& state, const Objective& objective, const PmboConfig& config);

/// Minimizes the surrogate over the cube by projected gradient descent
/// with backtracking line search, restarted from the best unisolvent node
/// and restarts-1 random points. Returns the best point seen.
Point surrogate_minimize(const PolynomialSurrogate& surrogate, int restarts,
                         std::uint64_t rng_seed);

/// Full PMBO run: initialize, then step until the budget is exhausted or
/// the incumbent stops improving for convergence_patience evaluations.
RunTrace run_pmbo(const Objective& objective, const PmboConfig& config);

}  // namespace pmbo
