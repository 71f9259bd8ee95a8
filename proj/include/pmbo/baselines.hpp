#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "pmbo/objectives.hpp"
#include "pmbo/point.hpp"
#include "pmbo/rng.hpp"
#include "pmbo/trace.hpp"

namespace pmbo {

/// budget i.i.d. uniform cube points, evaluated in order.
RunTrace random_search(const Objective& objective, int budget, std::uint64_t rng_seed);

/// Evaluates the first budget Sobol points in order.
RunTrace sobol_search(const Objective& objective, int budget);

/// CMA-ES search distribution state (Hansen's standard parameterization).
/// The covariance stays symmetric with eigenvalues repaired to >= 1e-20
/// after every update.
struct CmaesState {
    int dimension = 0;
    Eigen::VectorXd mean;
    double sigma = 0.3;
    Eigen::MatrixXd covariance;
    Eigen::VectorXd path_sigma;
    Eigen::VectorXd path_c;
    int generation = 0;

    int lambda = 0;            // population size
    int mu = 0;                // parents
    Eigen::VectorXd weights;   // recombination weights, sum 1
    double mu_eff = 0.0;
    double c_sigma = 0.0;
    double d_sigma = 0.0;
    double c_c = 0.0;
    double c_1 = 0.0;
    double c_mu = 0.0;
    double chi_n = 0.0;        // E||N(0,I)||
};

/// Fresh state centered at the origin of the unit cube.
CmaesState cmaes_init(int dimension);

/// Samples lambda points x_k = mean + sigma * C^(1/2) z_k, clipped to the
/// cube coordinate-wise.
std::vector<Point> cmaes_ask(const CmaesState& state, Rng& rng);

/// Standard rank-1 + rank-mu covariance update with cumulative step-size
/// adaptation. Ranking ties are stable by input order. Rejects non-finite
/// values.
void cmaes_tell(CmaesState& state, const std::vector<Point>& points,
                const std::vector<double>& values);

/// The first count evaluated CMA-ES samples for a fixed seed; complete
/// generations are told, a trailing partial generation is evaluated only.
/// Shared by cmaes_run and the PMBO cmaes seed.
std::vector<std::pair<Point, double>> cmaes_sample_stream(const Objective& objective, int count,
                                                          std::uint64_t rng_seed);

/// Ask/tell generations until the budget is exhausted; the final partial
/// generation is evaluated but not told.
RunTrace cmaes_run(const Objective& objective, int budget, std::uint64_t rng_seed);

}  // namespace pmbo
