#pragma once

#include <stdexcept>

#include "pmbo/multiindex.hpp"
#include "pmbo/point.hpp"
#include "pmbo/sampling.hpp"
#include "pmbo/surrogate.hpp"

namespace pmbo {

enum class GammaSchedule { Constant, LinearDecay };

/// gamma in [0,1] weighs the ensemble variance against the prediction;
/// higher gamma explores more.
struct AcquisitionConfig {
    double gamma = 0.5;
    GammaSchedule schedule = GammaSchedule::Constant;
    double decay_end = 0.0;
};

/// mean - gamma * var. Lower is better under the minimization convention
/// used throughout: an optimistic lower bound favoring low predictions
/// and/or high uncertainty.
double acquisition_value(double mean, double var, double gamma);

/// Schedule value at the given progress. Constant returns gamma; linear
/// decay interpolates from gamma at 0 to decay_end at max_iterations.
double gamma_at(const AcquisitionConfig& config, int iteration, int max_iterations);

class FrontierExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IndexSelection {
    MultiIndex index;
    Point node;
};

/// Evaluates the acquisition at the node of every frontier index and
/// returns the minimizer; ties go to the canonically smaller index. The
/// expected value is the surrogate's own prediction, the variance comes
/// from the bootstrap ensemble.
/// Throws FrontierExhaustedError when no admissible frontier index remains.
IndexSelection select_next_index(const MultiIndexSet& indices, const GeneratingNodes& gen,
                                 const PolynomialSurrogate& surrogate,
                                 const BootstrapEnsemble& ensemble, double gamma);

}  // namespace pmbo
