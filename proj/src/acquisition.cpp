#include "pmbo/acquisition.hpp"

#include <stdexcept>

namespace pmbo {

double acquisition_value(double mean, double var, double gamma) {
    if (var < 0.0) throw std::invalid_argument("acquisition_value: variance must be >= 0");
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("acquisition_value: gamma must be in [0,1]");
    return mean - gamma * var;
}

double gamma_at(const AcquisitionConfig& config, int iteration, int max_iterations) {
    if (config.gamma < 0.0 || config.gamma > 1.0)
        throw std::invalid_argument("gamma_at: gamma must be in [0,1]");
    if (config.decay_end < 0.0 || config.decay_end > config.gamma)
        throw std::invalid_argument("gamma_at: decay_end must be in [0, gamma]");
    if (iteration < 0 || iteration > max_iterations)
        throw std::invalid_argument("gamma_at: iteration must be in [0, max_iterations]");
    if (config.schedule == GammaSchedule::Constant || max_iterations == 0) return config.gamma;
    const double progress = static_cast<double>(iteration) / static_cast<double>(max_iterations);
    return config.gamma + (config.decay_end - config.gamma) * progress;
}

IndexSelection select_next_index(const MultiIndexSet& indices, const GeneratingNodes& gen,
                                 const PolynomialSurrogate& surrogate,
                                 const BootstrapEnsemble& ensemble, double gamma) {
    const std::vector<MultiIndex> frontier = indices.frontier(gen.max_exponent());
    if (frontier.empty())
        throw FrontierExhaustedError("select_next_index: no admissible frontier index");

    // Frontier comes in canonical order; strict improvement keeps the
    // canonically smaller index on ties.
    IndexSelection best;
    double best_value = 0.0;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        Point node = node_for_index(frontier[i], gen);
        const double var = ensemble_mean_var(ensemble, node).second;
        const double value = acquisition_value(surrogate.evaluate(node), var, gamma);
        if (i == 0 || value < best_value) {
            best_value = value;
            best = {frontier[i], std::move(node)};
        }
    }
    return best;
}

}  // namespace pmbo
