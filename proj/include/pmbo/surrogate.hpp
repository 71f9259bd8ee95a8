#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmbo/multiindex.hpp"
#include "pmbo/point.hpp"
#include "pmbo/sampling.hpp"

namespace pmbo {

/// Relative R-diagonal threshold below which a ridge-free least-squares
/// system is reported as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/// Ridge applied when a caller retries after a rank-deficiency signal.
inline constexpr double kRidgeFallback = 1e-8;

enum class SampleOrigin { Seed, Frontier, Exploit };

const char* sample_origin_name(SampleOrigin o);

struct Sample {
    Point x;
    double f = 0.0;
    SampleOrigin origin = SampleOrigin::Seed;
};

/// Evaluated points in [-1,1]^m, append-only; the append order defines the
/// evaluation count.
class SampleSet {
public:
    explicit SampleSet(int dimension);

    int dimension() const { return dimension_; }
    std::size_t size() const { return samples_.size(); }
    const Sample& operator[](std::size_t i) const { return samples_[i]; }
    auto begin() const { return samples_.begin(); }
    auto end() const { return samples_.end(); }

    /// Rejects dimension mismatches, points outside the cube and non-finite
    /// values.
    void append(Point x, double f, SampleOrigin origin);

    std::vector<Point> points() const;
    std::vector<double> values() const;

private:
    int dimension_;
    std::vector<Sample> samples_;
};

class RankDeficientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Polynomial over Pi_A in the Newton basis
/// N_alpha(x) = prod_i prod_{j<alpha_i} (x_i - g_j), coefficients in
/// canonical index order.
struct PolynomialSurrogate {
    MultiIndexSet indices;
    GeneratingNodes generating_nodes;
    std::vector<double> coefficients;

    int dimension() const { return indices.dimension(); }

    double evaluate(const Point& x) const;
    double operator()(const Point& x) const { return evaluate(x); }

    /// Exact analytic partial derivatives of the Newton-form polynomial.
    Point gradient(const Point& x) const;

    /// {dimension, multi-index array, generating-node array, coefficient
    /// array}; written to run manifests.
    std::string to_json() const;
};

/// Matrix with entry (i, alpha) = N_alpha(points_i).
Eigen::MatrixXd design_matrix(const std::vector<Point>& points, const MultiIndexSet& indices,
                              const GeneratingNodes& gen);

/// Least-squares fit min_c ||Dc - f||^2 + ridge ||c||^2 over Pi_A.
/// With ridge = 0 and a singular system (relative R-diagonal below
/// kRankTolerance) throws RankDeficientError; callers retry with
/// kRidgeFallback.
PolynomialSurrogate fit(const std::vector<Point>& points, const std::vector<double>& values,
                        const MultiIndexSet& indices, const GeneratingNodes& gen, double ridge);

PolynomialSurrogate fit(const SampleSet& samples, const MultiIndexSet& indices,
                        const GeneratingNodes& gen, double ridge);

/// fit, retrying once with kRidgeFallback on a rank-deficiency signal.
PolynomialSurrogate fit_with_fallback(const SampleSet& samples, const MultiIndexSet& indices,
                                      const GeneratingNodes& gen, double ridge);

/// B surrogates refit on resamples of the data; pointwise spread across
/// members estimates model uncertainty.
struct BootstrapEnsemble {
    std::vector<PolynomialSurrogate> members;

    std::size_t replicates() const { return members.size(); }
};

/// Draws B resamples of whole (x, f) pairs with replacement (deterministic
/// given rng_seed) and fits each. Members that hit a ridge-free
/// rank-deficiency signal are refit with kRidgeFallback.
BootstrapEnsemble bootstrap_fit(const SampleSet& samples, const MultiIndexSet& indices,
                                const GeneratingNodes& gen, int replicates, std::uint64_t rng_seed,
                                double ridge);

/// Ensemble mean and population variance (1/B normalization, so a single
/// member gives variance 0) at x.
std::pair<double, double> ensemble_mean_var(const BootstrapEnsemble& ensemble, const Point& x);

}  // namespace pmbo
