#include "pmbo/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "pmbo/rng.hpp"

namespace pmbo {

const char* sample_origin_name(SampleOrigin o) {
    switch (o) {
        case SampleOrigin::Seed: return "seed";
        case SampleOrigin::Frontier: return "frontier";
        case SampleOrigin::Exploit: return "exploit";
    }
    return "unknown";
}

SampleSet::SampleSet(int dimension) : dimension_(dimension) {
    if (dimension_ < 1) throw std::invalid_argument("SampleSet: dimension must be >= 1");
}

void SampleSet::append(Point x, double f, SampleOrigin origin) {
    if (static_cast<int>(x.size()) != dimension_)
        throw std::invalid_argument("SampleSet: point dimension mismatch");
    if (!in_unit_cube(x)) throw std::invalid_argument("SampleSet: point outside [-1,1]^m");
    if (!std::isfinite(f)) throw std::invalid_argument("SampleSet: non-finite value");
    samples_.push_back({std::move(x), f, origin});
}

std::vector<Point> SampleSet::points() const {
    std::vector<Point> out;
    out.reserve(samples_.size());
    for (const Sample& s : samples_) out.push_back(s.x);
    return out;
}

std::vector<double> SampleSet::values() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const Sample& s : samples_) out.push_back(s.f);
    return out;
}

namespace {

/// Per-dimension Newton prefix products P_d[k] = prod_{j<k} (x_d - g_j),
/// k = 0..max_degree.
std::vector<std::vector<double>> newton_prefixes(const Point& x, const GeneratingNodes& gen,
                                                 int max_degree) {
    std::vector<std::vector<double>> prefixes(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
        std::vector<double>& p = prefixes[d];
        p.resize(static_cast<std::size_t>(max_degree) + 1);
        p[0] = 1.0;
        for (int k = 0; k < max_degree; ++k)
            p[static_cast<std::size_t>(k) + 1] = p[static_cast<std::size_t>(k)] * (x[d] - gen[k]);
    }
    return prefixes;
}

}  // namespace

Eigen::MatrixXd design_matrix(const std::vector<Point>& points, const MultiIndexSet& indices,
                              const GeneratingNodes& gen) {
    const int max_degree = indices.max_exponent();
    if (max_degree > gen.max_exponent())
        throw std::invalid_argument("design_matrix: index exponent exceeds generating sequence");

    Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()),
                           static_cast<Eigen::Index>(indices.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (static_cast<int>(points[i].size()) != indices.dimension())
            throw std::invalid_argument("design_matrix: point dimension mismatch");
        const auto prefixes = newton_prefixes(points[i], gen, max_degree);
        for (std::size_t j = 0; j < indices.size(); ++j) {
            const MultiIndex& alpha = indices[j];
            double value = 1.0;
            for (std::size_t d = 0; d < alpha.size(); ++d)
                value *= prefixes[d][static_cast<std::size_t>(alpha[d])];
            design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
        }
    }
    return design;
}

double PolynomialSurrogate::evaluate(const Point& x) const {
    const auto prefixes = newton_prefixes(x, generating_nodes, indices.max_exponent());
    double sum = 0.0;
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const MultiIndex& alpha = indices[j];
        double value = coefficients[j];
        for (std::size_t d = 0; d < alpha.size(); ++d)
            value *= prefixes[d][static_cast<std::size_t>(alpha[d])];
        sum += value;
    }
    return sum;
}

Point PolynomialSurrogate::gradient(const Point& x) const {
    const int max_degree = indices.max_exponent();
    const auto prefixes = newton_prefixes(x, generating_nodes, max_degree);

    // Derivatives of the 1D prefixes: D[0] = 0, D[k+1] = D[k] (x - g_k) + P[k].
    std::vector<std::vector<double>> derivs(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
        std::vector<double>& dv = derivs[d];
        dv.resize(static_cast<std::size_t>(max_degree) + 1);
        dv[0] = 0.0;
        for (int k = 0; k < max_degree; ++k)
            dv[static_cast<std::size_t>(k) + 1] =
                dv[static_cast<std::size_t>(k)] * (x[d] - generating_nodes[k]) +
                prefixes[d][static_cast<std::size_t>(k)];
    }

    Point grad(x.size(), 0.0);
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const MultiIndex& alpha = indices[j];
        for (std::size_t d = 0; d < x.size(); ++d) {
            double term = coefficients[j] * derivs[d][static_cast<std::size_t>(alpha[d])];
            if (term == 0.0) continue;
            for (std::size_t e = 0; e < x.size(); ++e) {
                if (e == d) continue;
                term *= prefixes[e][static_cast<std::size_t>(alpha[e])];
            }
            grad[d] += term;
        }
    }
    return grad;
}

std::string PolynomialSurrogate::to_json() const {
    nlohmann::json out;
    out["dimension"] = dimension();
    out["multi_indices"] = nlohmann::json::parse(indices.to_json());
    out["generating_nodes"] = generating_nodes.nodes;
    out["coefficients"] = coefficients;
    return out.dump();
}

PolynomialSurrogate fit(const std::vector<Point>& points, const std::vector<double>& values,
                        const MultiIndexSet& indices, const GeneratingNodes& gen, double ridge) {
    if (points.empty() || points.size() != values.size())
        throw std::invalid_argument("fit: need matching, non-empty points and values");
    if (ridge < 0.0) throw std::invalid_argument("fit: ridge must be >= 0");

    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    const Eigen::Index m = static_cast<Eigen::Index>(indices.size());
    const Eigen::MatrixXd design = design_matrix(points, indices, gen);

    Eigen::MatrixXd system;
    Eigen::VectorXd rhs;
    if (ridge > 0.0) {
        system.resize(n + m, m);
        system.topRows(n) = design;
        system.bottomRows(m) = std::sqrt(ridge) * Eigen::MatrixXd::Identity(m, m);
        rhs.setZero(n + m);
        rhs.head(n) = Eigen::Map<const Eigen::VectorXd>(values.data(), n);
    } else {
        system = design;
        rhs = Eigen::Map<const Eigen::VectorXd>(values.data(), n);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
    if (ridge == 0.0) {
        const Eigen::VectorXd diag = qr.matrixR().diagonal().head(std::min(system.rows(), m)).cwiseAbs();
        const bool deficient = system.rows() < m || diag.size() < m ||
                               diag.minCoeff() < kRankTolerance * diag.maxCoeff();
        if (deficient)
            throw RankDeficientError("fit: least-squares system is rank deficient");
    }
    const Eigen::VectorXd coeffs = qr.solve(rhs);
    if (!coeffs.allFinite()) throw RankDeficientError("fit: non-finite coefficients");

    return {indices, gen, {coeffs.data(), coeffs.data() + coeffs.size()}};
}

PolynomialSurrogate fit(const SampleSet& samples, const MultiIndexSet& indices,
                        const GeneratingNodes& gen, double ridge) {
    if (samples.size() < 1) throw std::invalid_argument("fit: need at least one sample");
    return fit(samples.points(), samples.values(), indices, gen, ridge);
}

PolynomialSurrogate fit_with_fallback(const SampleSet& samples, const MultiIndexSet& indices,
                                      const GeneratingNodes& gen, double ridge) {
    try {
        return fit(samples, indices, gen, ridge);
    } catch (const RankDeficientError&) {
        return fit(samples, indices, gen, kRidgeFallback);
    }
}

BootstrapEnsemble bootstrap_fit(const SampleSet& samples, const MultiIndexSet& indices,
                                const GeneratingNodes& gen, int replicates, std::uint64_t rng_seed,
                                double ridge) {
    if (replicates < 1) throw std::invalid_argument("bootstrap_fit: need at least one replicate");
    if (samples.size() < 1) throw std::invalid_argument("bootstrap_fit: need at least one sample");

    const std::size_t n = samples.size();
    Rng rng(rng_seed);
    // All resample draws happen up front so member fits stay independent of
    // evaluation order.
    std::vector<std::vector<std::size_t>> draws(static_cast<std::size_t>(replicates));
    for (auto& draw : draws) {
        draw.resize(n);
        for (std::size_t& idx : draw) idx = rng.index_below(n);
    }

    BootstrapEnsemble ensemble;
    ensemble.members.reserve(static_cast<std::size_t>(replicates));
    std::vector<Point> points(n);
    std::vector<double> values(n);
    for (const auto& draw : draws) {
        for (std::size_t i = 0; i < n; ++i) {
            points[i] = samples[draw[i]].x;
            values[i] = samples[draw[i]].f;
        }
        try {
            ensemble.members.push_back(fit(points, values, indices, gen, ridge));
        } catch (const RankDeficientError&) {
            ensemble.members.push_back(fit(points, values, indices, gen, kRidgeFallback));
        }
    }
    return ensemble;
}

std::pair<double, double> ensemble_mean_var(const BootstrapEnsemble& ensemble, const Point& x) {
    if (ensemble.members.empty())
        throw std::invalid_argument("ensemble_mean_var: empty ensemble");
    const double b = static_cast<double>(ensemble.members.size());
    double mean = 0.0;
    std::vector<double> evals;
    evals.reserve(ensemble.members.size());
    for (const PolynomialSurrogate& q : ensemble.members) {
        evals.push_back(q.evaluate(x));
        mean += evals.back();
    }
    mean /= b;
    double var = 0.0;
    for (double v : evals) var += (v - mean) * (v - mean);
    var /= b;
    return {mean, var};
}

}  // namespace pmbo
