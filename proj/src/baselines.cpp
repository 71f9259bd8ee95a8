#include "pmbo/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pmbo/sampling.hpp"

namespace pmbo {

namespace {

double evaluate_checked(const Objective& objective, const Point& x) {
    const double f = objective.evaluate_unit(x);
    if (!std::isfinite(f)) throw std::runtime_error("objective returned a non-finite value");
    return f;
}

}  // namespace

RunTrace random_search(const Objective& objective, int budget, std::uint64_t rng_seed) {
    if (budget < 1) throw std::invalid_argument("random_search: budget must be >= 1");
    RunTrace trace;
    for (Point& x : random_uniform_points(objective.dimension(), budget, rng_seed)) {
        const double f = evaluate_checked(objective, x);
        trace.append(std::move(x), f, SampleOrigin::Seed);
    }
    return trace;
}

RunTrace sobol_search(const Objective& objective, int budget) {
    if (budget < 1) throw std::invalid_argument("sobol_search: budget must be >= 1");
    RunTrace trace;
    for (Point& x : sobol_points(objective.dimension(), budget)) {
        const double f = evaluate_checked(objective, x);
        trace.append(std::move(x), f, SampleOrigin::Seed);
    }
    return trace;
}

CmaesState cmaes_init(int dimension) {
    if (dimension < 1) throw std::invalid_argument("cmaes_init: dimension must be >= 1");
    CmaesState s;
    const double m = static_cast<double>(dimension);
    s.dimension = dimension;
    s.mean = Eigen::VectorXd::Zero(dimension);
    s.sigma = 0.3;
    s.covariance = Eigen::MatrixXd::Identity(dimension, dimension);
    s.path_sigma = Eigen::VectorXd::Zero(dimension);
    s.path_c = Eigen::VectorXd::Zero(dimension);
    s.generation = 0;

    s.lambda = 4 + static_cast<int>(std::floor(3.0 * std::log(m)));
    s.mu = s.lambda / 2;
    s.weights.resize(s.mu);
    for (int i = 0; i < s.mu; ++i)
        s.weights(i) = std::log((s.lambda + 1.0) / 2.0) - std::log(i + 1.0);
    const double wsum = s.weights.sum();
    s.weights /= wsum;
    s.mu_eff = 1.0 / s.weights.squaredNorm();

    s.c_sigma = (s.mu_eff + 2.0) / (m + s.mu_eff + 5.0);
    s.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((s.mu_eff - 1.0) / (m + 1.0)) - 1.0) + s.c_sigma;
    s.c_c = (4.0 + s.mu_eff / m) / (m + 4.0 + 2.0 * s.mu_eff / m);
    s.c_1 = 2.0 / ((m + 1.3) * (m + 1.3) + s.mu_eff);
    s.c_mu = std::min(1.0 - s.c_1,
                      2.0 * (s.mu_eff - 2.0 + 1.0 / s.mu_eff) / ((m + 2.0) * (m + 2.0) + s.mu_eff));
    s.chi_n = std::sqrt(m) * (1.0 - 1.0 / (4.0 * m) + 1.0 / (21.0 * m * m));
    return s;
}

std::vector<Point> cmaes_ask(const CmaesState& state, Rng& rng) {
    const int m = state.dimension;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(state.covariance);
    const Eigen::MatrixXd basis = eig.eigenvectors();
    const Eigen::VectorXd scale = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();

    std::vector<Point> points(static_cast<std::size_t>(state.lambda));
    Eigen::VectorXd z(m);
    for (Point& p : points) {
        for (int d = 0; d < m; ++d) z(d) = rng.normal();
        const Eigen::VectorXd x = state.mean + state.sigma * (basis * scale.cwiseProduct(z).eval());
        p.resize(static_cast<std::size_t>(m));
        for (int d = 0; d < m; ++d) p[static_cast<std::size_t>(d)] = x(d);
        clamp_to_unit_cube(p);
    }
    return points;
}

void cmaes_tell(CmaesState& state, const std::vector<Point>& points,
                const std::vector<double>& values) {
    const int m = state.dimension;
    if (static_cast<int>(points.size()) != state.lambda ||
        static_cast<int>(values.size()) != state.lambda)
        throw std::invalid_argument("cmaes_tell: expected lambda points and values");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("cmaes_tell: non-finite value");

    // Rank ascending, stable by input order on ties.
    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
    });

    const Eigen::VectorXd old_mean = state.mean;
    Eigen::MatrixXd selected(m, state.mu);
    for (int i = 0; i < state.mu; ++i) {
        const Point& p = points[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        for (int d = 0; d < m; ++d) selected(d, i) = p[static_cast<std::size_t>(d)];
    }
    const Eigen::VectorXd new_mean = selected * state.weights;
    const Eigen::VectorXd y_w = (new_mean - old_mean) / state.sigma;
    state.mean = new_mean;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(state.covariance);
    const Eigen::VectorXd inv_scale =
        eig.eigenvalues().cwiseMax(1e-20).cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd inv_sqrt =
        eig.eigenvectors() * inv_scale.asDiagonal() * eig.eigenvectors().transpose();

    state.path_sigma = (1.0 - state.c_sigma) * state.path_sigma +
                       std::sqrt(state.c_sigma * (2.0 - state.c_sigma) * state.mu_eff) *
                           (inv_sqrt * y_w);

    const double path_norm = state.path_sigma.norm();
    const double expected =
        std::sqrt(1.0 - std::pow(1.0 - state.c_sigma, 2.0 * (state.generation + 1)));
    const bool h_sigma =
        path_norm / expected < (1.4 + 2.0 / (m + 1.0)) * state.chi_n;

    state.path_c = (1.0 - state.c_c) * state.path_c +
                   (h_sigma ? std::sqrt(state.c_c * (2.0 - state.c_c) * state.mu_eff) : 0.0) * y_w;

    Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < state.mu; ++i) {
        const Eigen::VectorXd y = (selected.col(i) - old_mean) / state.sigma;
        rank_mu += state.weights(i) * (y * y.transpose());
    }
    const double stall = h_sigma ? 0.0 : state.c_c * (2.0 - state.c_c);
    state.covariance = (1.0 - state.c_1 - state.c_mu) * state.covariance +
                       state.c_1 * (state.path_c * state.path_c.transpose() +
                                    stall * state.covariance) +
                       state.c_mu * rank_mu;

    state.sigma *= std::exp((state.c_sigma / state.d_sigma) * (path_norm / state.chi_n - 1.0));

    // Symmetrize and repair the eigenvalues.
    state.covariance = 0.5 * (state.covariance + state.covariance.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> repair(state.covariance);
    const Eigen::VectorXd repaired = repair.eigenvalues().cwiseMax(1e-20);
    state.covariance =
        repair.eigenvectors() * repaired.asDiagonal() * repair.eigenvectors().transpose();
    state.covariance = 0.5 * (state.covariance + state.covariance.transpose()).eval();

    state.generation += 1;
}

std::vector<std::pair<Point, double>> cmaes_sample_stream(const Objective& objective, int count,
                                                          std::uint64_t rng_seed) {
    if (count < 1) throw std::invalid_argument("cmaes_sample_stream: count must be >= 1");
    CmaesState state = cmaes_init(objective.dimension());
    Rng rng(rng_seed);

    std::vector<std::pair<Point, double>> stream;
    stream.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(stream.size()) < count) {
        std::vector<Point> points = cmaes_ask(state, rng);
        const int remaining = count - static_cast<int>(stream.size());
        if (remaining >= state.lambda) {
            std::vector<double> values;
            values.reserve(points.size());
            for (const Point& p : points) values.push_back(evaluate_checked(objective, p));
            cmaes_tell(state, points, values);
            for (int i = 0; i < state.lambda; ++i)
                stream.emplace_back(std::move(points[static_cast<std::size_t>(i)]),
                                    values[static_cast<std::size_t>(i)]);
        } else {
            // Partial final generation: evaluated, never told.
            for (int i = 0; i < remaining; ++i) {
                const double f = evaluate_checked(objective, points[static_cast<std::size_t>(i)]);
                stream.emplace_back(std::move(points[static_cast<std::size_t>(i)]), f);
            }
        }
    }
    return stream;
}

RunTrace cmaes_run(const Objective& objective, int budget, std::uint64_t rng_seed) {
    if (budget < 1) throw std::invalid_argument("cmaes_run: budget must be >= 1");
    RunTrace trace;
    for (auto& [x, f] : cmaes_sample_stream(objective, budget, rng_seed))
        trace.append(std::move(x), f, SampleOrigin::Seed);
    return trace;
}

}  // namespace pmbo
