#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pmbo/baselines.hpp"
#include "pmbo/objectives.hpp"

using namespace pmbo;

namespace {

Objective sphere(int m) {
    return Objective("sphere", std::vector<std::pair<double, double>>(
                                   static_cast<std::size_t>(m), {-1.0, 1.0}),
                     [](const Point& x) {
                         double s = 0.0;
                         for (double v : x) s += v * v;
                         return s;
                     },
                     KnownOptimum{Point(static_cast<std::size_t>(m), 0.0), 0.0});
}

bool traces_equal(const RunTrace& a, const RunTrace& b) {
    if (a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i)
        if (a.records[i].x != b.records[i].x || a.records[i].f != b.records[i].f) return false;
    return true;
}

}  // namespace

TEST_CASE("random search basics") {
    const Objective himmel = make_objective("himmelblau2");
    const RunTrace one = random_search(himmel, 1, 7);
    CHECK(one.evaluations() == 1);
    CHECK(one.final_best() == one.records[0].f);

    const Objective flat("flat", {{-1.0, 1.0}}, [](const Point&) { return 2.0; });
    const RunTrace constant = random_search(flat, 20, 7);
    for (const TraceRecord& rec : constant.records) CHECK(rec.best_so_far == 2.0);

    CHECK(traces_equal(random_search(himmel, 40, 3), random_search(himmel, 40, 3)));
    CHECK_FALSE(traces_equal(random_search(himmel, 40, 3), random_search(himmel, 40, 4)));
}

TEST_CASE("sobol search basics") {
    const Objective himmel = make_objective("himmelblau2");
    const RunTrace one = sobol_search(himmel, 1);
    REQUIRE(one.evaluations() == 1);
    CHECK(one.records[0].x == Point{0.0, 0.0});
    CHECK(one.records[0].f == himmel.evaluate_unit({0.0, 0.0}));

    const RunTrace long_run = sobol_search(himmel, 100);
    CHECK(traces_equal(long_run, sobol_search(himmel, 100)));
    for (std::size_t i = 1; i < long_run.records.size(); ++i)
        CHECK(long_run.records[i].best_so_far <= long_run.records[i - 1].best_so_far);
}

TEST_CASE("cmaes population sizes") {
    CHECK(cmaes_init(3).lambda == 7);   // 4 + floor(3 ln 3)
    CHECK(cmaes_init(6).lambda == 9);   // 4 + floor(3 ln 6)
    CHECK(cmaes_init(2).lambda == 6);
    CHECK(cmaes_init(1).lambda == 4);
}

TEST_CASE("cmaes ask: sigma to zero collapses onto the mean") {
    CmaesState state = cmaes_init(3);
    state.mean << 0.2, -0.4, 0.6;
    state.sigma = 1e-300;
    Rng rng(4);
    for (const Point& p : cmaes_ask(state, rng)) {
        CHECK(std::abs(p[0] - 0.2) <= 1e-12);
        CHECK(std::abs(p[1] + 0.4) <= 1e-12);
        CHECK(std::abs(p[2] - 0.6) <= 1e-12);
    }
}

TEST_CASE("cmaes ask clips to the cube") {
    CmaesState state = cmaes_init(2);
    state.sigma = 50.0;
    Rng rng(5);
    for (const Point& p : cmaes_ask(state, rng)) CHECK(in_unit_cube(p));
}

TEST_CASE("cmaes tell: equal values rank stably by input order") {
    CmaesState state = cmaes_init(2);
    Rng rng(6);
    const std::vector<Point> points = cmaes_ask(state, rng);
    const std::vector<double> values(points.size(), 1.0);
    cmaes_tell(state, points, values);
    // Weighted recombination of the first mu ask points.
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(2);
    for (int i = 0; i < state.mu; ++i) {
        expected(0) += state.weights(i) * points[static_cast<std::size_t>(i)][0];
        expected(1) += state.weights(i) * points[static_cast<std::size_t>(i)][1];
    }
    CHECK(std::abs(state.mean(0) - expected(0)) <= 1e-14);
    CHECK(std::abs(state.mean(1) - expected(1)) <= 1e-14);
}

TEST_CASE("cmaes tell: rejects malformed input") {
    CmaesState state = cmaes_init(2);
    Rng rng(6);
    const std::vector<Point> points = cmaes_ask(state, rng);
    CHECK_THROWS_AS(cmaes_tell(state, points, {1.0}), std::invalid_argument);
    std::vector<double> bad(points.size(), 1.0);
    bad[0] = std::nan("");
    CHECK_THROWS_AS(cmaes_tell(state, points, bad), std::invalid_argument);
}

TEST_CASE("cmaes state invariants hold across generations") {
    const Objective ros = make_objective("rosenbrockN:3");
    CmaesState state = cmaes_init(3);
    Rng rng(9);
    for (int g = 0; g < 40; ++g) {
        const std::vector<Point> points = cmaes_ask(state, rng);
        std::vector<double> values;
        values.reserve(points.size());
        for (const Point& p : points) values.push_back(ros.evaluate_unit(p));
        cmaes_tell(state, points, values);

        CHECK(state.sigma > 0.0);
        const Eigen::MatrixXd& c = state.covariance;
        CHECK((c - c.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }
    CHECK(state.generation == 40);
}

TEST_CASE("cmaes solves the 2d sphere") {
    const Objective s2 = sphere(2);
    const RunTrace trace = cmaes_run(s2, 2000, 0);
    CHECK(trace.evaluations() == 2000);
    CHECK(trace.final_best() <= 1e-8);
}

TEST_CASE("cmaes run: exact budget and determinism") {
    const Objective hart = make_objective("hartmann3");
    for (int budget : {7, 20, 50, 301}) {
        const RunTrace trace = cmaes_run(hart, budget, 11);
        CHECK(trace.evaluations() == static_cast<std::size_t>(budget));
    }
    CHECK(traces_equal(cmaes_run(hart, 100, 2), cmaes_run(hart, 100, 2)));
}

TEST_CASE("cmaes stream prefix matches the run used for pmbo seeding") {
    const Objective hart = make_objective("hartmann3");
    const RunTrace run = cmaes_run(hart, 300, 13);
    const auto stream = cmaes_sample_stream(hart, 50, 13);
    REQUIRE(stream.size() == 50);
    for (std::size_t i = 0; i < stream.size(); ++i) {
        CHECK(stream[i].first == run.records[i].x);
        CHECK(stream[i].second == run.records[i].f);
    }
}
