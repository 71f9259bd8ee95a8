#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "pmbo/acquisition.hpp"
#include "pmbo/rng.hpp"

using namespace pmbo;

namespace {

Point random_cube_point(int m, Rng& rng) {
    Point x(static_cast<std::size_t>(m));
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    return x;
}

}  // namespace

TEST_CASE("acquisition value") {
    CHECK(acquisition_value(4.2, 17.0, 0.0) == 4.2);
    CHECK(acquisition_value(2.0, 0.5, 1.0) == 1.5);
    CHECK(acquisition_value(2.0, 0.0, 0.3) == 2.0);
    CHECK_THROWS_AS(acquisition_value(0.0, -0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(acquisition_value(0.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("acquisition is strictly decreasing in gamma when var > 0") {
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const double mean = rng.uniform(-5.0, 5.0);
        const double var = rng.uniform(1e-6, 3.0);
        double g1 = rng.uniform(0.0, 1.0), g2 = rng.uniform(0.0, 1.0);
        if (g1 > g2) std::swap(g1, g2);
        if (g1 == g2) continue;
        CHECK(acquisition_value(mean, var, g2) < acquisition_value(mean, var, g1));
        CHECK(acquisition_value(mean, 0.0, g1) == acquisition_value(mean, 0.0, g2));
    }
}

TEST_CASE("gamma schedules") {
    AcquisitionConfig constant{0.5, GammaSchedule::Constant, 0.0};
    CHECK(gamma_at(constant, 0, 100) == 0.5);
    CHECK(gamma_at(constant, 57, 100) == 0.5);

    AcquisitionConfig decay{1.0, GammaSchedule::LinearDecay, 0.0};
    CHECK(gamma_at(decay, 100, 100) == 0.0);
    CHECK(gamma_at(decay, 50, 100) == 0.5);
    CHECK(gamma_at(decay, 0, 100) == 1.0);

    CHECK_THROWS_AS(gamma_at(constant, -1, 100), std::invalid_argument);
    CHECK_THROWS_AS(gamma_at(constant, 101, 100), std::invalid_argument);
    CHECK_THROWS_AS(gamma_at({0.3, GammaSchedule::LinearDecay, 0.8}, 0, 10),
                    std::invalid_argument);  // decay_end above gamma
    CHECK_THROWS_AS(gamma_at({1.2, GammaSchedule::Constant, 0.0}, 0, 10), std::invalid_argument);
}

TEST_CASE("select_next_index: single-candidate frontier") {
    // Exact surrogate of f(x) = x over A = {(0),(1)}; the only frontier
    // index is (2) with node g_2 = 0.
    const GeneratingNodes gen = leja_chebyshev_nodes(2);
    const MultiIndexSet indices(1, {{0}, {1}});
    const PolynomialSurrogate q = fit({{1.0}, {-1.0}}, {1.0, -1.0}, indices, gen, 0.0);
    const BootstrapEnsemble single{{q}};

    const IndexSelection picked = select_next_index(indices, gen, q, single, 0.0);
    CHECK(picked.index == MultiIndex{2});
    CHECK(picked.node == Point{0.0});
}

TEST_CASE("select_next_index: equal values fall to the canonically smaller index") {
    const GeneratingNodes gen = leja_chebyshev_nodes(4);
    const MultiIndexSet root(2, {{0, 0}});
    const PolynomialSurrogate flat{root, gen, {1.0}};
    const BootstrapEnsemble ensemble{{flat, flat, flat}};
    const IndexSelection picked = select_next_index(root, gen, flat, ensemble, 0.7);
    CHECK(picked.index == MultiIndex{0, 1});
}

TEST_CASE("select_next_index is deterministic and shift-invariant") {
    Rng rng(41);
    const GeneratingNodes gen = leja_chebyshev_nodes(10);
    const MultiIndexSet indices = total_degree_set(2, 1);

    for (int trial = 0; trial < 10; ++trial) {
        SampleSet base(2), shifted(2);
        for (int i = 0; i < 12; ++i) {
            const Point x = random_cube_point(2, rng);
            const double f = rng.uniform(-2.0, 2.0);
            base.append(x, f, SampleOrigin::Seed);
            shifted.append(x, f + 100.0, SampleOrigin::Seed);
        }
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(trial);
        const PolynomialSurrogate q0 = fit(base, indices, gen, 0.0);
        const PolynomialSurrogate q1 = fit(shifted, indices, gen, 0.0);
        const BootstrapEnsemble e0 = bootstrap_fit(base, indices, gen, 12, seed, 0.0);
        const BootstrapEnsemble e1 = bootstrap_fit(shifted, indices, gen, 12, seed, 0.0);

        const IndexSelection a = select_next_index(indices, gen, q0, e0, 0.5);
        const IndexSelection b = select_next_index(indices, gen, q1, e1, 0.5);
        CHECK(a.index == b.index);  // argmin invariance under constant shift
        const IndexSelection c = select_next_index(indices, gen, q0, e0, 0.5);
        CHECK(a.index == c.index);
        CHECK(a.node == c.node);

        // The winner is always a legal enlargement.
        CHECK(indices.with_index(a.index).is_downward_closed());
    }
}

TEST_CASE("select_next_index reports an exhausted frontier") {
    const GeneratingNodes tiny = leja_chebyshev_nodes(1);
    const MultiIndexSet full(1, {{0}, {1}});
    const PolynomialSurrogate q{full, tiny, {0.0, 0.0}};
    CHECK_THROWS_AS(select_next_index(full, tiny, q, BootstrapEnsemble{{q}}, 0.5),
                    FrontierExhaustedError);
}
