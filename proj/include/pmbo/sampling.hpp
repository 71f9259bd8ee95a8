#pragma once

#include <cstdint>
#include <vector>

#include "pmbo/multiindex.hpp"
#include "pmbo/point.hpp"

namespace pmbo {

/// 1D generating nodes (g_0, ..., g_K) in [-1,1]. Multi-dimensional
/// unisolvent nodes are built coordinate-wise from this sequence, so it is
/// fixed once per run.
struct GeneratingNodes {
    std::vector<double> nodes;

    int max_exponent() const { return static_cast<int>(nodes.size()) - 1; }
    double operator[](int j) const { return nodes[static_cast<std::size_t>(j)]; }
};

/// Chebyshev-Lobatto points {cos(j pi / K)} reordered by the greedy Leja
/// rule: g_0 = 1, then each g_k maximizes prod_{j<k} |g - g_j| over the
/// remaining points, ties broken toward the smaller value. K = 0 gives the
/// single node 0.
GeneratingNodes leja_chebyshev_nodes(int max_exponent);

/// The unisolvent node p_alpha = (g_{alpha_1}, ..., g_{alpha_m}).
/// Rejects exponents exceeding the node sequence.
Point node_for_index(const MultiIndex& alpha, const GeneratingNodes& gen);

/// count i.i.d. uniform points in [-1,1]^m, deterministic given the seed.
std::vector<Point> random_uniform_points(int dimension, int count, std::uint64_t rng_seed);

/// First count points of the standard Sobol sequence (Joe-Kuo direction
/// numbers, dimensions 1..16), skipping the all-zeros index-0 point and
/// affinely mapped from [0,1) to [-1,1).
std::vector<Point> sobol_points(int dimension, int count);

/// Unisolvent nodes of the first count multi-indices of the graded
/// lexicographic enumeration of N^m. Rejects counts whose indices need
/// exponents beyond the node sequence.
std::vector<Point> chebyshev_seed(int dimension, int count, const GeneratingNodes& gen);

enum class SeedStrategy { Random, Chebyshev, Sobol, Cmaes };

struct SeedConfig {
    SeedStrategy strategy = SeedStrategy::Random;
    int size = 50;
    std::uint64_t rng_seed = 0;
};

const char* seed_strategy_name(SeedStrategy s);
SeedStrategy seed_strategy_from_name(const std::string& name);

}  // namespace pmbo
