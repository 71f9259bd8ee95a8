#include "pmbo/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pmbo/rng.hpp"

namespace pmbo {

GeneratingNodes leja_chebyshev_nodes(int max_exponent) {
    if (max_exponent < 0)
        throw std::invalid_argument("leja_chebyshev_nodes: max exponent must be >= 0");
    if (max_exponent == 0) return {{0.0}};

    const int k = max_exponent;
    // Symmetrized Chebyshev-Lobatto points: exact 0 at the midpoint and
    // exact +/-1 at the ends.
    std::vector<double> remaining(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        const double a = std::cos(j * std::numbers::pi / k);
        const double b = std::cos((k - j) * std::numbers::pi / k);
        remaining[static_cast<std::size_t>(j)] = 0.5 * (a - b);
    }

    std::vector<double> ordered;
    ordered.reserve(remaining.size());
    auto first = std::find(remaining.begin(), remaining.end(), 1.0);
    ordered.push_back(*first);
    remaining.erase(first);

    while (!remaining.empty()) {
        std::size_t pick = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            double prod = 1.0;
            for (double g : ordered) prod *= std::abs(remaining[i] - g);
            if (prod > best || (prod == best && remaining[i] < remaining[pick])) {
                best = prod;
                pick = i;
            }
        }
        ordered.push_back(remaining[pick]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return {std::move(ordered)};
}

Point node_for_index(const MultiIndex& alpha, const GeneratingNodes& gen) {
    Point node(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] < 0 || alpha[i] > gen.max_exponent())
            throw std::invalid_argument("node_for_index: exponent " + std::to_string(alpha[i]) +
                                        " exceeds the generating sequence");
        node[i] = gen[alpha[i]];
    }
    return node;
}

std::vector<Point> random_uniform_points(int dimension, int count, std::uint64_t rng_seed) {
    if (dimension < 1) throw std::invalid_argument("random_uniform_points: dimension must be >= 1");
    if (count < 0) throw std::invalid_argument("random_uniform_points: count must be >= 0");
    Rng rng(rng_seed);
    std::vector<Point> points(static_cast<std::size_t>(count));
    for (Point& p : points) {
        p.resize(static_cast<std::size_t>(dimension));
        for (double& v : p) v = rng.uniform(-1.0, 1.0);
    }
    return points;
}

namespace {

// Joe-Kuo direction-number parameters (new-joe-kuo-6.21201) for dimensions
// 2..16; dimension 1 is the van der Corput sequence.
struct SobolRow {
    int s;
    std::uint32_t a;
    std::array<std::uint32_t, 6> m;
};

constexpr std::array<SobolRow, 15> kSobolRows = {{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
}};

constexpr int kSobolMaxDimension = 16;
constexpr int kSobolBits = 31;

std::vector<std::uint32_t> direction_vector(int dim) {
    std::vector<std::uint32_t> v(kSobolBits);
    if (dim == 0) {
        for (int j = 0; j < kSobolBits; ++j) v[static_cast<std::size_t>(j)] = 1u
                                                                              << (kSobolBits - 1 - j);
        return v;
    }
    const SobolRow& row = kSobolRows[static_cast<std::size_t>(dim - 1)];
    const int s = row.s;
    for (int j = 0; j < s && j < kSobolBits; ++j)
        v[static_cast<std::size_t>(j)] = row.m[static_cast<std::size_t>(j)]
                                         << (kSobolBits - 1 - j);
    for (int j = s; j < kSobolBits; ++j) {
        std::uint32_t value = v[static_cast<std::size_t>(j - s)] ^
                              (v[static_cast<std::size_t>(j - s)] >> s);
        for (int t = 1; t < s; ++t)
            value ^= ((row.a >> (s - 1 - t)) & 1u) * v[static_cast<std::size_t>(j - t)];
        v[static_cast<std::size_t>(j)] = value;
    }
    return v;
}

int lowest_zero_bit(std::uint64_t n) {
    int bit = 0;
    while (n & 1u) {
        n >>= 1;
        ++bit;
    }
    return bit;
}

}  // namespace

std::vector<Point> sobol_points(int dimension, int count) {
    if (dimension < 1 || dimension > kSobolMaxDimension)
        throw std::invalid_argument("sobol_points: dimension must be in [1, 16]");
    if (count < 0) throw std::invalid_argument("sobol_points: count must be >= 0");

    std::vector<std::vector<std::uint32_t>> directions;
    directions.reserve(static_cast<std::size_t>(dimension));
    for (int d = 0; d < dimension; ++d) directions.push_back(direction_vector(d));

    constexpr double scale = 1.0 / 2147483648.0;  // 2^-31
    std::vector<std::uint32_t> state(static_cast<std::size_t>(dimension), 0);
    std::vector<Point> points(static_cast<std::size_t>(count));
    // Gray-code stepping; point index 0 (all zeros) is skipped.
    for (int i = 1; i <= count; ++i) {
        const int c = lowest_zero_bit(static_cast<std::uint64_t>(i) - 1);
        Point& p = points[static_cast<std::size_t>(i - 1)];
        p.resize(static_cast<std::size_t>(dimension));
        for (int d = 0; d < dimension; ++d) {
            state[static_cast<std::size_t>(d)] ^=
                directions[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
            p[static_cast<std::size_t>(d)] =
                2.0 * (state[static_cast<std::size_t>(d)] * scale) - 1.0;
        }
    }
    return points;
}

std::vector<Point> chebyshev_seed(int dimension, int count, const GeneratingNodes& gen) {
    if (dimension < 1) throw std::invalid_argument("chebyshev_seed: dimension must be >= 1");
    if (count < 1) throw std::invalid_argument("chebyshev_seed: count must be >= 1");

    // First `count` indices of the graded-lex enumeration of N^m, emitted
    // degree block by degree block.
    std::vector<MultiIndex> indices;
    indices.reserve(static_cast<std::size_t>(count));
    for (int degree = 0; static_cast<int>(indices.size()) < count; ++degree) {
        std::vector<MultiIndex> block;
        MultiIndex alpha(static_cast<std::size_t>(dimension), 0);
        // Lexicographically ordered compositions of `degree`.
        auto emit = [&](auto&& self, int coord, int remaining) -> void {
            if (coord == dimension - 1) {
                alpha[static_cast<std::size_t>(coord)] = remaining;
                block.push_back(alpha);
                alpha[static_cast<std::size_t>(coord)] = 0;
                return;
            }
            for (int e = 0; e <= remaining; ++e) {
                alpha[static_cast<std::size_t>(coord)] = e;
                self(self, coord + 1, remaining - e);
            }
            alpha[static_cast<std::size_t>(coord)] = 0;
        };
        emit(emit, 0, degree);
        for (MultiIndex& beta : block) {
            indices.push_back(std::move(beta));
            if (static_cast<int>(indices.size()) == count) break;
        }
    }

    std::vector<Point> points;
    points.reserve(indices.size());
    for (const MultiIndex& alpha : indices) points.push_back(node_for_index(alpha, gen));
    return points;
}

const char* seed_strategy_name(SeedStrategy s) {
    switch (s) {
        case SeedStrategy::Random: return "random";
        case SeedStrategy::Chebyshev: return "chebyshev";
        case SeedStrategy::Sobol: return "sobol";
        case SeedStrategy::Cmaes: return "cmaes";
    }
    return "unknown";
}

SeedStrategy seed_strategy_from_name(const std::string& name) {
    if (name == "random") return SeedStrategy::Random;
    if (name == "chebyshev") return SeedStrategy::Chebyshev;
    if (name == "sobol") return SeedStrategy::Sobol;
    if (name == "cmaes") return SeedStrategy::Cmaes;
    throw std::invalid_argument("unknown seed strategy: " + name);
}

}  // namespace pmbo
