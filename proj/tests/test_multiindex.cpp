#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "pmbo/multiindex.hpp"
#include "pmbo/rng.hpp"

using namespace pmbo;

namespace {

// Brute-force enumeration of {alpha in {0..cap}^m : ||alpha||_p <= degree},
// independent of the library's recursive generator.
std::vector<MultiIndex> brute_ball(int m, int degree, DegreeNorm norm, int cap) {
    std::vector<MultiIndex> out;
    MultiIndex alpha(static_cast<std::size_t>(m), 0);
    for (;;) {
        bool ok = true;
        if (norm == DegreeNorm::L1) {
            ok = total_degree(alpha) <= degree;
        } else if (norm == DegreeNorm::L2) {
            long long sq = 0;
            for (int e : alpha) sq += 1LL * e * e;
            ok = sq <= 1LL * degree * degree;
        } else {
            ok = *std::max_element(alpha.begin(), alpha.end()) <= degree;
        }
        if (ok) out.push_back(alpha);
        int d = 0;
        while (d < m && alpha[static_cast<std::size_t>(d)] == cap) {
            alpha[static_cast<std::size_t>(d)] = 0;
            ++d;
        }
        if (d == m) break;
        alpha[static_cast<std::size_t>(d)] += 1;
    }
    return out;
}

// Frontier by definition: every beta (entries <= cap) not in A whose backward
// neighbors all lie in A.
std::vector<MultiIndex> brute_frontier(const MultiIndexSet& a, int cap) {
    std::vector<MultiIndex> out;
    for (MultiIndex beta : brute_ball(a.dimension(), cap * a.dimension(), DegreeNorm::L1, cap)) {
        if (a.contains(beta)) continue;
        bool admissible = true;
        for (int i = 0; i < a.dimension() && admissible; ++i) {
            if (beta[static_cast<std::size_t>(i)] == 0) continue;
            MultiIndex backward = beta;
            backward[static_cast<std::size_t>(i)] -= 1;
            admissible = a.contains(backward);
        }
        if (admissible) out.push_back(beta);
    }
    std::sort(out.begin(), out.end(), graded_lex_less);
    return out;
}

long long binomial(int n, int k) {
    long long result = 1;
    for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

// Random downward-closed set: a total-degree seed enlarged by random
// frontier picks.
MultiIndexSet random_downward_closed(int m, int grow_steps, Rng& rng) {
    MultiIndexSet a = total_degree_set(m, static_cast<int>(rng.index_below(2)), DegreeNorm::L1);
    for (int s = 0; s < grow_steps; ++s) {
        const auto frontier = a.frontier();
        a = a.with_index(frontier[rng.index_below(frontier.size())]);
    }
    return a;
}

}  // namespace

TEST_CASE("total_degree_set examples") {
    const MultiIndexSet a = total_degree_set(2, 1, DegreeNorm::L1);
    CHECK(a.size() == 3);
    CHECK(a[0] == MultiIndex{0, 0});
    CHECK(a[1] == MultiIndex{0, 1});
    CHECK(a[2] == MultiIndex{1, 0});

    CHECK(total_degree_set(2, 2, DegreeNorm::LInf).size() == 9);
    CHECK(total_degree_set(3, 2, DegreeNorm::L1).size() == 10);

    CHECK_THROWS_AS(total_degree_set(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(total_degree_set(2, -1), std::invalid_argument);
}

TEST_CASE("total_degree_set matches brute-force enumeration") {
    for (int m = 1; m <= 3; ++m) {
        for (int n = 0; n <= 4; ++n) {
            for (DegreeNorm norm : {DegreeNorm::L1, DegreeNorm::L2, DegreeNorm::LInf}) {
                const MultiIndexSet a = total_degree_set(m, n, norm);
                auto expected = brute_ball(m, n, norm, n);
                std::sort(expected.begin(), expected.end(), graded_lex_less);
                REQUIRE(a.size() == expected.size());
                for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == expected[i]);
                CHECK(a.is_downward_closed());
            }
        }
    }
}

TEST_CASE("l1 set sizes equal binomial coefficients") {
    for (int m = 1; m <= 4; ++m)
        for (int n = 0; n <= 6; ++n)
            CHECK(static_cast<long long>(total_degree_set(m, n, DegreeNorm::L1).size()) ==
                  binomial(m + n, n));
}

TEST_CASE("is_downward_closed") {
    CHECK(MultiIndexSet(2, {{0, 0}}).is_downward_closed());
    CHECK(MultiIndexSet(2, {{0, 0}, {1, 0}, {0, 1}}).is_downward_closed());
    CHECK_FALSE(MultiIndexSet(2, {{0, 0}, {2, 0}}).is_downward_closed());
    CHECK(is_downward_closed(total_degree_set(3, 3, DegreeNorm::L2)));
}

TEST_CASE("set construction rejects bad members") {
    CHECK_THROWS_AS(MultiIndexSet(2, {{0, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndexSet(2, {{0, 0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndexSet(2, {{0, -1}}), std::invalid_argument);
}

TEST_CASE("frontier examples") {
    CHECK(MultiIndexSet(1, {{0}}).frontier() == std::vector<MultiIndex>{{1}});
    CHECK(MultiIndexSet(2, {{0, 0}}).frontier() == std::vector<MultiIndex>{{0, 1}, {1, 0}});
    CHECK(total_degree_set(2, 1).frontier() ==
          std::vector<MultiIndex>{{0, 2}, {1, 1}, {2, 0}});
    CHECK_THROWS_AS(MultiIndexSet(2, {{0, 0}, {2, 0}}).frontier(), std::invalid_argument);
}

TEST_CASE("frontier matches brute force on random downward-closed sets") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 1 + static_cast<int>(rng.index_below(3));
        const MultiIndexSet a = random_downward_closed(m, 8, rng);
        const auto fr = a.frontier();
        const auto expected = brute_frontier(a, a.max_exponent() + 1);
        REQUIRE(fr == expected);
        for (const MultiIndex& beta : fr) {
            CHECK_FALSE(a.contains(beta));
            CHECK(a.with_index(beta).is_downward_closed());
        }
    }
}

TEST_CASE("frontier respects the exponent cap") {
    const MultiIndexSet a = total_degree_set(1, 2);
    CHECK(a.frontier(2).empty());
    CHECK(a.frontier(3) == std::vector<MultiIndex>{{3}});
}

TEST_CASE("with_index examples") {
    const MultiIndexSet root(2, {{0, 0}});
    const MultiIndexSet grown = root.with_index({1, 0});
    CHECK(grown.size() == 2);
    CHECK(grown.contains({1, 0}));

    const MultiIndexSet four = total_degree_set(2, 1).with_index({1, 1});
    CHECK(four.size() == 4);
    CHECK(four.is_downward_closed());

    CHECK_THROWS_AS(root.with_index({2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(four.with_index({1, 1}), std::invalid_argument);
}

TEST_CASE("json round-trip reproduces the canonical sequence") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const MultiIndexSet a = random_downward_closed(2, 6, rng);
        const MultiIndexSet back = MultiIndexSet::from_json(a.to_json());
        CHECK(back == a);
        CHECK(back.to_json() == a.to_json());
    }
}
