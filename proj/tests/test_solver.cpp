#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mbg/criteria.hpp"
#include "mbg/errors.hpp"
#include "mbg/solver.hpp"
#include "mbg/strategies.hpp"
#include "oracles.hpp"

using namespace mbg;

TEST_CASE("hand-verified small positions") {
    const hypergraph pair(2, {{0, 1}});
    CHECK(solve(pair, 1) == game_winner::breaker);

    // 3-AP[5], q=1: Maker takes 3; 1 is answered by 4 (threats 2 and 5 via
    // {2,3,4} and {3,4,5}), 4 is answered by 1 (threats 2 and 5 via {1,2,3}
    // and {1,3,5}); either way a double threat wins.
    CHECK(solve(oracles::threeap5_board(), 1) == game_winner::maker);

    // 3-AP[4], q=1: vertex 2 (or 3) meets both progressions.
    CHECK(solve(ap_hypergraph(3, 4), 1) == game_winner::breaker);
}

TEST_CASE("pruned solver agrees with the naive definitional search") {
    for (int n = 3; n <= 8; ++n) {
        const hypergraph h = ap_hypergraph(3, n);
        for (int q : {1, 2, 3}) {
            for (player first : {player::maker, player::breaker}) {
                CHECK(solve(h, q, first) == oracles::naive_solve(h, q, first));
            }
        }
    }
    for (uint64_t seed = 0; seed < 12; ++seed) {
        const int k = 2 + static_cast<int>(seed % 2);
        const hypergraph h = random_uniform_hypergraph(8, k, 7, seed);
        for (int q : {1, 2}) {
            for (player first : {player::maker, player::breaker}) {
                CHECK(solve(h, q, first) == oracles::naive_solve(h, q, first));
            }
        }
    }
}

TEST_CASE("solver is invariant under board automorphisms") {
    // x -> n+1-x preserves arithmetic progressions
    for (int n : {6, 7}) {
        std::vector<std::vector<int>> reflected;
        const hypergraph h = ap_hypergraph(3, n);
        for (int64_t e = 0; e < h.edge_count(); ++e) {
            std::vector<int> edge;
            for (uint32_t u : h.edge(e)) edge.push_back(n - 1 - static_cast<int>(u));
            reflected.push_back(std::move(edge));
        }
        const hypergraph hr(n, std::move(reflected));
        for (int q : {1, 2}) CHECK(solve(h, q) == solve(hr, q));
    }
    // random relabelling
    rng_t rng(5);
    for (uint64_t seed = 0; seed < 6; ++seed) {
        const hypergraph h = random_uniform_hypergraph(9, 3, 8, seed + 100);
        std::vector<int> perm = sample_uniform_subset(9, 9, rng);
        for (int i = 8; i > 0; --i) std::swap(perm[i], perm[uniform_below(rng, i + 1)]);
        std::vector<std::vector<int>> mapped;
        for (int64_t e = 0; e < h.edge_count(); ++e) {
            std::vector<int> edge;
            for (uint32_t u : h.edge(e)) edge.push_back(perm[u]);
            mapped.push_back(std::move(edge));
        }
        const hypergraph hp(9, std::move(mapped));
        CHECK(solve(h, 2) == solve(hp, 2));
    }
}

TEST_CASE("exact threshold bias") {
    // an edge of size 1 means Maker wins at every bias
    const threshold_result inf = threshold_bias_exact(hypergraph(3, {{1}}));
    CHECK_FALSE(inf.finite);

    const threshold_result t5 = threshold_bias_exact(oracles::threeap5_board());
    REQUIRE(t5.finite);
    CHECK(t5.bias == 2);  // Maker wins at q=1, Breaker at q=2

    // q(3-AP[n]) non-decreasing for n = 3..12
    int prev = 1;
    for (int n = 3; n <= 12; ++n) {
        const threshold_result t = threshold_bias_exact(ap_hypergraph(3, n));
        REQUIRE(t.finite);
        CHECK(t.bias >= prev);
        prev = t.bias;
    }

    CHECK_THROWS_AS(threshold_bias_exact(ap_hypergraph(3, 40)), capacity_error);
}

TEST_CASE("criteria are sound against the oracle on small boards") {
    std::vector<hypergraph> suite;
    for (int n = 4; n <= 12; n += 2) suite.push_back(ap_hypergraph(3, n));
    for (uint64_t seed = 0; seed < 6; ++seed)
        suite.push_back(random_uniform_hypergraph(10, 3, 9, seed + 50));
    suite.push_back(hypergraph(2, {{0, 1}}));

    for (const auto& h : suite) {
        for (int q : {1, 2, 3}) {
            const game_state fresh(h, q);
            const rational phi = es_potential(fresh, q, false);
            const game_winner w = solve(h, q);
            if (phi < 1) CHECK(w == game_winner::breaker);
            if (h.edge_count() > 0 && beck_maker_check(h, q)) CHECK(w == game_winner::maker);
        }
    }
}

TEST_CASE("solver capacity checks") {
    CHECK_THROWS_AS(solve(ap_hypergraph(3, 30), 2), capacity_error);
    CHECK_THROWS_AS(solve(ap_hypergraph(3, 5), 0), input_error);
}
