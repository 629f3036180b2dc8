#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "mbg/errors.hpp"
#include "mbg/game.hpp"
#include "mbg/strategies.hpp"
#include "oracles.hpp"

using namespace mbg;

namespace {

// Deliberately faulty strategy for the engine's validation path.
class occupied_picker : public strategy {
public:
    std::string id() const override { return "occupied-picker"; }
    std::vector<int> pick(const game_state& state, int, rng_t&) override {
        if (!state.history.empty()) return {state.history.front().vertex};
        return {0};
    }
};

}  // namespace

TEST_CASE("single-vertex edge is an immediate Maker win") {
    const hypergraph board(1, {{0}});
    random_maker maker;
    es_breaker breaker;
    const transcript t = play(board, 7, maker, breaker, 1);
    CHECK(t.result == game_result::maker);
    CHECK(t.moves.size() == 1);
    REQUIRE(t.terminating_edge.has_value());
    CHECK(*t.terminating_edge == std::vector<int>{0});
}

TEST_CASE("single 2-edge with q=1 is a Breaker win under optimal play") {
    const hypergraph board(2, {{0, 1}});
    exact_strategy maker(player::maker);
    exact_strategy breaker(player::breaker);
    const transcript t = play(board, 1, maker, breaker, 3);
    CHECK(t.result == game_result::breaker);
}

TEST_CASE("3-AP on [5] with q=1 is a Maker win under optimal play") {
    const hypergraph board = oracles::threeap5_board();
    exact_strategy maker(player::maker);
    exact_strategy breaker(player::breaker);
    const transcript t = play(board, 1, maker, breaker, 8);
    CHECK(t.result == game_result::maker);
}

TEST_CASE("winner classification") {
    const hypergraph board = oracles::threeap5_board();
    game_state s(board, 1);
    CHECK(winner(s) == game_result::undecided);
    s.owner[0] = s.owner[2] = s.owner[4] = 1;
    s.maker_set = {0, 2, 4};
    s.free_count -= 3;
    CHECK(winner(s) == game_result::maker);

    game_state s2(board, 1);
    for (int v = 0; v < 5; ++v) s2.owner[v] = 2;
    s2.breaker_set = {0, 1, 2, 3, 4};
    s2.free_count = 0;
    CHECK(winner(s2) == game_result::breaker);
}

TEST_CASE("round bookkeeping: Maker one vertex, Breaker min(q, supply)") {
    const hypergraph board = ap_hypergraph(3, 20);
    for (int q : {1, 3, 6}) {
        random_maker maker;
        es_breaker breaker;
        const transcript t = play(board, q, maker, breaker, 77);
        std::map<int, std::pair<int, int>> per_round;  // round -> (maker, breaker)
        for (const auto& m : t.moves) {
            if (m.who == player::maker)
                ++per_round[m.round].first;
            else
                ++per_round[m.round].second;
        }
        int seen = 0;
        for (const auto& [round, counts] : per_round) {
            CHECK(counts.first <= 1);
            const int before = 20 - seen;
            seen += counts.first + counts.second;
            if (t.result == game_result::breaker || round < per_round.rbegin()->first) {
                CHECK(counts.first == 1);
                CHECK(counts.second == std::min(q, before - 1));
            }
        }
    }
}

TEST_CASE("replay determinism and no draws") {
    const hypergraph board = ap_hypergraph(3, 16);
    for (uint64_t seed = 0; seed < 25; ++seed) {
        random_maker m1, m2;
        es_breaker b1, b2;
        const transcript t1 = play(board, 2, m1, b1, seed);
        const transcript t2 = play(board, 2, m2, b2, seed);
        CHECK(t1.to_json() == t2.to_json());
        CHECK(t1.result != game_result::undecided);
    }
}

TEST_CASE("transcript winner matches the final Maker set") {
    const hypergraph board = ap_hypergraph(3, 12);
    for (uint64_t seed = 0; seed < 20; ++seed) {
        random_maker maker;
        random_maker pseudo_breaker_rng;  // just another RNG consumer
        es_breaker breaker;
        const transcript t = play(board, 2, maker, breaker, seed);
        std::vector<int> maker_set;
        for (const auto& m : t.moves)
            if (m.who == player::maker) maker_set.push_back(m.vertex);
        CHECK((t.result == game_result::maker) == board.contains_edge(maker_set));
        if (t.result == game_result::maker) {
            REQUIRE(t.terminating_edge.has_value());
            CHECK(board.contains_edge(maker_set));
        }
    }
}

TEST_CASE("strategy faults are reported with the strategy name") {
    const hypergraph board = ap_hypergraph(3, 6);
    occupied_picker bad;
    random_maker maker;
    CHECK_THROWS_WITH_AS(play(board, 2, maker, bad, 5),
                         "strategy 'occupied-picker' returned an occupied vertex", strategy_fault);
}

TEST_CASE("breaker can be configured to move first") {
    const hypergraph board = ap_hypergraph(3, 9);
    random_maker maker;
    es_breaker breaker;
    const transcript t = play(board, 3, maker, breaker, 11, player::breaker);
    REQUIRE(!t.moves.empty());
    CHECK(t.moves.front().who == player::breaker);
    CHECK(t.moves.front().round == 1);
}

TEST_CASE("engine pads strategy shortfalls with lowest free vertices") {
    const hypergraph board(6, {{4, 5}});  // es-breaker defends only edge {4,5}
    random_maker maker;
    es_breaker breaker;
    const transcript t = play(board, 4, maker, breaker, 2);
    // first breaker round: one defensive vertex plus three lowest-index pads
    std::vector<int> first_breaker_round;
    for (const auto& m : t.moves)
        if (m.who == player::breaker && m.round == 1) first_breaker_round.push_back(m.vertex);
    CHECK(first_breaker_round.size() == 4);
}
