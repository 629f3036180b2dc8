#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mbg/game.hpp"
#include "mbg/hypergraph.hpp"

namespace mbg {

enum class game_winner : uint8_t { maker, breaker };
const char* to_string(game_winner w);

// Exact optimal-play winner by memoized game-tree search over
// (maker mask, breaker mask, side to move, Breaker sub-moves left this
// round). Breaker's q moves are searched one vertex at a time. Both players
// are restricted to vertices of completable edges (a safe dominance
// reduction, cross-checked against the unpruned search in tests).
class exact_solver {
public:
    exact_solver(const hypergraph& board, int q, int vertex_cap = 28);

    game_winner solve(player first = player::maker);
    // Position solve with the solver's transition convention: after a Maker
    // move Breaker gets min(q, #free) sub-moves; when breaker_left reaches 0
    // the turn passes to Maker.
    game_winner solve_position(uint32_t maker_mask, uint32_t breaker_mask, player to_move,
                               int breaker_left);

    const hypergraph& board() const { return *board_; }
    int bias() const { return q_; }
    size_t memo_size() const { return memo_.size(); }

private:
    const hypergraph* board_;
    int q_;
    int n_;
    uint32_t full_mask_;
    std::vector<uint32_t> edge_masks_;
    std::unordered_map<uint64_t, uint8_t> memo_;
};

game_winner solve(const hypergraph& board, int q, player first = player::maker,
                  int vertex_cap = 28);

// Smallest q with a Breaker win, by increasing q from 1; each hit is
// re-verified at q+1 (Breaker monotonicity is asserted, not assumed). When
// Maker wins even at q = v(H) — possible only with an edge of size <= 1 —
// the result is the infinite sentinel.
struct threshold_result {
    bool finite = false;
    int bias = 0;  // meaningful iff finite
};
threshold_result threshold_bias_exact(const hypergraph& board, int vertex_cap = 28);

}  // namespace mbg
