#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbg/hypergraph.hpp"
#include "mbg/random.hpp"

namespace mbg {

enum class player : uint8_t { maker, breaker };
const char* to_string(player p);

enum class game_result : uint8_t { maker, breaker, undecided };
const char* to_string(game_result r);

struct move_record {
    int round = 0;
    player who = player::maker;
    int vertex = 0;
};

// Single mutable object of one game: disjoint Maker/Breaker/free vertex sets
// over the board, the bias, and the move history.
struct game_state {
    const hypergraph* board = nullptr;
    int bias = 1;  // q
    std::vector<uint8_t> owner;  // 0 free, 1 Maker, 2 Breaker
    std::vector<int> maker_set;
    std::vector<int> breaker_set;
    int free_count = 0;
    std::vector<move_record> history;
    player to_move = player::maker;
    int round = 1;

    game_state() = default;
    game_state(const hypergraph& board, int bias, player first = player::maker);

    bool is_free(int v) const { return owner[v] == 0; }
    int lowest_free() const;  // -1 when the board is full
};

// Maker iff the Maker set contains an edge; Breaker iff the free set is empty
// and no edge is covered; Undecided otherwise.
game_result winner(const game_state& state);

// Per-move callback: produce `count` distinct free vertices (fewer is
// allowed; the engine pads with lowest-index free vertices). Maker is asked
// for one vertex per round, Breaker for min(q, free).
class strategy {
public:
    virtual ~strategy() = default;
    virtual std::string id() const = 0;
    virtual void reset(const game_state& state) { (void)state; }
    virtual std::vector<int> pick(const game_state& state, int count, rng_t& rng) = 0;
};

struct transcript {
    game_result result = game_result::undecided;
    std::vector<move_record> moves;
    int bias = 1;
    uint64_t seed = 0;
    std::string maker_id;
    std::string breaker_id;
    std::optional<std::vector<int>> terminating_edge;  // set iff Maker won
    int rounds = 0;

    // {"winner": ..., "moves": [{"round","player","vertex"}...], "q", "seed",
    //  "maker", "breaker", "terminating_edge"?}
    std::string to_json() const;
};

// Plays one q-biased game to the end. Maker occupies 1 vertex per round,
// Breaker exactly min(q, remaining); Maker-win detection runs after every
// Maker move. Deterministic given the seed: each strategy draws from its own
// derived RNG stream.
transcript play(const hypergraph& board, int q, strategy& maker, strategy& breaker, uint64_t seed,
                player first = player::maker);

}  // namespace mbg
