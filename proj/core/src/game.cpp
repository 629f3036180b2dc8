#include "mbg/game.hpp"

#include <algorithm>

#include "json.hpp"

#include "mbg/errors.hpp"

namespace mbg {

const char* to_string(player p) { return p == player::maker ? "maker" : "breaker"; }

const char* to_string(game_result r) {
    switch (r) {
        case game_result::maker: return "maker";
        case game_result::breaker: return "breaker";
        case game_result::undecided: return "undecided";
    }
    return "?";
}

game_state::game_state(const hypergraph& board_in, int bias_in, player first)
    : board(&board_in), bias(bias_in), to_move(first) {
    if (bias < 1) throw input_error("game_state: bias must be at least 1");
    owner.assign(board->vertex_count(), 0);
    free_count = board->vertex_count();
}

int game_state::lowest_free() const {
    for (int v = 0; v < static_cast<int>(owner.size()); ++v)
        if (owner[v] == 0) return v;
    return -1;
}

game_result winner(const game_state& state) {
    if (state.board->contains_edge(state.maker_set)) return game_result::maker;
    if (state.free_count == 0) return game_result::breaker;
    return game_result::undecided;
}

std::string transcript::to_json() const {
    nlohmann::json j;
    j["winner"] = to_string(result);
    j["q"] = bias;
    j["seed"] = seed;
    j["maker"] = maker_id;
    j["breaker"] = breaker_id;
    j["rounds"] = rounds;
    j["moves"] = nlohmann::json::array();
    for (const auto& m : moves) {
        j["moves"].push_back({{"round", m.round}, {"player", to_string(m.who)}, {"vertex", m.vertex}});
    }
    if (terminating_edge) j["terminating_edge"] = *terminating_edge;
    return j.dump();
}

namespace {

void occupy(game_state& state, player who, int v) {
    state.owner[v] = who == player::maker ? 1 : 2;
    (who == player::maker ? state.maker_set : state.breaker_set).push_back(v);
    --state.free_count;
    state.history.push_back({state.round, who, v});
}

std::vector<int> checked_moves(const game_state& state, strategy& s, int count, rng_t& rng) {
    std::vector<int> verts = s.pick(state, count, rng);
    if (static_cast<int>(verts.size()) > count)
        throw strategy_fault("strategy '" + s.id() + "' returned too many vertices");
    std::vector<char> chosen(state.owner.size(), 0);
    for (int v : verts) {
        if (v < 0 || v >= static_cast<int>(state.owner.size()))
            throw strategy_fault("strategy '" + s.id() + "' returned an out-of-range vertex");
        if (!state.is_free(v))
            throw strategy_fault("strategy '" + s.id() + "' returned an occupied vertex");
        if (chosen[v]) throw strategy_fault("strategy '" + s.id() + "' returned a duplicate vertex");
        chosen[v] = 1;
    }
    // Shortfalls are padded with the lowest-index free vertices.
    for (int v = 0; static_cast<int>(verts.size()) < count; ++v) {
        if (state.owner[v] == 0 && !chosen[v]) {
            chosen[v] = 1;
            verts.push_back(v);
        }
    }
    return verts;
}

}  // namespace

transcript play(const hypergraph& board, int q, strategy& maker, strategy& breaker, uint64_t seed,
                player first) {
    board.ensure_incidence();
    game_state state(board, q, first);
    maker.reset(state);
    breaker.reset(state);
    rng_t maker_rng(derive_seed(seed, 1));
    rng_t breaker_rng(derive_seed(seed, 2));

    // Incremental Maker-win detection.
    std::vector<int32_t> maker_count(board.edge_count(), 0);

    transcript out;
    out.bias = q;
    out.seed = seed;
    out.maker_id = maker.id();
    out.breaker_id = breaker.id();

    game_result result = board.edge_count() == 0 && board.vertex_count() == 0
                             ? game_result::breaker
                             : game_result::undecided;
    while (result == game_result::undecided && state.free_count > 0) {
        if (state.to_move == player::maker) {
            const std::vector<int> mv = checked_moves(state, maker, 1, maker_rng);
            const int v = mv[0];
            occupy(state, player::maker, v);
            for (int64_t e : board.incident_edges(v)) {
                if (++maker_count[e] == board.edge_size(e)) {
                    result = game_result::maker;
                    out.terminating_edge = board.edge_vertices(e);
                    break;
                }
            }
            state.to_move = player::breaker;
            if (first == player::breaker) ++state.round;
        } else {
            const int count = std::min(q, state.free_count);
            for (int v : checked_moves(state, breaker, count, breaker_rng))
                occupy(state, player::breaker, v);
            state.to_move = player::maker;
            if (first == player::maker) ++state.round;
        }
    }
    if (result == game_result::undecided) result = game_result::breaker;
    out.result = result;
    out.moves = state.history;
    out.rounds = state.history.empty() ? 0 : state.history.back().round;
    return out;
}

}  // namespace mbg
