#include "mbg/solver.hpp"

#include <algorithm>
#include <bit>

#include "mbg/errors.hpp"

namespace mbg {

const char* to_string(game_winner w) { return w == game_winner::maker ? "maker" : "breaker"; }

exact_solver::exact_solver(const hypergraph& board, int q, int vertex_cap)
    : board_(&board), q_(q), n_(board.vertex_count()) {
    if (q < 1) throw input_error("exact_solver: q must be at least 1");
    if (n_ > std::min(vertex_cap, 28))
        throw capacity_error("exact_solver: board exceeds the vertex cap");
    full_mask_ = n_ == 0 ? 0 : (n_ == 32 ? ~0u : ((1u << n_) - 1));
    edge_masks_.reserve(board.edge_count());
    for (int64_t e = 0; e < board.edge_count(); ++e) {
        uint32_t m = 0;
        for (uint32_t u : board.edge(e)) m |= (1u << u);
        edge_masks_.push_back(m);
    }
}

game_winner exact_solver::solve(player first) {
    if (first == player::maker) return solve_position(0, 0, player::maker, 0);
    return solve_position(0, 0, player::breaker, std::min(q_, n_));
}

game_winner exact_solver::solve_position(uint32_t mm, uint32_t bm, player tm, int bl) {
    // Maker already covers an edge? (A fully-Maker edge is never
    // Breaker-touched, so no aliveness test is needed.)
    for (uint32_t em : edge_masks_)
        if ((em & ~mm) == 0) return game_winner::maker;

    // Vertices of completable edges: edges untouched by Breaker, with their
    // missing vertices all free. Neither player benefits from any other
    // vertex, so the search is restricted to these.
    uint32_t live = 0;
    for (uint32_t em : edge_masks_)
        if ((em & bm) == 0) live |= em & ~mm;
    if (live == 0) return game_winner::breaker;

    if (tm == player::maker) bl = 0;  // normalize the memo key
    const uint64_t key = static_cast<uint64_t>(mm) | (static_cast<uint64_t>(bm) << n_) |
                         (static_cast<uint64_t>(bl) << 56) |
                         (static_cast<uint64_t>(tm == player::maker ? 1 : 0) << 61);
    if (const auto it = memo_.find(key); it != memo_.end())
        return static_cast<game_winner>(it->second);

    game_winner result;
    if (tm == player::maker) {
        result = game_winner::breaker;
        for (uint32_t cand = live; cand; cand &= cand - 1) {
            const uint32_t vbit = cand & (~cand + 1);
            const uint32_t mm2 = mm | vbit;
            const int free_after = std::popcount(full_mask_ & ~mm2 & ~bm);
            if (solve_position(mm2, bm, player::breaker, std::min(q_, free_after)) ==
                game_winner::maker) {
                result = game_winner::maker;
                break;
            }
        }
    } else {
        result = game_winner::maker;
        for (uint32_t cand = live; cand; cand &= cand - 1) {
            const uint32_t vbit = cand & (~cand + 1);
            const player next = bl - 1 > 0 ? player::breaker : player::maker;
            if (solve_position(mm, bm | vbit, next, bl - 1) == game_winner::breaker) {
                result = game_winner::breaker;
                break;
            }
        }
    }
    memo_.emplace(key, static_cast<uint8_t>(result));
    return result;
}

game_winner solve(const hypergraph& board, int q, player first, int vertex_cap) {
    exact_solver s(board, q, vertex_cap);
    return s.solve(first);
}

threshold_result threshold_bias_exact(const hypergraph& board, int vertex_cap) {
    const int max_bias = std::max(board.vertex_count(), 1);
    for (int q = 1; q <= max_bias; ++q) {
        if (solve(board, q, player::maker, vertex_cap) == game_winner::breaker) {
            // Breaker monotonicity in q is asserted, not assumed.
            if (q + 1 <= max_bias + 1 &&
                solve(board, q + 1, player::maker, vertex_cap) != game_winner::breaker)
                throw std::logic_error("threshold_bias_exact: Breaker monotonicity violated");
            return {true, q};
        }
    }
    // Maker wins even with q = v(H); possible only with an edge of size <= 1.
    bool tiny_edge = false;
    for (int64_t e = 0; e < board.edge_count(); ++e)
        if (board.edge_size(e) <= 1) tiny_edge = true;
    if (!tiny_edge && board.edge_count() > 0)
        throw std::logic_error("threshold_bias_exact: no Breaker win without a size-<=1 edge");
    return {false, 0};
}

}  // namespace mbg
