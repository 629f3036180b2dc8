#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mbg/game.hpp"
#include "mbg/hypergraph.hpp"
#include "mbg/linear_system.hpp"
#include "mbg/rational.hpp"

namespace mbg {

// Biased Erdos-Selfridge potential of a position, exact: sum over edges not
// touched by Breaker of (1/(q+1))^(#free vertices of the edge), times (q+1)
// when Breaker is the second player.
rational es_potential(const game_state& state, int q, bool first_player_breaker);

// Almost complete solutions (H minus one vertex, open element) that are
// currently dangerous: the major part is fully Maker's and the open element
// is free. Ordered by edge index.
struct almost_complete {
    std::vector<int> major;  // sorted
    int open = 0;
    int64_t edge = 0;
};
std::vector<almost_complete> dangerous_acs(const game_state& state);

// Family of t almost complete solutions with a common major-part element;
// simple when the major parts pairwise intersect in exactly one vertex. Open
// elements lie outside every major part of the record.
struct fan_record {
    std::vector<std::pair<std::vector<int>, int>> members;  // (major, open)
    std::vector<int> common;                                // intersection of the majors
};
// All t-element edge families whose overall intersection has >= 2 vertices,
// recorded with the intersection characteristic (2, l_2, ..., l_t) taken in
// edge-index order.
struct cluster_record {
    std::vector<int64_t> edges;
    std::vector<int> characteristic;
    int union_size = 0;  // v(l)
};

std::vector<fan_record> enumerate_simple_fans(const hypergraph& board, int t, int64_t cap = 200000);
std::vector<cluster_record> enumerate_clusters(const hypergraph& board, int t, int64_t cap = 200000);

// Hypergraphs whose edges are the major-part unions of simple t-fans and the
// unions of t-clusters; the boards Breaker's composite strategy defends.
hypergraph simple_fan_hypergraph(const hypergraph& board, int t, int64_t cap = 200000);
hypergraph cluster_hypergraph(const hypergraph& board, int t, int64_t cap = 200000);

namespace detail {

// Per-vertex Erdos-Selfridge weights, integer-scaled by (q+1)^(max edge
// size), maintained incrementally. Weights live in unsigned 128-bit when they
// provably fit and in big_int otherwise.
template <typename W>
class es_tracker_impl {
public:
    es_tracker_impl(const hypergraph& board, int bias);
    void on_maker(int v);
    void on_breaker(int v);
    // Argmax of weight over free vertices not in `taken`; -1 if every such
    // weight is zero. Ties break to the lowest index.
    int best_free(const game_state& state, const std::vector<char>& taken) const;
    rational potential(int q, bool first_player_breaker) const;
    bool alive(int64_t e) const { return !dead_[e]; }

private:
    const hypergraph* board_;
    int smax_;
    std::vector<int32_t> free_count_;
    std::vector<uint8_t> dead_;
    std::vector<W> vertex_weight_;
    std::vector<W> pow_;  // pow_[s] = (bias+1)^(smax-s)
};

class es_weights {
public:
    es_weights(const hypergraph& board, int bias);
    void on_move(player who, int v);
    int best_free(const game_state& state, const std::vector<char>& taken) const;
    rational potential(int q, bool first_player_breaker) const;

private:
    std::variant<es_tracker_impl<unsigned __int128>, es_tracker_impl<big_int>> impl_;
};

}  // namespace detail

// Base for strategies that maintain incremental state: new moves are replayed
// from the game history on each pick, and the strategy's own picks are
// applied immediately (then skipped during replay).
class incremental_strategy : public strategy {
public:
    void reset(const game_state& state) final;
    std::vector<int> pick(const game_state& state, int count, rng_t& rng) final;

protected:
    explicit incremental_strategy(player role) : role_(role) {}
    virtual void setup(const game_state& state) = 0;
    virtual void apply(player who, int vertex) = 0;
    virtual std::vector<int> do_pick(const game_state& state, int count, rng_t& rng) = 0;
    player role_;

private:
    size_t cursor_ = 0;
    std::deque<int> pending_;
};

// Maker who picks uniformly among never-picked elements; occupied picks fall
// back to the lowest free vertex (which stays unpicked), and Breaker-occupied
// picks count as failures.
class random_maker : public strategy {
public:
    std::string id() const override { return "random-maker"; }
    void reset(const game_state& state) override;
    std::vector<int> pick(const game_state& state, int count, rng_t& rng) override;
    long failure_count() const { return failures_; }
    long pick_count() const { return picks_; }

private:
    std::vector<uint8_t> picked_;
    std::vector<int> unpicked_;
    long failures_ = 0;
    long picks_ = 0;
};

// Plumbing baseline: occupies the free vertex of maximum ES weight.
class greedy_maker : public incremental_strategy {
public:
    greedy_maker() : incremental_strategy(player::maker) {}
    std::string id() const override { return "greedy-maker"; }

protected:
    void setup(const game_state& state) override;
    void apply(player who, int vertex) override;
    std::vector<int> do_pick(const game_state& state, int count, rng_t& rng) override;

private:
    std::optional<detail::es_weights> weights_;
};

// Greedy realization of the biased Erdos-Selfridge theorem: q times, occupy
// the free vertex of maximum potential decrease, ties to the lowest index.
class es_breaker : public incremental_strategy {
public:
    es_breaker() : incremental_strategy(player::breaker) {}
    std::string id() const override { return "es-breaker"; }

protected:
    void setup(const game_state& state) override;
    void apply(player who, int vertex) override;
    std::vector<int> do_pick(const game_state& state, int count, rng_t& rng) override;

private:
    std::optional<detail::es_weights> weights_;
};

// Blocks every 3-AP through Maker's last choice and one earlier choice.
// Requires a 3-AP board on [1, n] (vertex i is the integer i+1).
class threeap_blocker : public incremental_strategy {
public:
    threeap_blocker() : incremental_strategy(player::breaker) {}
    std::string id() const override { return "threeap-breaker"; }
    long overload_events() const { return overloads_; }

protected:
    void setup(const game_state& state) override;
    void apply(player who, int vertex) override;
    std::vector<int> do_pick(const game_state& state, int count, rng_t& rng) override;

private:
    int n_ = 0;
    std::vector<int> maker_ints_;
    long overloads_ = 0;
};

// Occupies the paired completions forced by a positive non-abundant system.
class pairing_breaker : public incremental_strategy {
public:
    explicit pairing_breaker(pairing_certificate cert)
        : incremental_strategy(player::breaker), cert_(std::move(cert)) {}
    std::string id() const override { return "pairing-breaker"; }

protected:
    void setup(const game_state& state) override;
    void apply(player who, int vertex) override;
    std::vector<int> do_pick(const game_state& state, int count, rng_t& rng) override;

private:
    pairing_certificate cert_;
    int64_t n_ = 0;
    std::optional<int> last_maker_;
};

// Composite Breaker splitting the bias q = q/2 + q/4 + q/4: blocks the open
// elements of new dangerous almost complete solutions (up to q/2 moves), runs
// the ES greedy on the simple-t-fan hypergraph (q/4) and on the t-cluster
// hypergraph (at most q/4). Overloads are recorded events, not errors.
class composite_breaker : public incremental_strategy {
public:
    composite_breaker(const hypergraph& board, int q, int t, int64_t enumeration_cap = 200000);
    std::string id() const override;
    long overload_events() const { return overloads_; }
    bool theory_preconditions_met() const { return theory_ok_; }
    const std::string& theory_note() const { return theory_note_; }
    int fan_share() const { return s1_; }
    int cluster_share() const { return s2_; }
    int block_share() const { return s3_; }
    const hypergraph& fan_board() const { return fan_board_; }
    const hypergraph& cluster_board() const { return cluster_board_; }

protected:
    void setup(const game_state& state) override;
    void apply(player who, int vertex) override;
    std::vector<int> do_pick(const game_state& state, int count, rng_t& rng) override;

private:
    const hypergraph* board_;
    int q_, t_;
    int s1_ = 0, s2_ = 0, s3_ = 0;
    bool theory_ok_ = true;
    std::string theory_note_;
    hypergraph fan_board_, cluster_board_;
    std::optional<detail::es_weights> fan_w_, cluster_w_;
    std::vector<int32_t> maker_cnt_;
    std::vector<uint8_t> dead_;
    int last_maker_ = -1;
    long overloads_ = 0;
};

// Optimal play via the exact solver; usable for either role on small boards.
class exact_solver;
class exact_strategy : public strategy {
public:
    explicit exact_strategy(player role, int vertex_cap = 24)
        : role_(role), vertex_cap_(vertex_cap) {}
    std::string id() const override { return "exact"; }
    void reset(const game_state& state) override;
    std::vector<int> pick(const game_state& state, int count, rng_t& rng) override;

private:
    player role_;
    int vertex_cap_;
    std::shared_ptr<exact_solver> solver_;
};

// CLI strategy names: random-maker, greedy-maker, es-breaker,
// composite-breaker:t=<int>, threeap-breaker, pairing-breaker, exact.
struct strategy_context {
    const linear_system* system = nullptr;
};
std::unique_ptr<strategy> make_strategy(const std::string& name, const hypergraph& board, int q,
                                        player role, const strategy_context& ctx = {});

}  // namespace mbg
