#include "mbg/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "mbg/errors.hpp"
#include "mbg/solver.hpp"

namespace mbg {

rational es_potential(const game_state& state, int q, bool first_player_breaker) {
    if (q < 1) throw input_error("es_potential: q must be at least 1");
    const hypergraph& board = *state.board;
    std::map<int, int64_t> by_free;
    for (int64_t e = 0; e < board.edge_count(); ++e) {
        int free = 0;
        bool breaker_hit = false;
        for (uint32_t u : board.edge(e)) {
            if (state.owner[u] == 2) {
                breaker_hit = true;
                break;
            }
            if (state.owner[u] == 0) ++free;
        }
        if (!breaker_hit) ++by_free[free];
    }
    rational total(0);
    rational inv(1, q + 1);
    inv.canonicalize();
    for (const auto& [s, count] : by_free)
        total += rational(static_cast<long>(count)) * pow_rational(inv, s);
    if (!first_player_breaker) total *= rational(q + 1);
    return total;
}

std::vector<almost_complete> dangerous_acs(const game_state& state) {
    const hypergraph& board = *state.board;
    std::vector<almost_complete> out;
    for (int64_t e = 0; e < board.edge_count(); ++e) {
        int maker = 0;
        int open = -1;
        bool breaker_hit = false;
        for (uint32_t u : board.edge(e)) {
            if (state.owner[u] == 1) {
                ++maker;
            } else if (state.owner[u] == 2) {
                breaker_hit = true;
                break;
            } else {
                open = static_cast<int>(u);
            }
        }
        if (breaker_hit || maker != board.edge_size(e) - 1 || open < 0) continue;
        almost_complete acs;
        acs.open = open;
        acs.edge = e;
        for (uint32_t u : board.edge(e))
            if (static_cast<int>(u) != open) acs.major.push_back(static_cast<int>(u));
        out.push_back(std::move(acs));
    }
    return out;
}

namespace {

struct anchored_acs {
    int64_t edge;
    int open;
    std::vector<int> major;  // sorted
};

// |a cap b| for sorted vectors.
int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    int count = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (a[i] > b[j]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

bool contains_sorted(const std::vector<int>& a, int x) {
    return std::binary_search(a.begin(), a.end(), x);
}

}  // namespace

std::vector<fan_record> enumerate_simple_fans(const hypergraph& board, int t, int64_t cap) {
    if (t < 1) throw input_error("enumerate_simple_fans: t must be positive");
    std::vector<fan_record> out;
    auto emit = [&](fan_record r) {
        if (static_cast<int64_t>(out.size()) >= cap)
            throw capacity_error("enumerate_simple_fans: cap exceeded");
        out.push_back(std::move(r));
    };

    if (t == 1) {
        for (int64_t e = 0; e < board.edge_count(); ++e) {
            const auto edge = board.edge(e);
            for (uint32_t h : edge) {
                fan_record r;
                std::vector<int> major;
                for (uint32_t u : edge)
                    if (u != h) major.push_back(static_cast<int>(u));
                r.common = major;
                r.members.emplace_back(std::move(major), static_cast<int>(h));
                emit(std::move(r));
            }
        }
        return out;
    }

    board.ensure_incidence();
    const int64_t work_limit = std::max<int64_t>(10000000, cap * 64);
    int64_t work = 0;
    for (int x = 0; x < board.vertex_count(); ++x) {
        std::vector<anchored_acs> ax;
        for (int64_t e : board.incident_edges(x)) {
            const auto edge = board.edge(e);
            for (uint32_t h : edge) {
                if (static_cast<int>(h) == x) continue;
                anchored_acs a;
                a.edge = e;
                a.open = static_cast<int>(h);
                for (uint32_t u : edge)
                    if (u != h) a.major.push_back(static_cast<int>(u));
                ax.push_back(std::move(a));
            }
        }
        if (static_cast<int>(ax.size()) < t) continue;
        std::vector<int> sel;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(sel.size()) == t) {
                fan_record r;
                r.common = {x};
                for (int i : sel) r.members.emplace_back(ax[i].major, ax[i].open);
                emit(std::move(r));
                return;
            }
            for (int i = start; i < static_cast<int>(ax.size()); ++i) {
                if (++work > work_limit)
                    throw capacity_error("enumerate_simple_fans: work limit exceeded");
                bool ok = true;
                for (int j : sel) {
                    // Simple: majors share exactly the anchor. Open elements
                    // must avoid every major of the record.
                    if (intersection_size(ax[i].major, ax[j].major) != 1 ||
                        contains_sorted(ax[j].major, ax[i].open) ||
                        contains_sorted(ax[i].major, ax[j].open)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                sel.push_back(i);
                self(self, i + 1);
                sel.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

std::vector<cluster_record> enumerate_clusters(const hypergraph& board, int t, int64_t cap) {
    if (t < 1) throw input_error("enumerate_clusters: t must be positive");
    std::vector<cluster_record> out;
    auto emit = [&](cluster_record r) {
        if (static_cast<int64_t>(out.size()) >= cap)
            throw capacity_error("enumerate_clusters: cap exceeded");
        out.push_back(std::move(r));
    };

    if (t == 1) {
        for (int64_t e = 0; e < board.edge_count(); ++e) {
            if (board.edge_size(e) < 2) continue;
            cluster_record r;
            r.edges = {e};
            r.characteristic = {2};
            r.union_size = board.edge_size(e);
            emit(std::move(r));
        }
        return out;
    }

    std::map<std::pair<int, int>, std::vector<int64_t>> by_pair;
    for (int64_t e = 0; e < board.edge_count(); ++e) {
        const auto edge = board.edge(e);
        for (size_t i = 0; i < edge.size(); ++i)
            for (size_t j = i + 1; j < edge.size(); ++j)
                by_pair[{static_cast<int>(edge[i]), static_cast<int>(edge[j])}].push_back(e);
    }

    const int64_t work_limit = std::max<int64_t>(10000000, cap * 64);
    int64_t work = 0;
    std::vector<int64_t> sel;
    std::vector<int> characteristic;
    for (const auto& [anchor, list] : by_pair) {
        if (static_cast<int>(list.size()) < t) continue;
        // inter/uni stacks per recursion depth
        std::vector<std::vector<int>> inter_stack(t + 1), uni_stack(t + 1);
        auto rec = [&](auto&& self, int start) -> void {
            const int depth = static_cast<int>(sel.size());
            if (depth == t) {
                const auto& inter = inter_stack[depth];
                if (inter[0] != anchor.first || inter[1] != anchor.second) return;  // dedup anchor
                cluster_record r;
                r.edges = sel;
                r.characteristic = characteristic;
                r.union_size = static_cast<int>(uni_stack[depth].size());
                emit(std::move(r));
                return;
            }
            for (size_t i = start; i < list.size(); ++i) {
                if (++work > work_limit)
                    throw capacity_error("enumerate_clusters: work limit exceeded");
                const int64_t e = list[i];
                std::vector<int> ev;
                for (uint32_t u : board.edge(e)) ev.push_back(static_cast<int>(u));
                if (depth == 0) {
                    inter_stack[1] = ev;
                    uni_stack[1] = ev;
                    characteristic.push_back(2);  // l_1 = 2 by convention
                } else {
                    auto& inter = inter_stack[depth + 1];
                    auto& uni = uni_stack[depth + 1];
                    inter.clear();
                    std::set_intersection(inter_stack[depth].begin(), inter_stack[depth].end(),
                                          ev.begin(), ev.end(), std::back_inserter(inter));
                    uni.clear();
                    std::set_union(uni_stack[depth].begin(), uni_stack[depth].end(), ev.begin(),
                                   ev.end(), std::back_inserter(uni));
                    characteristic.push_back(intersection_size(uni_stack[depth], ev));
                }
                sel.push_back(e);
                self(self, static_cast<int>(i) + 1);
                sel.pop_back();
                characteristic.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

hypergraph simple_fan_hypergraph(const hypergraph& board, int t, int64_t cap) {
    std::vector<std::vector<int>> edges;
    for (const auto& fan : enumerate_simple_fans(board, t, cap)) {
        std::vector<int> u;
        for (const auto& [major, open] : fan.members) u.insert(u.end(), major.begin(), major.end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        edges.push_back(std::move(u));
    }
    return hypergraph(board.vertex_count(), std::move(edges));
}

hypergraph cluster_hypergraph(const hypergraph& board, int t, int64_t cap) {
    std::vector<std::vector<int>> edges;
    for (const auto& cl : enumerate_clusters(board, t, cap)) {
        std::vector<int> u;
        for (int64_t e : cl.edges)
            for (uint32_t v : board.edge(e)) u.push_back(static_cast<int>(v));
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        edges.push_back(std::move(u));
    }
    return hypergraph(board.vertex_count(), std::move(edges));
}

namespace detail {

template <typename W>
es_tracker_impl<W>::es_tracker_impl(const hypergraph& board, int bias) : board_(&board) {
    board.ensure_incidence();
    smax_ = std::max(board.max_edge_size(), 1);
    pow_.resize(smax_ + 1);
    pow_[smax_] = W(1);
    for (int s = smax_ - 1; s >= 0; --s) pow_[s] = pow_[s + 1] * W(bias + 1);
    free_count_.resize(board.edge_count());
    dead_.assign(board.edge_count(), 0);
    vertex_weight_.assign(board.vertex_count(), W(0));
    for (int64_t e = 0; e < board.edge_count(); ++e) {
        const int s = board.edge_size(e);
        free_count_[e] = s;
        for (uint32_t u : board.edge(e)) vertex_weight_[u] += pow_[s];
    }
}

template <typename W>
void es_tracker_impl<W>::on_maker(int v) {
    for (int64_t e : board_->incident_edges(v)) {
        if (dead_[e]) continue;
        const int s = free_count_[e]--;
        const W delta = pow_[s - 1] - pow_[s];
        for (uint32_t u : board_->edge(e)) vertex_weight_[u] += delta;
    }
}

template <typename W>
void es_tracker_impl<W>::on_breaker(int v) {
    for (int64_t e : board_->incident_edges(v)) {
        if (dead_[e]) continue;
        dead_[e] = 1;
        const W w = pow_[free_count_[e]];
        for (uint32_t u : board_->edge(e)) vertex_weight_[u] -= w;
    }
}

template <typename W>
int es_tracker_impl<W>::best_free(const game_state& state, const std::vector<char>& taken) const {
    int best = -1;
    const W* best_w = nullptr;
    for (int v = 0; v < board_->vertex_count(); ++v) {
        if (state.owner[v] != 0 || taken[v]) continue;
        const W& w = vertex_weight_[v];
        if (w == W(0)) continue;
        if (best < 0 || w > *best_w) {
            best = v;
            best_w = &w;
        }
    }
    return best;
}

template <typename W>
rational es_tracker_impl<W>::potential(int q, bool first_player_breaker) const {
    std::map<int, int64_t> by_free;
    for (int64_t e = 0; e < board_->edge_count(); ++e)
        if (!dead_[e]) ++by_free[free_count_[e]];
    rational total(0);
    rational inv(1, q + 1);
    inv.canonicalize();
    for (const auto& [s, count] : by_free)
        total += rational(static_cast<long>(count)) * pow_rational(inv, s);
    if (!first_player_breaker) total *= rational(q + 1);
    return total;
}

template class es_tracker_impl<unsigned __int128>;
template class es_tracker_impl<big_int>;

namespace {

std::variant<es_tracker_impl<unsigned __int128>, es_tracker_impl<big_int>> make_tracker(
    const hypergraph& board, int bias) {
    using variant_t = std::variant<es_tracker_impl<unsigned __int128>, es_tracker_impl<big_int>>;
    const big_int bound =
        pow_big(big_int(bias + 1), std::max(board.max_edge_size(), 1)) *
        big_int(static_cast<long>(board.edge_count() + 1));
    if (mpz_sizeinbase(bound.get_mpz_t(), 2) <= 120)
        return variant_t(std::in_place_index<0>, board, bias);
    return variant_t(std::in_place_index<1>, board, bias);
}

}  // namespace

es_weights::es_weights(const hypergraph& board, int bias) : impl_(make_tracker(board, bias)) {
    if (bias < 1) throw input_error("es_weights: bias must be at least 1");
}

void es_weights::on_move(player who, int v) {
    std::visit(
        [&](auto& t) {
            if (who == player::maker)
                t.on_maker(v);
            else
                t.on_breaker(v);
        },
        impl_);
}

int es_weights::best_free(const game_state& state, const std::vector<char>& taken) const {
    return std::visit([&](const auto& t) { return t.best_free(state, taken); }, impl_);
}

rational es_weights::potential(int q, bool first_player_breaker) const {
    return std::visit([&](const auto& t) { return t.potential(q, first_player_breaker); }, impl_);
}

}  // namespace detail

void incremental_strategy::reset(const game_state& state) {
    cursor_ = 0;
    pending_.clear();
    setup(state);
}

std::vector<int> incremental_strategy::pick(const game_state& state, int count, rng_t& rng) {
    for (; cursor_ < state.history.size(); ++cursor_) {
        const move_record& m = state.history[cursor_];
        if (m.who == role_ && !pending_.empty() && pending_.front() == m.vertex) {
            pending_.pop_front();
            continue;
        }
        apply(m.who, m.vertex);
    }
    // Contract: do_pick applies each vertex it returns (via apply) itself.
    std::vector<int> mv = do_pick(state, count, rng);
    for (int v : mv) pending_.push_back(v);
    return mv;
}

void random_maker::reset(const game_state& state) {
    picked_.assign(state.owner.size(), 0);
    unpicked_.resize(state.owner.size());
    for (size_t v = 0; v < state.owner.size(); ++v) unpicked_[v] = static_cast<int>(v);
    failures_ = 0;
    picks_ = 0;
}

std::vector<int> random_maker::pick(const game_state& state, int count, rng_t& rng) {
    (void)count;
    if (unpicked_.empty()) return {state.lowest_free()};
    const size_t j = uniform_below(rng, unpicked_.size());
    const int v = unpicked_[j];
    unpicked_[j] = unpicked_.back();
    unpicked_.pop_back();
    picked_[v] = 1;
    ++picks_;
    if (state.is_free(v)) return {v};
    if (state.owner[v] == 2) ++failures_;
    // The fallback vertex is occupied but stays unpicked ("forgotten").
    return {state.lowest_free()};
}

void greedy_maker::setup(const game_state& state) {
    weights_.emplace(*state.board, state.bias);
}

void greedy_maker::apply(player who, int vertex) { weights_->on_move(who, vertex); }

std::vector<int> greedy_maker::do_pick(const game_state& state, int count, rng_t& rng) {
    (void)count;
    (void)rng;
    std::vector<char> taken(state.owner.size(), 0);
    int v = weights_->best_free(state, taken);
    if (v < 0) v = state.lowest_free();
    apply(player::maker, v);
    return {v};
}

void es_breaker::setup(const game_state& state) { weights_.emplace(*state.board, state.bias); }

void es_breaker::apply(player who, int vertex) { weights_->on_move(who, vertex); }

std::vector<int> es_breaker::do_pick(const game_state& state, int count, rng_t& rng) {
    (void)rng;
    std::vector<char> taken(state.owner.size(), 0);
    std::vector<int> out;
    for (int i = 0; i < count; ++i) {
        const int v = weights_->best_free(state, taken);
        if (v < 0) break;  // nothing left to defend; the engine pads
        taken[v] = 1;
        apply(player::breaker, v);
        out.push_back(v);
    }
    return out;
}

void threeap_blocker::setup(const game_state& state) {
    n_ = state.board->vertex_count();
    if (!(*state.board == ap_hypergraph(3, n_)))
        throw precondition_error("threeap-breaker: board is not the 3-AP hypergraph");
    maker_ints_.clear();
    overloads_ = 0;
}

void threeap_blocker::apply(player who, int vertex) {
    if (who == player::maker) maker_ints_.push_back(vertex + 1);
}

std::vector<int> threeap_blocker::do_pick(const game_state& state, int count, rng_t& rng) {
    (void)rng;
    if (maker_ints_.empty()) return {};
    const int x = maker_ints_.back();
    std::vector<int> blocks;
    for (size_t i = 0; i + 1 < maker_ints_.size(); ++i) {
        const int y = maker_ints_[i];
        int candidates[3] = {2 * x - y, 2 * y - x, (x + y) % 2 == 0 ? (x + y) / 2 : 0};
        for (int z : candidates) {
            if (z < 1 || z > n_) continue;
            if (!state.is_free(z - 1)) continue;
            blocks.push_back(z - 1);
        }
    }
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    if (static_cast<int>(blocks.size()) > count) {
        ++overloads_;
        blocks.resize(count);
    }
    for (int v : blocks) apply(player::breaker, v);
    return blocks;
}

void pairing_breaker::setup(const game_state& state) {
    n_ = state.board->vertex_count();
    last_maker_.reset();
}

void pairing_breaker::apply(player who, int vertex) {
    if (who == player::maker) last_maker_ = vertex;
}

std::vector<int> pairing_breaker::do_pick(const game_state& state, int count, rng_t& rng) {
    (void)rng;
    if (!last_maker_) return {};
    std::vector<int> out;
    for (int64_t z : pairing_targets(cert_, *last_maker_ + 1, n_)) {
        if (static_cast<int>(out.size()) >= count) break;
        const int v = static_cast<int>(z - 1);
        if (state.is_free(v)) {
            apply(player::breaker, v);
            out.push_back(v);
        }
    }
    return out;
}

composite_breaker::composite_breaker(const hypergraph& board, int q, int t, int64_t enumeration_cap)
    : incremental_strategy(player::breaker), board_(&board), q_(q), t_(t) {
    if (q < 1) throw input_error("composite breaker: q must be at least 1");
    if (t < 1) throw input_error("composite breaker: t must be at least 1");
    const auto k_opt = board.uniformity();
    if (!k_opt) throw precondition_error("composite breaker: board must be uniform");
    const int k = *k_opt;
    s1_ = q / 4;
    s3_ = q / 2;

    std::string notes;
    if (static_cast<double>(t) <= std::pow(2.0 * k, k)) {
        theory_ok_ = false;
        notes += "t <= (2k)^k; ";
    }
    if (q % 4 != 0) notes += "q not divisible by 4, shares rounded down; ";

    // Cluster-share bias from the flower-prevention bound, log domain.
    double qbar_log = -std::numeric_limits<double>::infinity();
    const double v = static_cast<double>(board.vertex_count());
    for (int ell = 2; ell <= k - 1; ++ell) {
        const int64_t delta = board.max_ell_degree(ell);
        if (delta == 0) continue;
        const double inner = std::log(static_cast<double>(delta)) +
                             (k / std::pow(static_cast<double>(t), 1.0 / k)) *
                                 (static_cast<double>(t) * k * std::log(static_cast<double>(t) * k) +
                                  t * std::log(static_cast<double>(k)) + 2.0 * std::log(v));
        qbar_log = std::max(qbar_log, inner / (k - ell));
    }
    int qbar = 1;
    if (std::isfinite(qbar_log)) {
        if (s1_ < 1 || qbar_log >= std::log(static_cast<double>(s1_))) {
            qbar = std::max(s1_, 0);
            theory_ok_ = false;
            notes += "cluster share clamped to q/4; ";
        } else {
            qbar = static_cast<int>(std::floor(std::exp(qbar_log))) + 1;
        }
    }
    s2_ = std::min(qbar, s1_);
    theory_note_ = notes;

    fan_board_ = simple_fan_hypergraph(board, t, enumeration_cap);
    cluster_board_ = cluster_hypergraph(board, t, enumeration_cap);
}

std::string composite_breaker::id() const { return "composite-breaker:t=" + std::to_string(t_); }

void composite_breaker::setup(const game_state& state) {
    (void)state;
    board_->ensure_incidence();
    maker_cnt_.assign(board_->edge_count(), 0);
    dead_.assign(board_->edge_count(), 0);
    last_maker_ = -1;
    overloads_ = 0;
    fan_w_.emplace(fan_board_, std::max(s1_, 1));
    cluster_w_.emplace(cluster_board_, std::max(s2_, 1));
}

void composite_breaker::apply(player who, int vertex) {
    if (who == player::maker) {
        for (int64_t e : board_->incident_edges(vertex)) ++maker_cnt_[e];
        last_maker_ = vertex;
    } else {
        for (int64_t e : board_->incident_edges(vertex)) dead_[e] = 1;
    }
    fan_w_->on_move(who, vertex);
    cluster_w_->on_move(who, vertex);
}

std::vector<int> composite_breaker::do_pick(const game_state& state, int count, rng_t& rng) {
    (void)rng;
    std::vector<int> out;
    std::vector<char> taken(state.owner.size(), 0);
    int remaining = count;
    const auto take = [&](int v) {
        taken[v] = 1;
        apply(player::breaker, v);
        out.push_back(v);
        --remaining;
    };

    // SB3: open elements of the new dangerous almost complete solutions; they
    // all contain Maker's last vertex.
    if (last_maker_ >= 0 && remaining > 0) {
        std::vector<int> opens;
        for (int64_t e : board_->incident_edges(last_maker_)) {
            if (dead_[e]) continue;
            if (maker_cnt_[e] != board_->edge_size(e) - 1) continue;
            for (uint32_t u : board_->edge(e)) {
                if (state.owner[u] == 0) {
                    opens.push_back(static_cast<int>(u));
                    break;
                }
            }
        }
        std::sort(opens.begin(), opens.end());
        opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
        int budget = std::min(s3_, remaining);
        if (static_cast<int>(opens.size()) > budget) ++overloads_;
        for (int h : opens) {
            if (budget == 0) break;
            take(h);
            --budget;
        }
    }
    // SB1: ES greedy on the simple-fan board.
    for (int i = 0; i < s1_ && remaining > 0; ++i) {
        const int v = fan_w_->best_free(state, taken);
        if (v < 0) break;
        take(v);
    }
    // SB2: ES greedy on the cluster board.
    for (int i = 0; i < s2_ && remaining > 0; ++i) {
        const int v = cluster_w_->best_free(state, taken);
        if (v < 0) break;
        take(v);
    }
    return out;  // unused moves are padded by the engine, lowest index first
}

void exact_strategy::reset(const game_state& state) {
    solver_ = std::make_shared<exact_solver>(*state.board, state.bias, vertex_cap_);
}

std::vector<int> exact_strategy::pick(const game_state& state, int count, rng_t& rng) {
    (void)rng;
    if (!solver_) solver_ = std::make_shared<exact_solver>(*state.board, state.bias, vertex_cap_);
    const int n = state.board->vertex_count();
    uint32_t mm = 0, bm = 0;
    for (int v = 0; v < n; ++v) {
        if (state.owner[v] == 1) mm |= (1u << v);
        if (state.owner[v] == 2) bm |= (1u << v);
    }
    const int q = state.bias;

    if (role_ == player::maker) {
        // Immediate completion first.
        for (int64_t e = 0; e < state.board->edge_count(); ++e) {
            uint32_t missing = 0;
            int cnt = 0;
            bool dead = false;
            for (uint32_t u : state.board->edge(e)) {
                if (state.owner[u] == 2) {
                    dead = true;
                    break;
                }
                if (state.owner[u] == 0) {
                    missing = u;
                    ++cnt;
                }
            }
            if (!dead && cnt == 1) return {static_cast<int>(missing)};
        }
        int fallback = -1;
        for (int v = 0; v < n; ++v) {
            if (state.owner[v] != 0) continue;
            if (fallback < 0) fallback = v;
            const int free_after = state.free_count - 1;
            if (free_after == 0) continue;  // no completion and board full: lost anyway
            const game_winner w = solver_->solve_position(mm | (1u << v), bm, player::breaker,
                                                          std::min(q, free_after));
            if (w == game_winner::maker) return {v};
        }
        return {fallback};
    }

    std::vector<int> out;
    uint32_t bm2 = bm;
    int left = count;
    while (left > 0) {
        int chosen = -1, fallback = -1;
        for (int v = 0; v < n; ++v) {
            if (state.owner[v] != 0 || (bm2 & (1u << v))) continue;
            if (fallback < 0) fallback = v;
            const player next = left - 1 > 0 ? player::breaker : player::maker;
            if (solver_->solve_position(mm, bm2 | (1u << v), next, left - 1) ==
                game_winner::breaker) {
                chosen = v;
                break;
            }
        }
        if (chosen < 0) chosen = fallback;
        if (chosen < 0) break;
        bm2 |= (1u << chosen);
        out.push_back(chosen);
        --left;
    }
    return out;
}

std::unique_ptr<strategy> make_strategy(const std::string& name, const hypergraph& board, int q,
                                        player role, const strategy_context& ctx) {
    if (name == "random-maker") {
        if (role != player::maker) throw input_error("random-maker is a Maker strategy");
        return std::make_unique<random_maker>();
    }
    if (name == "greedy-maker") {
        if (role != player::maker) throw input_error("greedy-maker is a Maker strategy");
        return std::make_unique<greedy_maker>();
    }
    if (name == "es-breaker") {
        if (role != player::breaker) throw input_error("es-breaker is a Breaker strategy");
        return std::make_unique<es_breaker>();
    }
    if (name == "threeap-breaker") {
        if (role != player::breaker) throw input_error("threeap-breaker is a Breaker strategy");
        return std::make_unique<threeap_blocker>();
    }
    if (name == "pairing-breaker") {
        if (role != player::breaker) throw input_error("pairing-breaker is a Breaker strategy");
        if (!ctx.system) throw precondition_error("pairing-breaker requires a linear system");
        return std::make_unique<pairing_breaker>(make_pairing_certificate(*ctx.system));
    }
    if (name.rfind("composite-breaker", 0) == 0) {
        if (role != player::breaker) throw input_error("composite-breaker is a Breaker strategy");
        int t = 2;
        const auto pos = name.find(":t=");
        if (pos != std::string::npos) {
            try {
                t = std::stoi(name.substr(pos + 3));
            } catch (const std::exception&) {
                throw input_error("composite-breaker: bad t parameter in '" + name + "'");
            }
        } else if (name != "composite-breaker") {
            throw input_error("unknown strategy '" + name + "'");
        }
        return std::make_unique<composite_breaker>(board, q, t);
    }
    if (name == "exact") return std::make_unique<exact_strategy>(role);
    throw input_error("unknown strategy '" + name + "'");
}

}  // namespace mbg
