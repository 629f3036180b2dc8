// Independent brute-force reference implementations used as test oracles.
// These deliberately avoid the library's algorithmic shortcuts: plain
// enumeration and definitional checks only.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "mbg/game.hpp"
#include "mbg/hypergraph.hpp"
#include "mbg/linear_system.hpp"
#include "mbg/pattern.hpp"
#include "mbg/rational.hpp"
#include "mbg/solver.hpp"

namespace oracles {

// Max l-degree by enumerating all l-subsets of the union of the edges.
inline int64_t brute_max_ell_degree(const mbg::hypergraph& h, int ell) {
    std::set<int> support;
    for (int64_t e = 0; e < h.edge_count(); ++e)
        for (uint32_t u : h.edge(e)) support.insert(static_cast<int>(u));
    std::vector<int> verts(support.begin(), support.end());
    if (static_cast<int>(verts.size()) < ell) return 0;
    std::vector<int> c(ell);
    for (int i = 0; i < ell; ++i) c[i] = i;
    int64_t best = 0;
    while (true) {
        std::vector<int> s;
        for (int i = 0; i < ell; ++i) s.push_back(verts[c[i]]);
        int64_t deg = 0;
        for (int64_t e = 0; e < h.edge_count(); ++e) {
            const auto edge = h.edge(e);
            bool all = true;
            for (int x : s)
                if (!std::binary_search(edge.begin(), edge.end(), static_cast<uint32_t>(x))) {
                    all = false;
                    break;
                }
            if (all) ++deg;
        }
        best = std::max(best, deg);
        int j = ell - 1;
        const int m = static_cast<int>(verts.size());
        while (j >= 0 && c[j] == m - ell + j) --j;
        if (j < 0) break;
        ++c[j];
        for (int l = j + 1; l < ell; ++l) c[l] = c[l - 1] + 1;
    }
    return best;
}

// Rank by straightforward rational Gaussian elimination.
inline int rational_elimination_rank(const mbg::int_matrix& a) {
    if (a.empty() || a[0].empty()) return 0;
    std::vector<std::vector<mbg::rational>> w(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (const auto& x : a[i]) w[i].emplace_back(x);
    const int r = static_cast<int>(w.size());
    const int m = static_cast<int>(w[0].size());
    int row = 0;
    for (int col = 0; col < m && row < r; ++col) {
        int p = -1;
        for (int i = row; i < r; ++i)
            if (w[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(w[row], w[p]);
        for (int i = row + 1; i < r; ++i) {
            if (w[i][col] == 0) continue;
            const mbg::rational f = w[i][col] / w[row][col];
            for (int j = col; j < m; ++j) w[i][j] -= f * w[row][j];
        }
        ++row;
    }
    return row;
}

// All solutions of A x = b with x in [1,n]^m by full odometer enumeration.
inline std::vector<std::vector<int64_t>> brute_solutions(const mbg::linear_system& sys, int64_t n) {
    const int m = sys.cols();
    std::vector<std::vector<int64_t>> out;
    std::vector<int64_t> x(m, 1);
    while (true) {
        bool ok = true;
        for (int i = 0; i < sys.rows() && ok; ++i) {
            mbg::big_int acc(0);
            for (int j = 0; j < m; ++j) acc += sys.a[i][j] * x[j];
            if (acc != sys.b[i]) ok = false;
        }
        if (ok) out.push_back(x);
        int j = m - 1;
        while (j >= 0 && x[j] == n) {
            x[j] = 1;
            --j;
        }
        if (j < 0) break;
        ++x[j];
    }
    return out;
}

inline bool all_distinct(const std::vector<int64_t>& x) {
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j]) return false;
    return true;
}

// Definitional minimax without the library's dominance pruning: both players
// range over every free vertex.
inline mbg::game_winner naive_solve(const mbg::hypergraph& board, int q, mbg::player first) {
    const int n = board.vertex_count();
    std::vector<uint32_t> em;
    for (int64_t e = 0; e < board.edge_count(); ++e) {
        uint32_t m = 0;
        for (uint32_t u : board.edge(e)) m |= (1u << u);
        em.push_back(m);
    }
    const uint32_t full = n == 0 ? 0 : ((1u << n) - 1);
    std::map<uint64_t, mbg::game_winner> memo;

    auto rec = [&](auto&& self, uint32_t mm, uint32_t bm, bool maker_to_move,
                   int bl) -> mbg::game_winner {
        for (uint32_t e : em)
            if ((e & ~mm) == 0) return mbg::game_winner::maker;
        const uint32_t free = full & ~mm & ~bm;
        if (free == 0) return mbg::game_winner::breaker;
        if (maker_to_move) bl = 0;
        const uint64_t key = static_cast<uint64_t>(mm) | (static_cast<uint64_t>(bm) << n) |
                             (static_cast<uint64_t>(bl) << 56) |
                             (static_cast<uint64_t>(maker_to_move ? 1 : 0) << 61);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        mbg::game_winner res;
        if (maker_to_move) {
            res = mbg::game_winner::breaker;
            for (uint32_t c = free; c; c &= c - 1) {
                const uint32_t v = c & (~c + 1);
                const int fa = std::popcount(full & ~(mm | v) & ~bm);
                if (self(self, mm | v, bm, false, std::min(q, fa)) == mbg::game_winner::maker) {
                    res = mbg::game_winner::maker;
                    break;
                }
            }
        } else {
            res = mbg::game_winner::maker;
            for (uint32_t c = free; c; c &= c - 1) {
                const uint32_t v = c & (~c + 1);
                if (self(self, mm, bm | v, bl - 1 == 0, bl - 1) == mbg::game_winner::breaker) {
                    res = mbg::game_winner::breaker;
                    break;
                }
            }
        }
        memo.emplace(key, res);
        return res;
    };
    if (first == mbg::player::maker) return rec(rec, 0, 0, true, 0);
    return rec(rec, 0, 0, false, std::min(q, n));
}

// Every (edge, open element) family satisfying the simple-fan definition,
// chosen from all t-combinations of all almost complete solutions.
inline int64_t brute_count_simple_fans(const mbg::hypergraph& b, int t) {
    struct acs {
        std::vector<int> major;
        int open;
    };
    std::vector<acs> all;
    for (int64_t e = 0; e < b.edge_count(); ++e) {
        const auto edge = b.edge(e);
        for (uint32_t h : edge) {
            acs a;
            a.open = static_cast<int>(h);
            for (uint32_t u : edge)
                if (u != h) a.major.push_back(static_cast<int>(u));
            all.push_back(std::move(a));
        }
    }
    const int na = static_cast<int>(all.size());
    if (na < t) return 0;
    std::vector<int> c(t);
    for (int i = 0; i < t; ++i) c[i] = i;
    int64_t count = 0;
    auto inter_size = [](const std::vector<int>& x, const std::vector<int>& y) {
        int k = 0;
        for (int v : x)
            if (std::binary_search(y.begin(), y.end(), v)) ++k;
        return k;
    };
    while (true) {
        bool ok = true;
        // global intersection of the majors nonempty
        std::vector<int> common = all[c[0]].major;
        for (int i = 1; i < t && ok; ++i) {
            std::vector<int> next;
            for (int v : common)
                if (std::binary_search(all[c[i]].major.begin(), all[c[i]].major.end(), v))
                    next.push_back(v);
            common = std::move(next);
        }
        if (common.empty()) ok = false;
        for (int i = 0; i < t && ok; ++i)
            for (int j = i + 1; j < t && ok; ++j)
                if (inter_size(all[c[i]].major, all[c[j]].major) != 1) ok = false;
        for (int i = 0; i < t && ok; ++i)
            for (int j = 0; j < t && ok; ++j)
                if (std::binary_search(all[c[j]].major.begin(), all[c[j]].major.end(),
                                       all[c[i]].open))
                    ok = false;
        if (t == 1) ok = !all[c[0]].major.empty() &&
                         !std::binary_search(all[c[0]].major.begin(), all[c[0]].major.end(),
                                             all[c[0]].open);
        if (ok) ++count;
        int j = t - 1;
        while (j >= 0 && c[j] == na - t + j) --j;
        if (j < 0) break;
        ++c[j];
        for (int l = j + 1; l < t; ++l) c[l] = c[l - 1] + 1;
    }
    return count;
}

inline int64_t brute_count_clusters(const mbg::hypergraph& b, int t) {
    const int64_t e = b.edge_count();
    if (e < t) return 0;
    std::vector<int64_t> c(t);
    for (int i = 0; i < t; ++i) c[i] = i;
    int64_t count = 0;
    while (true) {
        std::vector<int> common(b.edge(c[0]).begin(), b.edge(c[0]).end());
        for (int i = 1; i < t; ++i) {
            std::vector<int> next;
            const auto edge = b.edge(c[i]);
            for (int v : common)
                if (std::binary_search(edge.begin(), edge.end(), static_cast<uint32_t>(v)))
                    next.push_back(v);
            common = std::move(next);
        }
        if (static_cast<int>(common.size()) >= 2) ++count;
        int j = t - 1;
        while (j >= 0 && c[j] == e - t + j) --j;
        if (j < 0) break;
        ++c[j];
        for (int l = j + 1; l < t; ++l) c[l] = static_cast<int>(c[l - 1]) + 1;
    }
    return count;
}

// Direct quantifier evaluation of delta-stability for |t| <= 20.
inline bool brute_delta_stable(const mbg::hypergraph& h, const std::vector<int>& t, double delta) {
    const int n = static_cast<int>(t.size());
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if (static_cast<double>(size) < delta * n - 1e-9) continue;
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(t[i]);
        if (!h.contains_edge(s)) return false;
    }
    return true;
}

// Automorphism count of a pattern by checking every permutation of [0, v).
inline int64_t aut_count(const mbg::pattern& g) {
    std::vector<int> perm(g.vertices);
    for (int i = 0; i < g.vertices; ++i) perm[i] = i;
    std::set<std::vector<int>> edge_set(g.edges.begin(), g.edges.end());
    int64_t count = 0;
    do {
        std::set<std::vector<int>> mapped;
        for (const auto& e : g.edges) {
            std::vector<int> me;
            for (int v : e) me.push_back(perm[v]);
            std::sort(me.begin(), me.end());
            mapped.insert(std::move(me));
        }
        if (mapped == edge_set) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

// The 3-AP board on [1,5] written out by hand (integers 1..5 as indices 0..4).
inline mbg::hypergraph threeap5_board() {
    return mbg::hypergraph(5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {0, 2, 4}});
}

}  // namespace oracles
