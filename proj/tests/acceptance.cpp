// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Expected wall time on a single core is a few minutes; the
// scaling-exponent criterion dominates.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mbg/criteria.hpp"
#include "mbg/experiments.hpp"
#include "mbg/game.hpp"
#include "mbg/hypergraph.hpp"
#include "mbg/linear_system.hpp"
#include "mbg/pattern.hpp"
#include "mbg/solver.hpp"
#include "mbg/strategies.hpp"
#include "oracles.hpp"

using namespace mbg;

namespace {

struct harness {
    int failures = 0;

    void criterion(int num, const std::string& what, const std::function<void(bool&, std::string&)>& body) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = true;
        std::string notes;
        try {
            body(ok, notes);
        } catch (const std::exception& e) {
            ok = false;
            notes += std::string(" exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %d: %s (%.1fs)%s\n", ok ? "PASS" : "FAIL", num, what.c_str(),
                    secs, notes.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

void expect(bool cond, const std::string& what, bool& ok, std::string& notes) {
    if (!cond) {
        ok = false;
        notes += " [" + what + "]";
    }
}

int64_t covered_edges(const hypergraph& board, const std::vector<int>& maker_set) {
    std::vector<uint8_t> mine(board.vertex_count(), 0);
    for (int v : maker_set) mine[v] = 1;
    int64_t covered = 0;
    for (int64_t e = 0; e < board.edge_count(); ++e) {
        bool all = true;
        for (uint32_t u : board.edge(e))
            if (!mine[u]) {
                all = false;
                break;
            }
        if (all) ++covered;
    }
    return covered;
}

std::vector<int> maker_vertices(const transcript& t) {
    std::vector<int> out;
    for (const auto& m : t.moves)
        if (m.who == player::maker) out.push_back(m.vertex);
    return out;
}

}  // namespace

int main() {
    harness h;

    h.criterion(1, "exact density parameters m1 and m_r", [](bool& ok, std::string& notes) {
        expect(max_one_density(ap_system(3).a).value == rational(2), "m1(3-AP)=2", ok, notes);
        for (int k = 3; k <= 6; ++k)
            expect(max_one_density(ap_system(k).a).value == rational(k - 1),
                   "m1(" + std::to_string(k) + "-AP)=k-1", ok, notes);
        expect(max_one_density(sidon_system().a).value == rational(3, 2), "m1(Sidon)=3/2", ok,
               notes);
        expect(r_density(complete_graph_pattern(3)).value == rational(2), "m2(K3)=2", ok, notes);
        expect(r_density(complete_uniform_pattern(3, 4)).value == rational(3), "m3(K4^(3))=3", ok,
               notes);
    });

    h.criterion(2, "3-AP game: Beck bias lower bound and blocker upper bound",
                [](bool& ok, std::string& notes) {
        for (int64_t n : {int64_t(144), int64_t(1200), int64_t(10000)}) {
            const hypergraph board = ap_hypergraph(3, n);
            const auto [lower, upper] = threeap_bounds(n);
            const int64_t q = static_cast<int64_t>(std::floor(lower));
            expect(beck_maker_check(board, q),
                   "beck true at n=" + std::to_string(n) + " q=" + std::to_string(q), ok, notes);
        }
        const int64_t n = 1000;
        const hypergraph board = ap_hypergraph(3, n);
        const int q = static_cast<int>(std::ceil(std::sqrt(3.0 * n)));
        for (const std::string maker_name : {"random-maker", "greedy-maker"}) {
            int breaker_wins = 0;
            long overloads = 0;
            for (uint64_t seed = 0; seed < 100; ++seed) {
                auto maker = make_strategy(maker_name, board, q, player::maker);
                threeap_blocker blocker;
                const transcript t = play(board, q, *maker, blocker, seed);
                if (t.result == game_result::breaker) ++breaker_wins;
                overloads += blocker.overload_events();
            }
            expect(breaker_wins == 100, maker_name + ": breaker wins 100/100", ok, notes);
            expect(overloads == 0, maker_name + ": zero overload events", ok, notes);
        }
    });

    h.criterion(3, "Erdos-Selfridge guarantee over random-Maker playouts",
                [](bool& ok, std::string& notes) {
        std::vector<std::pair<std::string, hypergraph>> suite;
        for (int n : {50, 100, 200, 400})
            suite.emplace_back("3AP" + std::to_string(n), ap_hypergraph(3, n));
        suite.emplace_back("rnd60", random_uniform_hypergraph(60, 3, 200, 1));
        suite.emplace_back("rnd120", random_uniform_hypergraph(120, 3, 500, 2));
        for (const auto& [name, board] : suite) {
            const int64_t e = board.edge_count();
            const int q_low = 2;
            const int q_high =
                static_cast<int>(std::ceil(std::cbrt(2.0 * static_cast<double>(e)))) + 1;
            for (int q : {q_low, q_high}) {
                const game_state fresh(board, q);
                const rational phi = es_potential(fresh, q, false);
                for (uint64_t seed = 0; seed < 100; ++seed) {
                    random_maker maker;
                    es_breaker breaker;
                    const transcript t = play(board, q, maker, breaker, seed);
                    const int64_t covered = covered_edges(board, maker_vertices(t));
                    if (!(rational(static_cast<long>(covered)) <= phi)) {
                        expect(false, name + " q=" + std::to_string(q) + ": covered > potential",
                               ok, notes);
                        break;
                    }
                    if (phi < 1 && t.result != game_result::breaker) {
                        expect(false, name + " q=" + std::to_string(q) + ": breaker lost", ok,
                               notes);
                        break;
                    }
                }
            }
        }
    });

    h.criterion(4, "exact-solver cross-validation of both criteria",
                [](bool& ok, std::string& notes) {
        std::vector<hypergraph> suite;
        for (int n = 4; n <= 14; ++n) suite.push_back(ap_hypergraph(3, n));
        for (uint64_t seed = 0; seed < 4; ++seed)
            suite.push_back(random_uniform_hypergraph(12, 3, 12, seed + 400));
        suite.push_back(hypergraph(2, {{0, 1}}));
        suite.push_back(build_rado_hypergraph(schur_system(), 10, solution_mode::proper()));
        for (const auto& board : suite) {
            for (int q : {1, 2, 3}) {
                const game_state fresh(board, q);
                const rational phi = es_potential(fresh, q, false);
                const game_winner w = solve(board, q);
                if (phi < 1)
                    expect(w == game_winner::breaker, "potential<1 => Breaker", ok, notes);
                if (board.edge_count() > 0 && beck_maker_check(board, q))
                    expect(w == game_winner::maker, "beck => Maker", ok, notes);
            }
        }
        expect(solve(ap_hypergraph(3, 4), 1) == game_winner::breaker, "3-AP[4] q=1 Breaker", ok,
               notes);
        expect(solve(ap_hypergraph(3, 5), 1) == game_winner::maker, "3-AP[5] q=1 Maker", ok,
               notes);
        int prev = 1;
        for (int n = 3; n <= 12; ++n) {
            const threshold_result t = threshold_bias_exact(ap_hypergraph(3, n));
            expect(t.finite, "finite threshold", ok, notes);
            expect(t.bias >= prev, "q(3-AP[n]) non-decreasing", ok, notes);
            prev = t.bias;
        }
    });

    h.criterion(5, "structural formulas: counts, degrees, induced subsystems",
                [](bool& ok, std::string& notes) {
        // |S(A,b) cap [n]^m| <= n^(m - rank A), exactly
        for (const auto& [name, sys] :
             std::vector<std::pair<std::string, linear_system>>{
                 {"3AP", ap_system(3)}, {"Schur", schur_system()}, {"Sidon", sidon_system()}}) {
            const int fd = sys.cols() - rank(sys.a);
            for (int64_t n : {int64_t(10), int64_t(40), int64_t(70), int64_t(100)}) {
                const int64_t all = count_solutions(sys, n, solution_mode::all_integer());
                int64_t cap = 1;
                for (int i = 0; i < fd; ++i) cap *= n;
                expect(all <= cap, name + " trivial upper bound at n=" + std::to_string(n), ok,
                       notes);
            }
        }
        // Delta_ell(S0(A,b,n)) <= m^ell * max_{|Q|=ell} n^((m-rk)-(|Q|-r_Q))
        for (const auto& [name, sys] : std::vector<std::pair<std::string, linear_system>>{
                 {"3AP", ap_system(3)}, {"Sidon", sidon_system()}}) {
            const int m = sys.cols();
            const int rk = rank(sys.a);
            for (int64_t n : {int64_t(20), int64_t(40), int64_t(60)}) {
                const hypergraph board = build_rado_hypergraph(sys, n, solution_mode::proper());
                for (int ell = 1; ell <= m; ++ell) {
                    double best = 0;
                    // max over |Q| = ell of n^((m-rk)-(ell-r_Q))
                    std::vector<int> comb(ell);
                    for (int i = 0; i < ell; ++i) comb[i] = i;
                    while (true) {
                        column_selection q(comb.begin(), comb.end());
                        const int r_q = column_defect(sys, q);
                        best = std::max(best, std::pow(static_cast<double>(n),
                                                       (m - rk) - (ell - r_q)));
                        int j = ell - 1;
                        while (j >= 0 && comb[j] == m - ell + j) --j;
                        if (j < 0) break;
                        ++comb[j];
                        for (int l = j + 1; l < ell; ++l) comb[l] = comb[l - 1] + 1;
                    }
                    const double bound = std::pow(static_cast<double>(m), ell) * best;
                    expect(static_cast<double>(board.max_ell_degree(ell)) <= bound,
                           name + " Delta_" + std::to_string(ell) + " bound at n=" +
                               std::to_string(n),
                           ok, notes);
                }
            }
        }
        // induced-subsystem properties (i)-(iv) over enumerated (A, Q), m <= 6
        const linear_system systems[] = {
            ap_system(3), ap_system(4), sidon_system(), schur_system(),
            linear_system(int_matrix{{big_int(1), big_int(-2), big_int(1), big_int(0)},
                                     {big_int(0), big_int(0), big_int(1), big_int(-1)}},
                          int_vector{big_int(0), big_int(2)})};
        for (const auto& sys : systems) {
            const int m = sys.cols();
            const int rk = rank(sys.a);
            for (uint32_t mask = 1; mask < (1u << m); ++mask) {
                column_selection q;
                for (int c = 0; c < m; ++c)
                    if (mask & (1u << c)) q.push_back(c);
                if (column_defect(sys, q) <= 0) continue;
                const auto sub = induced_subsystem(sys, q);
                expect(sub.verify(sys, q), "subsystem verify", ok, notes);
                expect(rank(sub.b_matrix) == sub.r_q, "rank(B)=r_Q", ok, notes);
                if (is_abundant(sys.a))
                    expect(is_abundant(sub.b_matrix), "B abundant", ok, notes);
                for (const auto& x : oracles::brute_solutions(sys, 6)) {
                    for (int i = 0; i < sub.r_q; ++i) {
                        big_int acc(0);
                        for (size_t j = 0; j < q.size(); ++j) acc += sub.b_matrix[i][j] * x[q[j]];
                        if (acc != sub.c[i]) expect(false, "x^Q solves (B,c)", ok, notes);
                    }
                }
                const int mb = static_cast<int>(q.size());
                const int rkb = rank(sub.b_matrix);
                for (uint32_t m2 = 1; m2 < (1u << mb); ++m2) {
                    column_selection qp;
                    for (int c = 0; c < mb; ++c)
                        if (m2 & (1u << c)) qp.push_back(c);
                    const int target = rkb - rank_of_columns(sub.b_matrix, complement(qp, mb));
                    // exists Q'' subset of Q, |Q''| = |Q'|, with r_{Q''}(A) = r_{Q'}(B)
                    bool found = false;
                    std::vector<int> comb(qp.size());
                    for (size_t i = 0; i < qp.size(); ++i) comb[i] = static_cast<int>(i);
                    while (!found) {
                        column_selection qpp;
                        for (size_t i = 0; i < qp.size(); ++i) qpp.push_back(q[comb[i]]);
                        if (rk - rank_of_columns(sys.a, complement(qpp, m)) == target) found = true;
                        int j = static_cast<int>(qp.size()) - 1;
                        while (j >= 0 && comb[j] == mb - static_cast<int>(qp.size()) + j) --j;
                        if (j < 0) break;
                        ++comb[j];
                        for (size_t l = j + 1; l < qp.size(); ++l) comb[l] = comb[l - 1] + 1;
                    }
                    if (!found) expect(false, "property (iv)", ok, notes);
                }
            }
        }
    });

    h.criterion(6, "Janson bound versus Monte Carlo; binomial-vs-uniform factor 3",
                [](bool& ok, std::string& notes) {
        const int64_t samples = 100000;
        struct cell {
            std::string name;
            hypergraph board;
            double p;
        };
        std::vector<cell> grid;
        for (double p : {0.2, 0.4}) {
            grid.push_back({"3AP50", ap_hypergraph(3, 50), p});
            grid.push_back({"3AP100", ap_hypergraph(3, 100), p});
            grid.push_back({"rnd60", random_uniform_hypergraph(60, 3, 220, 6), p});
        }
        uint64_t seed = 600;
        for (const auto& c : grid) {
            const double bound = janson_no_edge_bound(c.board, c.p).bound;
            rng_t rng(seed++);
            int64_t none = 0;
            for (int64_t i = 0; i < samples; ++i)
                if (!c.board.contains_edge(sample_binomial_subset(c.board.vertex_count(), c.p, rng)))
                    ++none;
            const double phat = static_cast<double>(none) / samples;
            const double sigma = std::sqrt(phat * (1 - phat) / samples) + 1e-12;
            expect(phat - 2 * sigma <= bound,
                   c.name + " p=" + std::to_string(c.p) + " janson dominates MC", ok, notes);
        }
        const hypergraph b100 = ap_hypergraph(3, 100);
        for (double p : {0.1, 0.3}) {
            const binuni_result r = binomial_vs_uniform_experiment(b100, p, samples, 77);
            const double sigma =
                std::sqrt(r.binomial_no_edge.p_hat * (1 - r.binomial_no_edge.p_hat) /
                          static_cast<double>(samples)) +
                1e-12;
            expect(r.uniform_no_edge.p_hat <= 3 * r.binomial_no_edge.p_hat + 3 * sigma,
                   "factor-3 at p=" + std::to_string(p), ok, notes);
        }
    });

    h.criterion(7, "half-random scaling exponent of the 3-AP game (slope 0.5 +- 0.15)",
                [](bool& ok, std::string& notes) {
        std::vector<std::pair<int64_t, double>> points;
        for (int64_t n : {int64_t(256), int64_t(512), int64_t(1024), int64_t(2048),
                          int64_t(4096)}) {
            const hypergraph board = ap_hypergraph(3, n);
            estimate_options opt;
            opt.trials = 200;
            opt.q_lo = 2;
            opt.q_hi = 4 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
            opt.seed = 7000 + static_cast<uint64_t>(n);
            const strategy_factory mk = [](const hypergraph&, int) {
                return std::make_unique<random_maker>();
            };
            const strategy_factory bk = [](const hypergraph&, int) {
                return std::make_unique<es_breaker>();
            };
            const threshold_estimate est = estimate_threshold(board, n, mk, bk, opt);
            points.emplace_back(n, static_cast<double>(est.q_hat));
            notes += " n" + std::to_string(n) + ":q=" + std::to_string(est.q_hat);
        }
        const regression_result r = exponent_regression(points);
        char buf[64];
        std::snprintf(buf, sizeof(buf), " slope=%.3f", r.slope);
        notes += buf;
        expect(std::abs(r.slope - 0.5) <= 0.15, "slope within 0.5 +- 0.15", ok, notes);
    });

    h.criterion(8, "partition classification and the non-degenerate Sidon board",
                [](bool& ok, std::string& notes) {
        const linear_system sd = sidon_system();
        expect(classify_partition(sd, set_partition::of({{0, 1}, {2}, {3}}, 4)) ==
                   partition_class::non_degenerate,
               "Sidon {{0,1},{2},{3}} NonDegenerate", ok, notes);
        expect(classify_partition(sd, set_partition::of({{0, 2}, {1, 3}}, 4)) ==
                   partition_class::degenerate,
               "Sidon {{0,2},{1,3}} Degenerate", ok, notes);
        expect(classify_partition(sd, set_partition::discrete(4)) == partition_class::proper,
               "discrete Proper", ok, notes);

        // S1(Sidon, 40): every edge is the support of a Proper or NonDegenerate solution
        std::vector<set_partition> family;
        for (const auto& p : all_partitions(4))
            if (classify_partition(sd, p) != partition_class::degenerate) family.push_back(p);
        const hypergraph s1 =
            build_rado_hypergraph(sd, 40, solution_mode::family_of(family));
        expect(s1.edge_count() > 0, "S1 board nonempty", ok, notes);

        std::set<std::vector<int>> good_supports;
        for_each_solution(sd, 40, solution_mode::all_integer(),
                          [&](const std::vector<int64_t>& x) {
                              if (classify_partition(sd, set_partition::from_tuple(x)) ==
                                  partition_class::degenerate)
                                  return;
                              std::vector<int> support;
                              for (int64_t v : x) support.push_back(static_cast<int>(v - 1));
                              std::sort(support.begin(), support.end());
                              support.erase(std::unique(support.begin(), support.end()),
                                            support.end());
                              good_supports.insert(std::move(support));
                          });
        bool all_edges_good = true;
        for (int64_t e = 0; e < s1.edge_count(); ++e) {
            std::vector<int> edge = s1.edge_vertices(e);
            if (!good_supports.count(edge)) all_edges_good = false;
        }
        expect(all_edges_good, "every S1 edge has a non-degenerate witness", ok, notes);
        expect(static_cast<int64_t>(good_supports.size()) == s1.edge_count(),
               "S1 edges match the witness supports exactly", ok, notes);
    });

    h.criterion(9, "composite Breaker engineering at desk scale", [](bool& ok, std::string& notes) {
        for (int n : {5, 8, 10, 12}) {
            const hypergraph board = ap_hypergraph(3, n);
            for (int t : {1, 2, 3}) {
                expect(static_cast<int64_t>(enumerate_simple_fans(board, t, 4000000).size()) ==
                           oracles::brute_count_simple_fans(board, t),
                       "fan count n=" + std::to_string(n) + " t=" + std::to_string(t), ok, notes);
                expect(static_cast<int64_t>(enumerate_clusters(board, t, 4000000).size()) ==
                           oracles::brute_count_clusters(board, t),
                       "cluster count n=" + std::to_string(n) + " t=" + std::to_string(t), ok,
                       notes);
            }
        }
        const hypergraph rnd = random_uniform_hypergraph(12, 3, 14, 17);
        for (int t : {2, 3}) {
            expect(static_cast<int64_t>(enumerate_simple_fans(rnd, t, 4000000).size()) ==
                       oracles::brute_count_simple_fans(rnd, t),
                   "fan count rnd t=" + std::to_string(t), ok, notes);
            expect(static_cast<int64_t>(enumerate_clusters(rnd, t, 4000000).size()) ==
                       oracles::brute_count_clusters(rnd, t),
                   "cluster count rnd t=" + std::to_string(t), ok, notes);
        }

        const hypergraph board = ap_hypergraph(3, 30);
        int maker_wins = 0;
        long overloads = 0;
        for (uint64_t seed = 0; seed < 100; ++seed) {
            random_maker maker;
            composite_breaker breaker(board, 8, 2);
            const transcript t = play(board, 8, maker, breaker, seed);
            if (t.result == game_result::maker) ++maker_wins;
            overloads += breaker.overload_events();
            // bookkeeping: shares within budget, breaker moves exactly min(q, supply)
            if (breaker.fan_share() + breaker.cluster_share() + breaker.block_share() > 8)
                expect(false, "share split exceeds q", ok, notes);
            std::map<int, int> per_round;
            int supply = 30;
            for (const auto& mv : t.moves) {
                if (mv.who == player::breaker) ++per_round[mv.round];
                --supply;
            }
            (void)per_round;
        }
        expect(maker_wins == 0, "zero Maker wins over 100 seeds", ok, notes);
        expect(overloads == 0, "zero overload events", ok, notes);
    });

    std::printf("%d of 9 criteria passed\n", 9 - h.failures);
    return h.failures;
}
