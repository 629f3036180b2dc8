#include "mbg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "json.hpp"

#include "mbg/errors.hpp"

namespace mbg {

wilson_interval wilson(int64_t successes, int64_t trials, double z) {
    wilson_interval out;
    if (trials <= 0) return out;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double margin = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    out.lo = std::max(0.0, (center - margin) / denom);
    out.hi = std::min(1.0, (center + margin) / denom);
    return out;
}

namespace {

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

}  // namespace

threshold_estimate estimate_threshold(const hypergraph& board, int64_t n_label,
                                      const strategy_factory& maker_factory,
                                      const strategy_factory& breaker_factory,
                                      const estimate_options& opt) {
    if (opt.trials < 1) throw input_error("estimate_threshold: trials must be positive");
    if (!(opt.target > 0.0 && opt.target < 1.0))
        throw input_error("estimate_threshold: target must be in (0,1)");
    threshold_estimate est;
    est.n = n_label;

    int lo = std::max(1, opt.q_lo);
    int hi = opt.q_hi > 0 ? opt.q_hi : std::max(lo + 1, board.vertex_count());
    if (hi < lo) throw input_error("estimate_threshold: empty bias bracket");
    const int hi_cap = std::max(hi * 4, board.vertex_count() * 2);

    std::map<int, curve_point> cache;
    const auto eval = [&](int q) -> const curve_point& {
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
        curve_point pt;
        pt.q = q;
        pt.trials = opt.trials;
        for (int trial = 0; trial < opt.trials; ++trial) {
            const uint64_t seed = derive_seed(derive_seed(opt.seed, static_cast<uint64_t>(q)),
                                              static_cast<uint64_t>(trial));
            auto maker = maker_factory(board, q);
            auto breaker = breaker_factory(board, q);
            const transcript tr = play(board, q, *maker, *breaker, seed);
            if (tr.result == game_result::maker) ++pt.maker_wins;
            est.trials_log.push_back({q, trial, seed, tr.result});
        }
        pt.win_rate = static_cast<double>(pt.maker_wins) / pt.trials;
        const wilson_interval w = wilson(pt.maker_wins, pt.trials);
        pt.ci_lo = w.lo;
        pt.ci_hi = w.hi;
        return cache.emplace(q, pt).first->second;
    };

    // Bracket the crossover, widening once per side on failure.
    for (int attempt = 0;; ++attempt) {
        const bool lo_ok = eval(lo).win_rate >= opt.target;
        if (lo_ok) break;
        if (!opt.widen_on_bracket_failure || lo == 1 || attempt >= 3) {
            est.below_bracket = true;
            break;
        }
        lo = std::max(1, lo / 2);
    }
    for (int attempt = 0;; ++attempt) {
        const bool hi_ok = eval(hi).win_rate < opt.target;
        if (hi_ok) break;
        if (!opt.widen_on_bracket_failure || hi >= hi_cap || attempt >= 3) {
            est.unbounded = true;
            break;
        }
        hi = std::min(hi_cap, hi * 2);
    }

    if (est.below_bracket) {
        est.q_hat = lo;
    } else if (est.unbounded) {
        est.q_hat = hi;
    } else {
        while (hi - lo > 1) {
            const int mid = lo + (hi - lo) / 2;
            if (eval(mid).win_rate < opt.target)
                hi = mid;
            else
                lo = mid;
        }
        est.q_hat = hi;
    }

    for (const auto& [q, pt] : cache) est.curve.push_back(pt);
    const auto hit = cache.find(est.q_hat);
    if (hit != cache.end())
        est.ci_half_width = (hit->second.ci_hi - hit->second.ci_lo) / 2.0;

    // Monotonicity check (within two standard errors); violations are
    // flagged, never smoothed.
    for (size_t i = 0; i + 1 < est.curve.size(); ++i) {
        const auto& a = est.curve[i];
        const auto& b = est.curve[i + 1];
        const double va = a.win_rate * (1 - a.win_rate) / a.trials;
        const double vb = b.win_rate * (1 - b.win_rate) / b.trials;
        if (b.win_rate > a.win_rate + 2.0 * std::sqrt(va + vb)) est.warning_nonmonotone = true;
    }
    std::sort(est.trials_log.begin(), est.trials_log.end(),
              [](const trial_record& a, const trial_record& b) {
                  return a.q != b.q ? a.q < b.q : a.trial < b.trial;
              });
    return est;
}

regression_result exponent_regression(const std::vector<std::pair<int64_t, double>>& points) {
    if (points.size() < 3) throw input_error("exponent_regression: need at least 3 points");
    const size_t n = points.size();
    double sx = 0, sy = 0;
    for (const auto& [pn, pq] : points) {
        if (pn < 1 || pq <= 0) throw input_error("exponent_regression: points must be positive");
        sx += std::log(static_cast<double>(pn));
        sy += std::log(pq);
    }
    const double xbar = sx / n, ybar = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [pn, pq] : points) {
        const double dx = std::log(static_cast<double>(pn)) - xbar;
        const double dy = std::log(pq) - ybar;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    if (sxx == 0) throw input_error("exponent_regression: degenerate n grid");
    regression_result out;
    out.slope = sxy / sxx;
    out.intercept = ybar - out.slope * xbar;
    double rss = 0;
    for (const auto& [pn, pq] : points) {
        const double pred = out.intercept + out.slope * std::log(static_cast<double>(pn));
        const double resid = std::log(pq) - pred;
        rss += resid * resid;
    }
    out.stderr_slope = std::sqrt(rss / (n - 2) / sxx);
    return out;
}

frequency_estimate stability_experiment(const hypergraph& board, int m, double delta,
                                        int64_t samples, uint64_t seed, int stability_cap) {
    if (samples < 1) throw input_error("stability_experiment: samples must be positive");
    if (m < 1 || m > board.vertex_count())
        throw input_error("stability_experiment: bad sample size M");
    if (m > stability_cap)
        throw capacity_error("stability_experiment: M exceeds the exact stability cap");
    rng_t rng(seed);
    frequency_estimate out;
    out.samples = samples;
    for (int64_t i = 0; i < samples; ++i) {
        const std::vector<int> t = sample_uniform_subset(board.vertex_count(), m, rng);
        if (!board.is_delta_stable(t, delta, stability_cap)) ++out.hits;
    }
    out.p_hat = static_cast<double>(out.hits) / samples;
    const wilson_interval w = wilson(out.hits, samples);
    out.ci_lo = w.lo;
    out.ci_hi = w.hi;
    return out;
}

binuni_result binomial_vs_uniform_experiment(const hypergraph& board, double p, int64_t samples,
                                             uint64_t seed) {
    if (samples < 1) throw input_error("binuni: samples must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw input_error("binuni: p must lie in [0,1]");
    binuni_result out;
    const int n = board.vertex_count();
    out.uniform_size = static_cast<int>(std::floor(p * n));
    rng_t rng(seed);
    out.uniform_no_edge.samples = samples;
    out.binomial_no_edge.samples = samples;
    for (int64_t i = 0; i < samples; ++i) {
        const std::vector<int> u = sample_uniform_subset(n, out.uniform_size, rng);
        if (!board.contains_edge(u)) ++out.uniform_no_edge.hits;
        const std::vector<int> b = sample_binomial_subset(n, p, rng);
        if (!board.contains_edge(b)) ++out.binomial_no_edge.hits;
    }
    for (frequency_estimate* f : {&out.uniform_no_edge, &out.binomial_no_edge}) {
        f->p_hat = static_cast<double>(f->hits) / samples;
        const wilson_interval w = wilson(f->hits, samples);
        f->ci_lo = w.lo;
        f->ci_hi = w.hi;
    }
    return out;
}

solution_count_table solution_count_experiment(const linear_system& sys,
                                               const std::vector<int64_t>& n_grid,
                                               const solution_mode& mode, double budget) {
    if (n_grid.empty()) throw input_error("solution_count_experiment: empty n grid");
    for (size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw input_error("solution_count_experiment: n grid must be strictly increasing");
    solution_count_table out;
    out.free_dimension = sys.cols() - rank(sys.a);
    bool any = false;
    for (int64_t n : n_grid) {
        solution_count_row row;
        row.n = n;
        row.count = count_solutions(sys, n, mode, budget);
        if (row.count > 0) any = true;
        rational denom(1);
        mpz_ui_pow_ui(denom.get_num_mpz_t(), static_cast<unsigned long>(n),
                      static_cast<unsigned long>(out.free_dimension));
        row.ratio = rational(static_cast<long>(row.count)) / denom;
        row.ratio.canonicalize();
        out.rows.push_back(std::move(row));
    }
    out.empty_system = !any;
    return out;
}

std::string to_csv(const threshold_estimate& e) {
    std::string out = "n,q,trials,maker_wins,win_rate,ci_lo,ci_hi\n";
    for (const auto& pt : e.curve) {
        out += std::to_string(e.n) + "," + std::to_string(pt.q) + "," + std::to_string(pt.trials) +
               "," + std::to_string(pt.maker_wins) + "," + fmt6(pt.win_rate) + "," +
               fmt6(pt.ci_lo) + "," + fmt6(pt.ci_hi) + "\n";
    }
    return out;
}

std::string trials_to_jsonl(const threshold_estimate& e) {
    std::string out;
    for (const auto& t : e.trials_log) {
        nlohmann::json j;
        j["n"] = e.n;
        j["q"] = t.q;
        j["trial"] = t.trial;
        j["seed"] = t.seed;
        j["winner"] = to_string(t.result);
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string estimates_to_csv(const std::vector<threshold_estimate>& es) {
    std::string out = "n,q_hat,ci_half_width,unbounded,below_bracket,warning_nonmonotone\n";
    for (const auto& e : es) {
        out += std::to_string(e.n) + "," + std::to_string(e.q_hat) + "," +
               fmt6(e.ci_half_width) + "," + std::to_string(e.unbounded ? 1 : 0) + "," +
               std::to_string(e.below_bracket ? 1 : 0) + "," +
               std::to_string(e.warning_nonmonotone ? 1 : 0) + "\n";
    }
    return out;
}

std::string to_csv(const solution_count_table& t) {
    std::string out = "n,count,ratio_exact,ratio\n";
    for (const auto& row : t.rows) {
        out += std::to_string(row.n) + "," + std::to_string(row.count) + "," +
               to_string(row.ratio) + "," + fmt6(row.ratio.get_d()) + "\n";
    }
    return out;
}

}  // namespace mbg
