#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbg/game.hpp"
#include "mbg/hypergraph.hpp"
#include "mbg/linear_system.hpp"
#include "mbg/rational.hpp"

namespace mbg {

struct wilson_interval {
    double lo = 0.0, hi = 1.0;
};
wilson_interval wilson(int64_t successes, int64_t trials, double z = 1.96);

using strategy_factory = std::function<std::unique_ptr<strategy>(const hypergraph&, int)>;

struct curve_point {
    int q = 0;
    int trials = 0;
    int maker_wins = 0;
    double win_rate = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;
};

struct trial_record {
    int q = 0;
    int trial = 0;
    uint64_t seed = 0;
    game_result result = game_result::undecided;
};

// Empirical surrogate for the threshold bias: smallest q in the bracket whose
// Maker win rate over `trials` seeded games falls below `target`.
struct threshold_estimate {
    int64_t n = 0;
    int q_hat = 0;
    bool unbounded = false;      // win rate >= target at the upper bracket end
    bool below_bracket = false;  // win rate < target already at the lower end
    double ci_half_width = 0.0;  // Wilson half-width at the crossover point
    bool warning_nonmonotone = false;
    std::vector<curve_point> curve;         // all probed biases, sorted by q
    std::vector<trial_record> trials_log;   // per-game outcomes behind the curve
};

struct estimate_options {
    int trials = 200;
    double target = 0.5;
    int q_lo = 1;
    int q_hi = 0;  // <= 0: defaults to v(H)
    uint64_t seed = 0;
    bool widen_on_bracket_failure = true;
};

threshold_estimate estimate_threshold(const hypergraph& board, int64_t n_label,
                                      const strategy_factory& maker_factory,
                                      const strategy_factory& breaker_factory,
                                      const estimate_options& opt);

// Least-squares slope of log(q_hat) against log(n); needs >= 3 points.
struct regression_result {
    double slope = 0.0;
    double stderr_slope = 0.0;
    double intercept = 0.0;
};
regression_result exponent_regression(const std::vector<std::pair<int64_t, double>>& points);

struct frequency_estimate {
    int64_t hits = 0;
    int64_t samples = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;
};

// Monte Carlo frequency of "uniform random M-subset is not delta-stable".
frequency_estimate stability_experiment(const hypergraph& board, int m, double delta,
                                        int64_t samples, uint64_t seed, int stability_cap = 24);

// P(no edge) for the uniform floor(np)-subset versus the binomial p-subset.
struct binuni_result {
    frequency_estimate uniform_no_edge;
    frequency_estimate binomial_no_edge;
    int uniform_size = 0;
};
binuni_result binomial_vs_uniform_experiment(const hypergraph& board, double p, int64_t samples,
                                             uint64_t seed);

// Exact |solutions in [n]^m| / n^(m - rank A) over an n grid.
struct solution_count_row {
    int64_t n = 0;
    int64_t count = 0;
    rational ratio;
};
struct solution_count_table {
    std::vector<solution_count_row> rows;
    int free_dimension = 0;  // m - rank(A)
    bool empty_system = false;
};
solution_count_table solution_count_experiment(const linear_system& sys,
                                               const std::vector<int64_t>& n_grid,
                                               const solution_mode& mode, double budget = 1e8);

// Deterministic CSV renderings (fixed column order and number formatting).
std::string to_csv(const threshold_estimate& e);
std::string trials_to_jsonl(const threshold_estimate& e);
std::string estimates_to_csv(const std::vector<threshold_estimate>& es);
std::string to_csv(const solution_count_table& t);

}  // namespace mbg
