#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbg/hypergraph.hpp"
#include "mbg/linear_system.hpp"
#include "mbg/pattern.hpp"
#include "mbg/rational.hpp"

namespace mbg {

// Truth of the three Maker-criterion conditions for supplied constants:
// (Mi) Delta_1 <= c1 * d(H), (Mii) f(H) > 1,
// (Miii) (v/f)(1 - 1/f) >= cbar. (Mi) and (Mii) are exact rational
// comparisons; (Miii) and the bias suggestion c*f(H)-1 use doubles.
struct maker_conditions {
    bool f_defined = false;
    bool mi = false;
    bool mii = false;
    bool miii = false;
    double miii_lhs = 0.0;
    double bias_suggestion = 0.0;
    double c1 = 0.0, c = 0.0, cbar = 0.0;  // the constants used
    // 3 exp(-M / (c1 2^(k+2))) at M = 2 floor(v/f): the decay bound on the
    // probability that the uniform M-subset is not stable, for the supplied
    // c1 (the hypothesis chain behind it is not certified here).
    double stability_decay_bound = 1.0;
};
maker_conditions maker_report(const hypergraph& h, double c1, double c, double cbar);

// Right-hand side of the Breaker win criterion for the supplied t, evaluated
// in the log domain; `value` may overflow to infinity, `log_value` is always
// finite for nonempty boards.
struct breaker_bound_result {
    double log_value = 0.0;
    double value = 0.0;
};
breaker_bound_result breaker_bound(const hypergraph& h, int t);

// Beck's biased Maker criterion, exact rational arithmetic:
// sum_H (1/(1+q))^{|H|} > q^2/(1+q)^3 * Delta_2(H) * v(H).
bool beck_maker_check(const hypergraph& h, int64_t q);

// exp(-E[X]^2 / sum over intersecting ordered edge pairs of p^(|e|+|e'|-|cap|)),
// the sharp pairwise form. Refuses boards whose incidence pair work exceeds
// the budget; use the Delta-chain relaxation for those.
struct janson_bound_result {
    double mean = 0.0;       // E[X]
    double pair_sum = 0.0;   // denominator
    double bound = 1.0;
};
janson_bound_result janson_no_edge_bound(const hypergraph& h, double p, double pair_budget = 2e8);
// Relaxed form 2^k e(H) max_l Delta_l p^(2k-l) in the denominator (k-uniform).
janson_bound_result janson_delta_chain_bound(const hypergraph& h, double p);

// (sqrt(n/12 - 1/6), sqrt(3n)) for the 3-AP game on [n].
std::pair<double, double> threeap_bounds(int64_t n);

// 1/m_1(A) for positive abundant systems, 1/m_r(G) for patterns. Positive
// non-abundant systems report the Breaker-bias-at-most-2 path instead.
struct exponent_prediction {
    std::optional<rational> exponent;
    bool breaker_at_most_2 = false;
    std::string note;
};
exponent_prediction predicted_exponent(const linear_system& sys);
exponent_prediction predicted_exponent(const pattern& g);

struct criteria_options {
    double c1 = 0.0;   // 0 -> default k (illustrative placeholder)
    double c = 0.1;    // illustrative default
    double cbar = 1e3; // illustrative default
    int t = 2;
    std::optional<int64_t> q;
    std::optional<double> p;  // Janson probability; default 1/f when f > 1
};

// Everything the criteria module can say about one concrete board, plus
// optional system/pattern predictions. Serializes to JSON.
struct criteria_report {
    std::string board_id;
    int vertex_count = 0;
    int64_t edge_count = 0;
    std::optional<int> k;
    rational density;
    std::vector<int64_t> max_degrees;  // index l-1 -> Delta_l, l = 1..k (or max edge size)
    std::optional<f_descriptor> f;
    maker_conditions maker;
    int t = 0;
    breaker_bound_result breaker;
    std::optional<int64_t> beck_q;
    std::optional<bool> beck_result;
    std::optional<double> janson_p;
    std::optional<janson_bound_result> janson;
    std::pair<double, double> threeap{0.0, 0.0};  // at n = v(H) when v >= 3
    std::optional<exponent_prediction> prediction;
    std::string notes;

    std::string to_json() const;
};

criteria_report build_criteria_report(const hypergraph& h, const criteria_options& opt,
                                      const linear_system* sys = nullptr,
                                      const pattern* pat = nullptr,
                                      const std::string& board_id = "");

}  // namespace mbg
