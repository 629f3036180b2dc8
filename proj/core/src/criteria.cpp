#include "mbg/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "json.hpp"

#include "mbg/errors.hpp"

namespace mbg {

namespace {

double log_add_exp(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

rational rational_from_double(double x) {
    rational r;
    mpq_set_d(r.get_mpq_t(), x);  // exact binary representation
    return r;
}

}  // namespace

maker_conditions maker_report(const hypergraph& h, double c1, double c, double cbar) {
    maker_conditions out;
    const auto k = h.uniformity();
    if (c1 <= 0) c1 = k ? static_cast<double>(*k) : 2.0;  // illustrative default c1 = k
    out.c1 = c1;
    out.c = c;
    out.cbar = cbar;

    const rational d = h.density();
    const rational delta1(static_cast<long>(h.vertex_count() > 0 ? h.max_ell_degree(1) : 0));
    out.mi = delta1 <= rational_from_double(c1) * d;

    if (k && *k >= 2 && h.edge_count() > 0) {
        const f_descriptor f = h.maker_f();
        out.f_defined = true;
        out.mii = f.ratio > 1;  // f > 1 iff the minimising ratio exceeds 1
        const double fv = f.value;
        out.miii_lhs = (h.vertex_count() / fv) * (1.0 - 1.0 / fv);
        out.miii = out.miii_lhs >= cbar;
        out.bias_suggestion = c * fv - 1.0;
        if (fv > 0) {
            const double m_rounds = 2.0 * std::floor(h.vertex_count() / fv);
            out.stability_decay_bound =
                std::min(1.0, 3.0 * std::exp(-m_rounds / (c1 * std::pow(2.0, *k + 2))));
        }
    }
    return out;
}

breaker_bound_result breaker_bound(const hypergraph& h, int t) {
    if (t < 1) throw input_error("breaker_bound: t must be positive");
    const auto k_opt = h.uniformity();
    if (!k_opt || *k_opt < 2)
        throw precondition_error("breaker_bound: board must be k-uniform with k >= 2");
    const int k = *k_opt;
    const double v = static_cast<double>(h.vertex_count());
    if (v < 1) throw input_error("breaker_bound: empty vertex set");

    const int64_t delta1 = h.max_ell_degree(1);
    double term1_log = -std::numeric_limits<double>::infinity();
    if (delta1 > 0) {
        term1_log = (std::log(2.0 * v) / t + std::log(static_cast<double>(delta1)) + std::log(k) +
                     1.0) /
                    (k - 1);
    }

    double inner_log = -std::numeric_limits<double>::infinity();
    for (int ell = 2; ell <= k - 1; ++ell) {
        const int64_t delta = h.max_ell_degree(ell);
        if (delta == 0) continue;  // contributes nothing to the max
        const double tl = static_cast<double>(t);
        const double val = (std::log(static_cast<double>(delta)) +
                            (k / std::pow(tl, 1.0 / k)) *
                                (tl * k * std::log(tl * k) + tl * std::log(k) + 2.0 * std::log(v))) /
                           (k - ell);
        inner_log = std::max(inner_log, val);
    }
    // 2 k^2 t^3 (max + 2); for k = 2 the max ranges over nothing and the term
    // is 4 k^2 t^3.
    const double term2_log =
        std::log(2.0) + 2.0 * std::log(k) + 3.0 * std::log(static_cast<double>(t)) +
        log_add_exp(inner_log, std::log(2.0));

    breaker_bound_result out;
    out.log_value = std::log(4.0) + std::max(term1_log, term2_log);
    out.value = std::exp(out.log_value);
    return out;
}

bool beck_maker_check(const hypergraph& h, int64_t q) {
    if (q < 1) throw input_error("beck_maker_check: q must be at least 1");
    std::map<int, int64_t> by_size;
    for (int64_t e = 0; e < h.edge_count(); ++e) ++by_size[h.edge_size(e)];
    rational lhs(0);
    rational inv(1, static_cast<long>(1 + q));
    inv.canonicalize();
    for (const auto& [s, count] : by_size)
        lhs += rational(static_cast<long>(count)) * pow_rational(inv, s);

    const int64_t delta2 = h.vertex_count() >= 2 ? h.max_ell_degree(2) : 0;
    rational rhs = rational(static_cast<long>(q)) * rational(static_cast<long>(q)) *
                   pow_rational(inv, 3) * rational(static_cast<long>(delta2)) *
                   rational(static_cast<long>(h.vertex_count()));
    return lhs > rhs;
}

janson_bound_result janson_no_edge_bound(const hypergraph& h, double p, double pair_budget) {
    if (!(p > 0.0 && p < 1.0)) throw input_error("janson bound: need 0 < p < 1");
    janson_bound_result out;
    if (h.edge_count() == 0) return out;  // P(no edge) = 1, bound 1
    h.ensure_incidence();

    double work = 0;
    for (int64_t e = 0; e < h.edge_count(); ++e)
        for (uint32_t u : h.edge(e)) work += static_cast<double>(h.incident_edges(u).size());
    if (work > pair_budget)
        throw capacity_error("janson bound: pairwise work exceeds budget; use the delta-chain form");

    double mean = 0;
    for (int64_t e = 0; e < h.edge_count(); ++e) mean += std::pow(p, h.edge_size(e));

    std::map<int64_t, int64_t> exponent_counts;
    std::unordered_map<int64_t, int> common;
    for (int64_t e = 0; e < h.edge_count(); ++e) {
        common.clear();
        for (uint32_t u : h.edge(e))
            for (int64_t other : h.incident_edges(u)) ++common[other];
        const int64_t se = h.edge_size(e);
        for (const auto& [other, c] : common)
            ++exponent_counts[se + h.edge_size(other) - c];
    }
    double sum = 0;
    for (const auto& [x, count] : exponent_counts)
        sum += static_cast<double>(count) * std::pow(p, static_cast<double>(x));
    out.mean = mean;
    out.pair_sum = sum;
    out.bound = sum > 0 ? std::min(1.0, std::exp(-mean * mean / sum)) : 1.0;
    return out;
}

janson_bound_result janson_delta_chain_bound(const hypergraph& h, double p) {
    if (!(p > 0.0 && p < 1.0)) throw input_error("janson bound: need 0 < p < 1");
    janson_bound_result out;
    if (h.edge_count() == 0) return out;
    const auto k_opt = h.uniformity();
    if (!k_opt) throw precondition_error("janson delta-chain bound: board must be uniform");
    const int k = *k_opt;
    out.mean = static_cast<double>(h.edge_count()) * std::pow(p, k);
    double max_term = 0;
    for (int ell = 1; ell <= k; ++ell) {
        const double term =
            static_cast<double>(h.max_ell_degree(ell)) * std::pow(p, 2 * k - ell);
        max_term = std::max(max_term, term);
    }
    out.pair_sum = std::pow(2.0, k) * static_cast<double>(h.edge_count()) * max_term;
    out.bound = out.pair_sum > 0 ? std::min(1.0, std::exp(-out.mean * out.mean / out.pair_sum)) : 1.0;
    return out;
}

std::pair<double, double> threeap_bounds(int64_t n) {
    if (n < 3) throw input_error("threeap_bounds: n must be at least 3");
    const double nd = static_cast<double>(n);
    return {std::sqrt(nd / 12.0 - 1.0 / 6.0), std::sqrt(3.0 * nd)};
}

exponent_prediction predicted_exponent(const linear_system& sys) {
    exponent_prediction out;
    if (!is_positive(sys.a))
        throw precondition_error("predicted_exponent: matrix is not positive");
    if (!is_abundant(sys.a)) {
        out.breaker_at_most_2 = true;
        out.note = "positive but non-abundant: Breaker wins with bias at most 2";
        return out;
    }
    const one_density_result md = max_one_density(sys.a);
    rational inv(md.value.get_den(), md.value.get_num());
    inv.canonicalize();
    out.exponent = inv;
    return out;
}

exponent_prediction predicted_exponent(const pattern& g) {
    exponent_prediction out;
    // A matching (pairwise disjoint edges) is reported separately: Maker wins
    // the building game up to a huge bias and the m_r prediction is not the
    // right scale.
    bool disjoint = true;
    std::vector<char> seen(g.vertices, 0);
    for (const auto& e : g.edges) {
        for (int v : e) {
            if (seen[v]) disjoint = false;
            seen[v] = 1;
        }
    }
    if (disjoint && g.edge_count() >= 1) {
        out.note = "pattern is a matching of independent edges; Maker wins up to bias "
                   "~ C(n - r(e-1), r)/(e-1), so no m_r exponent applies";
        return out;
    }
    const r_density_result rd = r_density(g);
    rational inv(rd.value.get_den(), rd.value.get_num());
    inv.canonicalize();
    out.exponent = inv;
    return out;
}

criteria_report build_criteria_report(const hypergraph& h, const criteria_options& opt,
                                      const linear_system* sys, const pattern* pat,
                                      const std::string& board_id) {
    criteria_report rep;
    rep.board_id = board_id;
    rep.vertex_count = h.vertex_count();
    rep.edge_count = h.edge_count();
    rep.k = h.uniformity();
    if (h.vertex_count() > 0) {
        const parameter_table pt = compute_parameters(h);
        rep.density = pt.density;
        rep.max_degrees = pt.max_degrees;
        rep.f = pt.f;
    }

    rep.maker = maker_report(h, opt.c1, opt.c, opt.cbar);

    rep.t = opt.t;
    if (rep.k && *rep.k >= 2) rep.breaker = breaker_bound(h, opt.t);

    if (opt.q) {
        rep.beck_q = *opt.q;
        rep.beck_result = beck_maker_check(h, *opt.q);
    }

    std::optional<double> p = opt.p;
    if (!p && rep.f && rep.f->value > 1.0) p = 1.0 / rep.f->value;
    if (p && *p > 0.0 && *p < 1.0) {
        rep.janson_p = *p;
        try {
            rep.janson = janson_no_edge_bound(h, *p);
        } catch (const capacity_error&) {
            rep.janson = janson_delta_chain_bound(h, *p);
            rep.notes += "janson: pairwise form over budget, delta-chain used; ";
        }
    }

    if (h.vertex_count() >= 3) rep.threeap = threeap_bounds(h.vertex_count());

    if (sys) {
        rep.prediction = predicted_exponent(*sys);
    } else if (pat) {
        rep.prediction = predicted_exponent(*pat);
    }
    rep.notes += "constants c1/c/cbar are user inputs (defaults illustrative, not derived); ";
    rep.notes += "the stability decay bound depends on the supplied c1 hypothesis";
    return rep;
}

std::string criteria_report::to_json() const {
    nlohmann::json j;
    j["board"] = board_id;
    j["v"] = vertex_count;
    j["e"] = edge_count;
    if (k) j["k"] = *k;
    j["density"] = mbg::to_string(density);
    j["max_degrees"] = max_degrees;
    if (f) {
        j["f"] = {{"value", f->value},
                  {"ell", f->ell},
                  {"ratio", mbg::to_string(f->ratio)}};
    }
    j["maker"] = {{"f_defined", maker.f_defined},
                  {"Mi", maker.mi},
                  {"Mii", maker.mii},
                  {"Miii", maker.miii},
                  {"Miii_lhs", maker.miii_lhs},
                  {"bias_suggestion", maker.bias_suggestion},
                  {"c1", maker.c1},
                  {"c", maker.c},
                  {"cbar", maker.cbar},
                  {"stability_decay_bound", maker.stability_decay_bound}};
    j["breaker_bound"] = {{"t", t}, {"log_value", breaker.log_value}, {"value", breaker.value}};
    if (beck_q) j["beck"] = {{"q", *beck_q}, {"maker_wins", *beck_result}};
    if (janson) {
        j["janson"] = {{"p", *janson_p},
                       {"mean", janson->mean},
                       {"pair_sum", janson->pair_sum},
                       {"bound", janson->bound}};
    }
    j["threeap_bounds"] = {{"lower", threeap.first}, {"upper", threeap.second}};
    if (prediction) {
        nlohmann::json pj;
        if (prediction->exponent) pj["exponent"] = mbg::to_string(*prediction->exponent);
        pj["breaker_at_most_2"] = prediction->breaker_at_most_2;
        if (!prediction->note.empty()) pj["note"] = prediction->note;
        j["predicted_exponent"] = pj;
    }
    j["notes"] = notes;
    return j.dump(2);
}

}  // namespace mbg
