#include "mbg/linear_system.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "mbg/errors.hpp"

namespace mbg {

namespace {

using rat_row = std::vector<rational>;
using rat_matrix = std::vector<rat_row>;

rat_matrix to_rat(const int_matrix& a) {
    rat_matrix w(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        w[i].reserve(a[i].size());
        for (const auto& x : a[i]) w[i].emplace_back(x);
    }
    return w;
}

// Reduced row echelon form in place; returns pivot columns (leftmost pivots,
// so the pivot set is the lexicographically first independent column set).
std::vector<int> rref(rat_matrix& w) {
    std::vector<int> pivots;
    if (w.empty()) return pivots;
    const int r = static_cast<int>(w.size());
    const int m = static_cast<int>(w[0].size());
    int row = 0;
    for (int col = 0; col < m && row < r; ++col) {
        int p = -1;
        for (int i = row; i < r; ++i) {
            if (w[i][col] != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(w[row], w[p]);
        const rational inv = w[row][col];
        for (int j = col; j < m; ++j) w[row][j] /= inv;
        for (int i = 0; i < r; ++i) {
            if (i == row || w[i][col] == 0) continue;
            const rational f = w[i][col];
            for (int j = col; j < m; ++j) w[i][j] -= f * w[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

big_int lcm_big(const big_int& a, const big_int& b) {
    big_int out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

big_int gcd_big(const big_int& a, const big_int& b) {
    big_int out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

// Scales a rational row vector to coprime integers.
int_vector clear_denominators(const rat_row& v) {
    big_int den(1);
    for (const auto& x : v) den = lcm_big(den, x.get_den());
    int_vector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(big_int(x.get_num() * (den / x.get_den())));
    big_int g(0);
    for (const auto& x : out) g = gcd_big(g, x);
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

// Exact phase-1 simplex with Bland's rule: is {M u = rhs, u >= 0} feasible
// over the rationals? On success fills `point` with one feasible u.
bool nonneg_feasible(const rat_matrix& m_in, const rat_row& rhs_in, rat_row* point) {
    const int r = static_cast<int>(m_in.size());
    const int m = r > 0 ? static_cast<int>(m_in[0].size()) : 0;
    // Tableau columns: u_0..u_{m-1}, artificial a_0..a_{r-1}, rhs.
    rat_matrix t(r, rat_row(m + r + 1));
    for (int i = 0; i < r; ++i) {
        const bool flip = rhs_in[i] < 0;
        for (int j = 0; j < m; ++j) t[i][j] = flip ? -m_in[i][j] : m_in[i][j];
        t[i][m + i] = 1;
        t[i][m + r] = flip ? -rhs_in[i] : rhs_in[i];
    }
    std::vector<int> basis(r);
    for (int i = 0; i < r; ++i) basis[i] = m + i;
    // Phase-1 objective: minimize the sum of the artificials. The reduced
    // cost of column j is sum over rows of t[i][j] minus (1 if j artificial).
    while (true) {
        int enter = -1;
        for (int j = 0; j < m + r && enter < 0; ++j) {
            rational red(0);
            for (int i = 0; i < r; ++i)
                if (basis[i] >= m) red += t[i][j];
            if (j >= m) red -= 1;
            if (red > 0) enter = j;  // Bland: smallest index
        }
        if (enter < 0) break;
        int leave = -1;
        rational best;
        for (int i = 0; i < r; ++i) {
            if (t[i][enter] <= 0) continue;
            rational ratio = t[i][m + r] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) break;  // unbounded phase-1 cannot happen; be safe
        const rational piv = t[leave][enter];
        for (int j = 0; j <= m + r; ++j) t[leave][j] /= piv;
        for (int i = 0; i < r; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const rational f = t[i][enter];
            for (int j = 0; j <= m + r; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    rational objective(0);
    for (int i = 0; i < r; ++i)
        if (basis[i] >= m) objective += t[i][m + r];
    if (objective != 0) return false;
    if (point) {
        point->assign(m, rational(0));
        for (int i = 0; i < r; ++i)
            if (basis[i] < m) (*point)[basis[i]] = t[i][m + r];
    }
    return true;
}

// Null space basis of an r x m rational matrix (vectors of length m).
std::vector<rat_row> nullspace_basis(rat_matrix w) {
    if (w.empty()) return {};
    const int m = static_cast<int>(w[0].size());
    const std::vector<int> pivots = rref(w);
    std::vector<char> is_pivot(m, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<rat_row> basis;
    for (int f = 0; f < m; ++f) {
        if (is_pivot[f]) continue;
        rat_row v(m, rational(0));
        v[f] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -w[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

void check_matrix(const int_matrix& a) {
    if (a.empty() || a[0].empty()) throw input_error("matrix must have at least one row and column");
    for (const auto& row : a)
        if (row.size() != a[0].size()) throw input_error("matrix rows have unequal lengths");
}

}  // namespace

linear_system::linear_system(int_matrix a_in, int_vector b_in) : a(std::move(a_in)), b(std::move(b_in)) {
    check_matrix(a);
    if (b.size() != a.size()) throw input_error("right-hand side length does not match row count");
}

bool linear_system::homogeneous() const {
    return std::all_of(b.begin(), b.end(), [](const big_int& x) { return x == 0; });
}

linear_system linear_system::parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("system JSON parse error: ") + e.what());
    }
    if (!j.contains("A") || !j["A"].is_array()) throw input_error("system JSON: missing matrix \"A\"");
    int_matrix a;
    for (const auto& row : j["A"]) {
        int_vector r;
        for (const auto& x : row) r.emplace_back(static_cast<long>(x.get<int64_t>()));
        a.push_back(std::move(r));
    }
    int_vector b;
    if (j.contains("b")) {
        for (const auto& x : j["b"]) b.emplace_back(static_cast<long>(x.get<int64_t>()));
    } else {
        b.assign(a.size(), big_int(0));
    }
    return linear_system(std::move(a), std::move(b));
}

linear_system linear_system::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open system file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

std::string linear_system::to_json() const {
    nlohmann::json j;
    j["A"] = nlohmann::json::array();
    for (const auto& row : a) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& x : row) {
            if (!x.fits_slong_p()) throw input_error("to_json: entry exceeds int64 range");
            r.push_back(static_cast<int64_t>(x.get_si()));
        }
        j["A"].push_back(std::move(r));
    }
    j["b"] = nlohmann::json::array();
    for (const auto& x : b) {
        if (!x.fits_slong_p()) throw input_error("to_json: entry exceeds int64 range");
        j["b"].push_back(static_cast<int64_t>(x.get_si()));
    }
    return j.dump();
}

int rank(const int_matrix& a) {
    if (a.empty() || a[0].empty()) return 0;
    int_matrix w = a;
    const int r = static_cast<int>(w.size());
    const int m = static_cast<int>(w[0].size());
    int rk = 0;
    big_int prev(1);
    for (int col = 0; col < m && rk < r; ++col) {
        int p = -1;
        for (int i = rk; i < r; ++i) {
            if (w[i][col] != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(w[rk], w[p]);
        for (int i = rk + 1; i < r; ++i) {
            for (int j = col + 1; j < m; ++j) {
                big_int num = w[rk][col] * w[i][j] - w[i][col] * w[rk][j];
                mpz_divexact(w[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            w[i][col] = 0;
        }
        prev = w[rk][col];
        ++rk;
    }
    return rk;
}

int rank_of_columns(const int_matrix& a, const std::vector<int>& cols) {
    if (cols.empty() || a.empty()) return 0;
    int_matrix sub(a.size(), int_vector(cols.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) sub[i][j] = a[i][cols[j]];
    return rank(sub);
}

column_selection complement(const column_selection& q, int m) {
    std::vector<char> in(m, 0);
    for (int c : q) {
        if (c < 0 || c >= m) throw input_error("column selection index out of range");
        in[c] = 1;
    }
    column_selection out;
    for (int c = 0; c < m; ++c)
        if (!in[c]) out.push_back(c);
    return out;
}

int column_defect(const linear_system& sys, const column_selection& q) {
    return rank(sys.a) - rank_of_columns(sys.a, complement(q, sys.cols()));
}

bool is_abundant(const int_matrix& a) {
    check_matrix(a);
    const int rk = rank(a);
    if (rk == 0) return false;
    const int m = static_cast<int>(a[0].size());
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            std::vector<int> kept;
            for (int c = 0; c < m; ++c)
                if (c != i && c != j) kept.push_back(c);
            if (rank_of_columns(a, kept) != rk) return false;
        }
    }
    return true;
}

positivity_result positive_witness(const int_matrix& a) {
    check_matrix(a);
    const int r = static_cast<int>(a.size());
    const int m = static_cast<int>(a[0].size());
    // x = 1 + u with u >= 0: A u = -A 1.
    rat_matrix w = to_rat(a);
    rat_row rhs(r, rational(0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m; ++j) rhs[i] -= w[i][j];
    rat_row u;
    positivity_result out;
    if (!nonneg_feasible(w, rhs, &u)) return out;
    out.positive = true;
    rat_row x(m);
    for (int j = 0; j < m; ++j) x[j] = u[j] + 1;
    big_int den(1);
    for (const auto& v : x) den = lcm_big(den, v.get_den());
    out.witness.reserve(m);
    for (const auto& v : x) out.witness.push_back(big_int(v.get_num() * (den / v.get_den())));
    return out;
}

bool is_positive(const int_matrix& a) { return positive_witness(a).positive; }

one_density_result max_one_density(const int_matrix& a) {
    check_matrix(a);
    if (!is_abundant(a)) throw precondition_error("max_one_density: matrix is not abundant");
    const int m = static_cast<int>(a[0].size());
    if (m > 20) throw capacity_error("max_one_density: more than 20 columns");
    const int rk = rank(a);

    one_density_result best;
    bool have = false;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        const int size = std::popcount(mask);
        if (size < 2) continue;
        std::vector<int> comp;
        for (int c = 0; c < m; ++c)
            if (!(mask & (1u << c))) comp.push_back(c);
        const int r_q = rk - rank_of_columns(a, comp);
        const int den = size - r_q - 1;
        if (den <= 0)
            throw precondition_error("max_one_density: |Q| - r_Q - 1 <= 0 on an abundant matrix");
        rational val(size - 1, den);
        val.canonicalize();
        const bool better =
            !have || val > best.value ||
            (val == best.value && size < static_cast<int>(best.witness.size()));
        if (better) {
            best.value = val;
            best.witness.clear();
            for (int c = 0; c < m; ++c)
                if (mask & (1u << c)) best.witness.push_back(c);
            have = true;
        }
    }
    return best;
}

set_partition set_partition::of(std::vector<std::vector<int>> blocks, int m) {
    std::vector<char> seen(m, 0);
    int covered = 0;
    for (auto& blk : blocks) {
        if (blk.empty()) throw input_error("set_partition: empty block");
        std::sort(blk.begin(), blk.end());
        for (size_t i = 0; i < blk.size(); ++i) {
            const int x = blk[i];
            if (x < 0 || x >= m) throw input_error("set_partition: index out of range");
            if (i > 0 && blk[i] == blk[i - 1]) throw input_error("set_partition: repeated index");
            if (seen[x]) throw input_error("set_partition: blocks are not disjoint");
            seen[x] = 1;
            ++covered;
        }
    }
    if (covered != m) throw input_error("set_partition: blocks do not cover all indices");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& x, const auto& y) { return x[0] < y[0]; });
    set_partition p;
    p.blocks = std::move(blocks);
    return p;
}

set_partition set_partition::discrete(int m) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(m);
    for (int i = 0; i < m; ++i) blocks.push_back({i});
    set_partition p;
    p.blocks = std::move(blocks);
    return p;
}

set_partition set_partition::from_tuple(const std::vector<int64_t>& x) {
    std::map<int64_t, std::vector<int>> by_value;
    for (size_t i = 0; i < x.size(); ++i) by_value[x[i]].push_back(static_cast<int>(i));
    std::vector<std::vector<int>> blocks;
    for (auto& [v, idx] : by_value) blocks.push_back(std::move(idx));
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& p, const auto& q) { return p[0] < q[0]; });
    set_partition p;
    p.blocks = std::move(blocks);
    return p;
}

bool set_partition::is_discrete() const {
    return std::all_of(blocks.begin(), blocks.end(),
                       [](const auto& b) { return b.size() == 1; });
}

std::string set_partition::to_string() const {
    std::string out = "{";
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i) out += ",";
        out += "{";
        for (size_t j = 0; j < blocks[i].size(); ++j) {
            if (j) out += ",";
            out += std::to_string(blocks[i][j]);
        }
        out += "}";
    }
    out += "}";
    return out;
}

std::vector<set_partition> all_partitions(int m) {
    if (m < 1) throw input_error("all_partitions: m must be positive");
    if (m > 12) throw capacity_error("all_partitions: m > 12");
    std::vector<set_partition> out;
    std::vector<int> assign(m, 0);
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == m) {
            std::vector<std::vector<int>> blocks(used);
            for (int j = 0; j < m; ++j) blocks[assign[j]].push_back(j);
            set_partition p;
            p.blocks = std::move(blocks);
            out.push_back(std::move(p));
            return;
        }
        for (int blk = 0; blk <= used; ++blk) {
            assign[i] = blk;
            self(self, i + 1, blk == used ? used + 1 : used);
        }
    };
    rec(rec, 0, 0);
    return out;
}

int_matrix contract(const int_matrix& a, const set_partition& p) {
    check_matrix(a);
    const int m = static_cast<int>(a[0].size());
    // Validates coverage of [0, m).
    set_partition canon = set_partition::of(p.blocks, m);
    int_matrix out(a.size(), int_vector(canon.blocks.size(), big_int(0)));
    for (size_t s = 0; s < canon.blocks.size(); ++s)
        for (int c : canon.blocks[s])
            for (size_t i = 0; i < a.size(); ++i) out[i][s] += a[i][c];
    return out;
}

const char* to_string(partition_class c) {
    switch (c) {
        case partition_class::proper: return "Proper";
        case partition_class::non_degenerate: return "NonDegenerate";
        case partition_class::degenerate: return "Degenerate";
    }
    return "?";
}

partition_class classify_partition(const linear_system& sys, const set_partition& p) {
    set_partition canon = set_partition::of(p.blocks, sys.cols());
    if (canon.is_discrete()) return partition_class::proper;
    if (canon.size() < 2) return partition_class::degenerate;
    const int_matrix ap = contract(sys.a, canon);
    const int rank_ap = rank(ap);
    if (rank_ap == 0 && sys.homogeneous()) return partition_class::degenerate;
    if (is_abundant(sys.a)) {
        if (is_abundant(ap)) {
            return max_one_density(ap).value >= max_one_density(sys.a).value
                       ? partition_class::non_degenerate
                       : partition_class::degenerate;
        }
        return rank_ap >= 1 ? partition_class::non_degenerate : partition_class::degenerate;
    }
    return partition_class::non_degenerate;
}

subsystem_result induced_subsystem(const linear_system& sys, const column_selection& q) {
    const int r = sys.rows();
    const int m = sys.cols();
    column_selection qs(q);
    std::sort(qs.begin(), qs.end());
    const column_selection qbar = complement(qs, m);
    const int r_q = rank(sys.a) - rank_of_columns(sys.a, qbar);
    if (r_q <= 0) throw precondition_error("induced_subsystem: r_Q must be positive");

    // Echelon basis of the Qbar-restricted rows, taken greedily by smallest
    // row index with leftmost pivots. Each basis vector carries its expansion
    // over the original rows.
    struct basis_entry {
        rat_row vec;        // reduced Qbar-part, leading coefficient 1
        int pivot;          // index into qbar
        rat_row expansion;  // combination of original rows
    };
    std::vector<basis_entry> basis;
    std::vector<char> is_basis_row(r, 0);
    std::vector<rat_row> zero_combo(r);  // for non-basis rows: row_i^Qbar = sum combo_j * row_j^Qbar

    for (int i = 0; i < r; ++i) {
        rat_row v(qbar.size());
        for (size_t j = 0; j < qbar.size(); ++j) v[j] = rational(sys.a[i][qbar[j]]);
        rat_row expansion(r, rational(0));
        expansion[i] = 1;
        for (const auto& be : basis) {
            if (v.empty()) break;
            const rational f = v[be.pivot];
            if (f == 0) continue;
            for (size_t j = 0; j < v.size(); ++j) v[j] -= f * be.vec[j];
            for (int t = 0; t < r; ++t) expansion[t] -= f * be.expansion[t];
        }
        int pivot = -1;
        for (size_t j = 0; j < v.size(); ++j) {
            if (v[j] != 0) {
                pivot = static_cast<int>(j);
                break;
            }
        }
        if (pivot >= 0) {
            const rational lead = v[pivot];
            for (auto& x : v) x /= lead;
            for (auto& x : expansion) x /= lead;
            basis.push_back({std::move(v), pivot, std::move(expansion)});
            is_basis_row[i] = 1;
        } else {
            // expansion says: row_i - sum mu_j row_j = 0 on Qbar; store the
            // combination with coefficient 1 on row i.
            zero_combo[i] = std::move(expansion);
        }
    }

    // Integer row operations: basis rows unchanged; each non-basis row is
    // replaced by the scaled combination that zeroes its Qbar-columns.
    int_matrix p_rows(r, int_vector(r, big_int(0)));
    for (int i = 0; i < r; ++i) {
        if (is_basis_row[i]) {
            p_rows[i][i] = 1;
        } else {
            int_vector scaled = clear_denominators(zero_combo[i]);
            // Keep the diagonal coefficient positive for determinism.
            if (scaled[i] < 0)
                for (auto& x : scaled) x = -x;
            p_rows[i] = std::move(scaled);
        }
    }
    auto transformed_row = [&](int i) {
        int_vector row(m, big_int(0));
        for (int t = 0; t < r; ++t) {
            if (p_rows[i][t] == 0) continue;
            for (int j = 0; j < m; ++j) row[j] += p_rows[i][t] * sys.a[t][j];
        }
        return row;
    };

    // Among the zeroed rows pick r_q linearly independent ones (ascending row
    // index, independence over the Q-columns).
    std::vector<int> selected;
    {
        int_matrix acc;
        for (int i = 0; i < r && static_cast<int>(selected.size()) < r_q; ++i) {
            if (is_basis_row[i]) continue;
            int_vector row = transformed_row(i);
            int_vector qpart(qs.size());
            for (size_t j = 0; j < qs.size(); ++j) qpart[j] = row[qs[j]];
            acc.push_back(qpart);
            if (rank(acc) == static_cast<int>(acc.size())) {
                selected.push_back(i);
            } else {
                acc.pop_back();
            }
        }
    }
    if (static_cast<int>(selected.size()) != r_q)
        throw std::logic_error("induced_subsystem: could not select r_Q independent rows");

    // Final row order: selected rows first, then the remaining rows ascending.
    std::vector<int> order(selected);
    for (int i = 0; i < r; ++i)
        if (std::find(selected.begin(), selected.end(), i) == selected.end()) order.push_back(i);

    subsystem_result out;
    out.r_q = r_q;
    out.p_matrix.assign(r, int_vector(r, big_int(0)));
    for (int i = 0; i < r; ++i) out.p_matrix[i] = p_rows[order[i]];
    out.b_matrix.assign(r_q, int_vector(qs.size(), big_int(0)));
    out.c.assign(r_q, big_int(0));
    for (int i = 0; i < r_q; ++i) {
        int_vector row = transformed_row(order[i]);
        for (size_t j = 0; j < qs.size(); ++j) out.b_matrix[i][j] = row[qs[j]];
        for (int t = 0; t < r; ++t) out.c[i] += out.p_matrix[i][t] * sys.b[t];
    }
    return out;
}

bool subsystem_result::verify(const linear_system& sys, const column_selection& q) const {
    const int r = sys.rows();
    const int m = sys.cols();
    column_selection qs(q);
    std::sort(qs.begin(), qs.end());
    const column_selection qbar = complement(qs, m);
    if (rank(p_matrix) != r) return false;
    // P*A, top r_q rows: zero on Qbar, equal to B on Q; P*b top = c.
    for (int i = 0; i < r_q; ++i) {
        int_vector row(m, big_int(0));
        big_int rhs(0);
        for (int t = 0; t < r; ++t) {
            if (p_matrix[i][t] == 0) continue;
            for (int j = 0; j < m; ++j) row[j] += p_matrix[i][t] * sys.a[t][j];
            rhs += p_matrix[i][t] * sys.b[t];
        }
        for (int j : qbar)
            if (row[j] != 0) return false;
        for (size_t j = 0; j < qs.size(); ++j)
            if (row[qs[j]] != b_matrix[i][j]) return false;
        if (rhs != c[i]) return false;
    }
    if (rank(b_matrix) != r_q) return false;
    return column_defect(sys, qs) == r_q;
}

std::pair<subsystem_result, column_selection> strictly_balanced_subsystem(const linear_system& sys) {
    if (!is_positive(sys.a)) throw precondition_error("strictly_balanced_subsystem: matrix is not positive");
    if (!is_abundant(sys.a)) throw precondition_error("strictly_balanced_subsystem: matrix is not abundant");
    const one_density_result md = max_one_density(sys.a);
    subsystem_result sub = induced_subsystem(sys, md.witness);

    // Post-hoc verification by enumeration (the corollary guarantees these).
    if (!is_abundant(sub.b_matrix) || !is_positive(sub.b_matrix))
        throw std::logic_error("strictly_balanced_subsystem: subsystem lost abundance/positivity");
    const one_density_result md_b = max_one_density(sub.b_matrix);
    if (md_b.value != md.value)
        throw std::logic_error("strictly_balanced_subsystem: m_1 changed");
    const int mb = static_cast<int>(sub.b_matrix[0].size());
    const int rk_b = rank(sub.b_matrix);
    for (uint32_t mask = 0; mask + 1 < (1u << mb); ++mask) {  // proper subsets only
        const int size = std::popcount(mask);
        if (size < 2) continue;
        std::vector<int> comp;
        for (int c = 0; c < mb; ++c)
            if (!(mask & (1u << c))) comp.push_back(c);
        const int r_q = rk_b - rank_of_columns(sub.b_matrix, comp);
        if (size - r_q - 1 <= 0)
            throw std::logic_error("strictly_balanced_subsystem: degenerate ratio on abundant matrix");
        rational val(size - 1, size - r_q - 1);
        val.canonicalize();
        if (val >= md.value)
            throw std::logic_error("strictly_balanced_subsystem: result is not strictly balanced");
    }
    return {std::move(sub), md.witness};
}

solution_mode solution_mode::all_integer() {
    solution_mode m;
    m.which = kind::all_integer;
    return m;
}
solution_mode solution_mode::proper() {
    solution_mode m;
    m.which = kind::proper;
    return m;
}
solution_mode solution_mode::matching(set_partition p) {
    solution_mode m;
    m.which = kind::matching_partition;
    m.partition = std::move(p);
    return m;
}
solution_mode solution_mode::family_of(std::vector<set_partition> f) {
    solution_mode m;
    m.which = kind::family;
    m.family = std::move(f);
    return m;
}

namespace {

struct solution_space {
    bool inconsistent = false;
    std::vector<int> pivot_cols;
    std::vector<int> free_cols;
    // den[i] * x[pivot_cols[i]] = rhs[i] - sum_j coef[i][j] * x[free_cols[j]]
    int_matrix coef;
    int_vector rhs;
    int_vector den;
};

solution_space solve_space(const linear_system& sys) {
    const int r = sys.rows();
    const int m = sys.cols();
    rat_matrix w(r, rat_row(m + 1));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < m; ++j) w[i][j] = rational(sys.a[i][j]);
        w[i][m] = rational(sys.b[i]);
    }
    // RREF over the first m columns only; the last column is the rhs.
    solution_space sp;
    int row = 0;
    for (int col = 0; col < m && row < r; ++col) {
        int p = -1;
        for (int i = row; i < r; ++i) {
            if (w[i][col] != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(w[row], w[p]);
        const rational inv = w[row][col];
        for (int j = col; j <= m; ++j) w[row][j] /= inv;
        for (int i = 0; i < r; ++i) {
            if (i == row || w[i][col] == 0) continue;
            const rational f = w[i][col];
            for (int j = col; j <= m; ++j) w[i][j] -= f * w[row][j];
        }
        sp.pivot_cols.push_back(col);
        ++row;
    }
    for (int i = row; i < r; ++i) {
        if (w[i][m] != 0) {
            sp.inconsistent = true;
            return sp;
        }
    }
    std::vector<char> is_pivot(m, 0);
    for (int c : sp.pivot_cols) is_pivot[c] = 1;
    for (int c = 0; c < m; ++c)
        if (!is_pivot[c]) sp.free_cols.push_back(c);

    const int np = static_cast<int>(sp.pivot_cols.size());
    const int nf = static_cast<int>(sp.free_cols.size());
    sp.coef.assign(np, int_vector(nf, big_int(0)));
    sp.rhs.assign(np, big_int(0));
    sp.den.assign(np, big_int(1));
    for (int i = 0; i < np; ++i) {
        big_int d(1);
        for (int j = 0; j < nf; ++j) d = lcm_big(d, w[i][sp.free_cols[j]].get_den());
        d = lcm_big(d, w[i][m].get_den());
        sp.den[i] = d;
        for (int j = 0; j < nf; ++j) {
            const rational& c = w[i][sp.free_cols[j]];
            sp.coef[i][j] = big_int(c.get_num() * (d / c.get_den()));
        }
        sp.rhs[i] = big_int(w[i][m].get_num() * (d / w[i][m].get_den()));
    }
    return sp;
}

bool mode_accepts(const solution_mode& mode, const std::vector<int64_t>& x) {
    switch (mode.which) {
        case solution_mode::kind::all_integer:
            return true;
        case solution_mode::kind::proper: {
            for (size_t i = 0; i < x.size(); ++i)
                for (size_t j = i + 1; j < x.size(); ++j)
                    if (x[i] == x[j]) return false;
            return true;
        }
        case solution_mode::kind::matching_partition:
            return set_partition::from_tuple(x) == mode.partition;
        case solution_mode::kind::family: {
            const set_partition p = set_partition::from_tuple(x);
            for (const auto& q : mode.family)
                if (p == q) return true;
            return false;
        }
    }
    return false;
}

}  // namespace

void for_each_solution(const linear_system& sys, int64_t n, const solution_mode& mode,
                       const std::function<void(const std::vector<int64_t>&)>& fn, double budget) {
    if (n < 1) throw input_error("for_each_solution: n must be positive");
    const solution_space sp = solve_space(sys);
    if (sp.inconsistent) return;
    const int np = static_cast<int>(sp.pivot_cols.size());
    const int nf = static_cast<int>(sp.free_cols.size());
    const int m = sys.cols();

    const double candidates = std::pow(static_cast<double>(n), nf);
    if (candidates > budget) throw capacity_error("for_each_solution: candidate count exceeds budget");

    // int64 fast path when all intermediate values provably fit.
    big_int bound(0);
    for (int i = 0; i < np; ++i) {
        big_int row_bound = abs(sp.rhs[i]);
        for (int j = 0; j < nf; ++j) row_bound += abs(sp.coef[i][j]) * n;
        bound = std::max(bound, row_bound);
    }
    const bool fast = bound.fits_slong_p() && bound.get_si() < (int64_t(1) << 62);

    std::vector<int64_t> x(m);
    std::vector<int64_t> free_vals(nf, 1);

    if (fast) {
        std::vector<std::vector<int64_t>> coef(np, std::vector<int64_t>(nf));
        std::vector<int64_t> rhs(np), den(np);
        for (int i = 0; i < np; ++i) {
            rhs[i] = sp.rhs[i].get_si();
            den[i] = sp.den[i].get_si();
            for (int j = 0; j < nf; ++j) coef[i][j] = sp.coef[i][j].get_si();
        }
        while (true) {
            bool ok = true;
            for (int i = 0; i < np && ok; ++i) {
                int64_t num = rhs[i];
                for (int j = 0; j < nf; ++j) num -= coef[i][j] * free_vals[j];
                if (num % den[i] != 0) {
                    ok = false;
                    break;
                }
                const int64_t v = num / den[i];
                if (v < 1 || v > n) {
                    ok = false;
                    break;
                }
                x[sp.pivot_cols[i]] = v;
            }
            if (ok) {
                for (int j = 0; j < nf; ++j) x[sp.free_cols[j]] = free_vals[j];
                if (mode_accepts(mode, x)) fn(x);
            }
            int j = nf - 1;
            while (j >= 0 && free_vals[j] == n) {
                free_vals[j] = 1;
                --j;
            }
            if (j < 0) break;
            ++free_vals[j];
        }
        return;
    }

    // Arbitrary-precision path.
    while (true) {
        bool ok = true;
        for (int i = 0; i < np && ok; ++i) {
            big_int num = sp.rhs[i];
            for (int j = 0; j < nf; ++j) num -= sp.coef[i][j] * free_vals[j];
            big_int quot, rem;
            mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), sp.den[i].get_mpz_t());
            if (rem != 0 || quot < 1 || quot > n) {
                ok = false;
                break;
            }
            x[sp.pivot_cols[i]] = quot.get_si();
        }
        if (ok) {
            for (int j = 0; j < nf; ++j) x[sp.free_cols[j]] = free_vals[j];
            if (mode_accepts(mode, x)) fn(x);
        }
        int j = nf - 1;
        while (j >= 0 && free_vals[j] == n) {
            free_vals[j] = 1;
            --j;
        }
        if (j < 0) break;
        ++free_vals[j];
    }
}

std::vector<std::vector<int64_t>> enumerate_solutions(const linear_system& sys, int64_t n,
                                                      const solution_mode& mode, double budget) {
    std::vector<std::vector<int64_t>> out;
    for_each_solution(sys, n, mode, [&](const std::vector<int64_t>& x) { out.push_back(x); }, budget);
    return out;
}

int64_t count_solutions(const linear_system& sys, int64_t n, const solution_mode& mode,
                        double budget) {
    int64_t count = 0;
    for_each_solution(sys, n, mode, [&](const std::vector<int64_t>&) { ++count; }, budget);
    return count;
}

hypergraph build_rado_hypergraph(const linear_system& sys, int64_t n, const solution_mode& mode,
                                 double budget) {
    if (n < 1 || n > std::numeric_limits<int>::max())
        throw input_error("build_rado_hypergraph: n out of range");
    const int m = sys.cols();
    const int bits = std::bit_width(static_cast<uint32_t>(std::max<int64_t>(n - 1, 1)));
    const bool packed = mode.which == solution_mode::kind::proper &&
                        static_cast<int64_t>(m) * bits <= 64;

    if (packed) {
        // Proper solutions have supports of size exactly m, so packed keys
        // sort in edge-lexicographic order.
        std::vector<uint64_t> keys;
        std::vector<uint32_t> support(m);
        for_each_solution(
            sys, n, mode,
            [&](const std::vector<int64_t>& x) {
                for (int j = 0; j < m; ++j) support[j] = static_cast<uint32_t>(x[j] - 1);
                std::sort(support.begin(), support.end());
                uint64_t key = 0;
                for (int j = 0; j < m; ++j) key = (key << bits) | support[j];
                keys.push_back(key);
            },
            budget);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<uint32_t> data;
        data.reserve(keys.size() * m);
        std::vector<uint64_t> offsets;
        offsets.reserve(keys.size() + 1);
        offsets.push_back(0);
        const uint64_t field_mask = (bits == 64) ? ~uint64_t(0) : ((uint64_t(1) << bits) - 1);
        for (uint64_t key : keys) {
            for (int j = m - 1; j >= 0; --j) {
                data.push_back(static_cast<uint32_t>((key >> (bits * j)) & field_mask));
            }
            offsets.push_back(data.size());
        }
        return hypergraph::from_canonical(static_cast<int>(n), std::move(data), std::move(offsets));
    }

    std::vector<std::vector<int>> edges;
    for_each_solution(
        sys, n, mode,
        [&](const std::vector<int64_t>& x) {
            std::vector<int> support;
            support.reserve(x.size());
            for (int64_t v : x) support.push_back(static_cast<int>(v - 1));
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()), support.end());
            edges.push_back(std::move(support));
        },
        budget);
    return hypergraph(static_cast<int>(n), std::move(edges));
}

linear_system ap_system(int k) {
    if (k < 3) throw input_error("ap_system: k must be at least 3");
    int_matrix a(k - 2, int_vector(k, big_int(0)));
    for (int i = 0; i < k - 2; ++i) {
        a[i][i] = 1;
        a[i][i + 1] = -2;
        a[i][i + 2] = 1;
    }
    return linear_system(std::move(a), int_vector(k - 2, big_int(0)));
}

linear_system schur_system() {
    int_matrix a{{big_int(1), big_int(1), big_int(-1)}};
    return linear_system(std::move(a), int_vector(1, big_int(0)));
}

linear_system sidon_system() {
    int_matrix a{{big_int(1), big_int(1), big_int(-1), big_int(-1)}};
    return linear_system(std::move(a), int_vector(1, big_int(0)));
}

pairing_certificate make_pairing_certificate(const linear_system& sys) {
    if (rank(sys.a) == 0) throw precondition_error("pairing certificate: matrix has rank 0");
    if (is_abundant(sys.a))
        throw precondition_error("pairing certificate absent: matrix is abundant");
    if (!is_positive(sys.a)) throw precondition_error("pairing certificate: matrix is not positive");
    const int r = sys.rows();
    const int m = sys.cols();
    const int rk = rank(sys.a);

    for (int i1 = 0; i1 < m; ++i1) {
        for (int i2 = i1 + 1; i2 < m; ++i2) {
            std::vector<int> kept;
            for (int c = 0; c < m; ++c)
                if (c != i1 && c != i2) kept.push_back(c);
            if (rank_of_columns(sys.a, kept) == rk) continue;
            // Left null space of A^kept: y with y^T A supported on {i1, i2}.
            rat_matrix t(kept.size(), rat_row(r));
            for (size_t i = 0; i < kept.size(); ++i)
                for (int j = 0; j < r; ++j) t[i][j] = rational(sys.a[j][kept[i]]);
            for (const rat_row& y : nullspace_basis(std::move(t))) {
                rational w1(0), w2(0), wb(0);
                for (int j = 0; j < r; ++j) {
                    w1 += y[j] * rational(sys.a[j][i1]);
                    w2 += y[j] * rational(sys.a[j][i2]);
                    wb += y[j] * rational(sys.b[j]);
                }
                if (w1 == 0 || w2 == 0) continue;  // would contradict positivity
                const int_vector scaled = clear_denominators({w1, w2, wb});
                pairing_certificate cert;
                cert.i1 = i1;
                cert.i2 = i2;
                cert.v1 = scaled[0];
                cert.v2 = scaled[1];
                cert.b_prime = scaled[2];
                if (cert.v1 < 0) {
                    cert.v1 = -cert.v1;
                    cert.v2 = -cert.v2;
                    cert.b_prime = -cert.b_prime;
                }
                return cert;
            }
        }
    }
    throw precondition_error("pairing certificate: no two-column relation found");
}

std::vector<int64_t> pairing_targets(const pairing_certificate& cert, int64_t occupied, int64_t n) {
    std::vector<int64_t> out;
    const auto push_if_valid = [&](const big_int& num, const big_int& den) {
        big_int quot, rem;
        mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (rem != 0) return;
        if (quot < 1 || quot > n) return;
        out.push_back(quot.get_si());
    };
    push_if_valid(cert.b_prime - cert.v1 * occupied, cert.v2);
    push_if_valid(cert.b_prime - cert.v2 * occupied, cert.v1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace mbg
