#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbg/hypergraph.hpp"
#include "mbg/rational.hpp"

namespace mbg {

// Integer linear system A x^T = b^T with arbitrary-precision entries.
struct linear_system {
    int_matrix a;  // r x m, r >= 1, m >= 1
    int_vector b;  // length r

    linear_system(int_matrix a_in, int_vector b_in);

    int rows() const { return static_cast<int>(a.size()); }
    int cols() const { return static_cast<int>(a[0].size()); }
    bool homogeneous() const;

    // JSON file format: {"A": [[int,...],...], "b": [int,...]}; "b" defaults
    // to the zero vector when absent.
    static linear_system parse_json(const std::string& text);
    static linear_system load(const std::string& path);
    std::string to_json() const;
};

// Exact rank over the rationals via fraction-free (Bareiss) elimination.
int rank(const int_matrix& a);
// Rank of the submatrix keeping only the given columns (empty -> 0).
int rank_of_columns(const int_matrix& a, const std::vector<int>& cols);

// Sorted subset of column indices [0, m).
using column_selection = std::vector<int>;
column_selection complement(const column_selection& q, int m);

// r_Q = rank(A) - rank(A^complement(Q)).
int column_defect(const linear_system& sys, const column_selection& q);

// rank(A) > 0 and every deletion of at most two columns preserves the rank.
bool is_abundant(const int_matrix& a);

// Positivity: S(A, 0) meets the positive integers. Decided by exact rational
// feasibility of {A x = 0, x_i >= 1 for all i} (phase-1 simplex, Bland's
// rule); a feasible rational point scales to an integer witness.
struct positivity_result {
    bool positive = false;
    int_vector witness;  // integer solution with all entries >= 1 when positive
};
positivity_result positive_witness(const int_matrix& a);
bool is_positive(const int_matrix& a);

// m_1(A) = max over |Q| >= 2 of (|Q|-1)/(|Q|-r_Q-1) with a minimum-cardinality
// maximizing Q. Requires an abundant matrix; refuses m > 20.
struct one_density_result {
    rational value;
    column_selection witness;
};
one_density_result max_one_density(const int_matrix& a);

// Partition of the column indices [0, m); blocks sorted internally and
// ordered by minimum element.
struct set_partition {
    std::vector<std::vector<int>> blocks;

    static set_partition of(std::vector<std::vector<int>> blocks, int m);
    static set_partition discrete(int m);
    // Partition induced by the equal entries of a tuple.
    static set_partition from_tuple(const std::vector<int64_t>& x);

    int size() const { return static_cast<int>(blocks.size()); }
    bool is_discrete() const;
    std::string to_string() const;
    bool operator==(const set_partition& other) const = default;
};

// All set partitions of [0, m); refuses m > 12.
std::vector<set_partition> all_partitions(int m);

// A_p: one column per block (blocks ordered by minimum element), each the sum
// of the block's columns.
int_matrix contract(const int_matrix& a, const set_partition& p);

enum class partition_class { proper, non_degenerate, degenerate };
const char* to_string(partition_class c);

// Discrete partitions are Proper. For abundant A a coarser partition is
// NonDegenerate iff |p| >= 2 and either A_p is non-abundant with
// rank(A_p) >= 1 or A_p is abundant with m_1(A_p) >= m_1(A); for non-abundant
// A the condition is just |p| >= 2. Rank-0 contractions of a homogeneous
// system are Degenerate.
partition_class classify_partition(const linear_system& sys, const set_partition& p);

// Induced subsystem B(A,Q), c(A,Q,b) together with the integer row-operation
// certificate P such that (P A)^complement(Q) has an all-zero top block.
struct subsystem_result {
    int_matrix b_matrix;  // r_Q x |Q|, rank r_Q
    int_vector c;         // length r_Q
    int_matrix p_matrix;  // r x r, invertible over the rationals
    int r_q = 0;

    // Re-checks the defining properties against the source system.
    bool verify(const linear_system& sys, const column_selection& q) const;
};
subsystem_result induced_subsystem(const linear_system& sys, const column_selection& q);

// Minimum-cardinality Q achieving m_1(A) together with its induced subsystem;
// the result is abundant, positive, strictly balanced, and has the same m_1.
std::pair<subsystem_result, column_selection> strictly_balanced_subsystem(const linear_system& sys);

// Which solutions of A x = b count as winning sets.
struct solution_mode {
    enum class kind { all_integer, proper, matching_partition, family };
    kind which = kind::proper;
    set_partition partition;             // matching_partition
    std::vector<set_partition> family;   // family

    static solution_mode all_integer();
    static solution_mode proper();
    static solution_mode matching(set_partition p);
    static solution_mode family_of(std::vector<set_partition> f);
};

// Enumerates all x in [1,n]^m with A x = b and the mode's equality pattern by
// fixing the lexicographically first full-rank pivot columns and iterating
// the free columns. The candidate count n^(m - rank A) is capped by `budget`.
void for_each_solution(const linear_system& sys, int64_t n, const solution_mode& mode,
                       const std::function<void(const std::vector<int64_t>&)>& fn,
                       double budget = 1e8);
std::vector<std::vector<int64_t>> enumerate_solutions(const linear_system& sys, int64_t n,
                                                      const solution_mode& mode,
                                                      double budget = 1e8);
int64_t count_solutions(const linear_system& sys, int64_t n, const solution_mode& mode,
                        double budget = 1e8);

// Rado game hypergraph: vertex i represents the integer i+1; edges are the
// deduplicated supports of the enumerated solutions.
hypergraph build_rado_hypergraph(const linear_system& sys, int64_t n, const solution_mode& mode,
                                 double budget = 1e8);

// The (k-2) x k arithmetic-progression system with rows (..., 1, -2, 1, ...).
linear_system ap_system(int k);
// x1 + x2 = x3 (Schur triples) and x1 + x2 = x3 + x4 (Sidon equation).
linear_system schur_system();
linear_system sidon_system();

// For positive non-abundant systems: integers v1, v2, b' with v1 x_{i1} +
// v2 x_{i2} = b' for every solution, found by row elimination.
struct pairing_certificate {
    int i1 = 0, i2 = 0;  // 0-based column indices, i1 < i2
    big_int v1, v2, b_prime;
};
pairing_certificate make_pairing_certificate(const linear_system& sys);
// { (b'-v1*i)/v2, (b'-v2*i)/v1 } intersected with the integers in [1, n].
std::vector<int64_t> pairing_targets(const pairing_certificate& cert, int64_t occupied, int64_t n);

}  // namespace mbg
