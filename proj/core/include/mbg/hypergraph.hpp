#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbg/rational.hpp"

namespace mbg {

// Exact descriptor of f(H) = min over 2 <= l <= k of (d(H)/Delta_l)^(1/(l-1)).
// `ratio` is the exact rational d(H)/Delta_l at the minimising l, so that
// f-comparisons can be made without floating point: f op c  <=>
// ratio op c^(l-1) for positive c.
struct f_descriptor {
    int ell = 0;           // minimising l (smallest on ties)
    rational ratio;        // d(H) / Delta_ell, exact
    double value = 0.0;    // ratio^(1/(ell-1))
};

// All degree/density parameters of one board in one place: exact density
// e(H)/v(H), the maximum l-degrees for l = 1..max edge size, and f(H) when
// the board is k-uniform with k >= 2 and nonempty.
struct parameter_table {
    rational density;
    std::vector<int64_t> max_degrees;  // index l-1 holds Delta_l
    std::optional<f_descriptor> f;
};

// Finite hypergraph on vertex set [0, N). Edges are strictly sorted vertex
// index lists, deduplicated, stored in lexicographic order in one flat
// buffer. Immutable after construction and safe to share across threads.
class hypergraph {
public:
    hypergraph() = default;
    // Validates, sorts each edge, sorts and deduplicates the edge list.
    // Within-edge repeated vertices and out-of-range indices are input errors.
    hypergraph(int vertex_count, std::vector<std::vector<int>> edges);

    int vertex_count() const { return vertex_count_; }
    int64_t edge_count() const { return edge_count_; }
    // Present iff the hypergraph has at least one edge and all edges have the
    // same size.
    std::optional<int> uniformity() const { return uniformity_; }
    int max_edge_size() const { return max_edge_size_; }

    std::span<const uint32_t> edge(int64_t i) const;
    int edge_size(int64_t i) const;
    std::vector<int> edge_vertices(int64_t i) const;

    // Number of edges containing s as a subset. s must be nonempty with valid
    // indices.
    int64_t degree(const std::vector<int>& s) const;

    // Max of degree over all ell-subsets, computed by bucketing the
    // ell-subsets of each edge (cost sum_e C(|e|, ell)), never by enumerating
    // the ell-subsets of V.
    int64_t max_ell_degree(int ell) const;

    // e(H)/v(H), exact. Input error on an empty vertex set.
    rational density() const;

    // f(H) with the minimising ell; requires k-uniform, k >= 2, at least one
    // edge.
    f_descriptor maker_f() const;

    // True iff some edge is a subset of t.
    bool contains_edge(const std::vector<int>& t) const;

    // True iff every S subseteq t with |S| >= delta*|t| contains an edge,
    // decided exactly via the independence number of the subhypergraph
    // induced on t. Refuses |t| > cap.
    bool is_delta_stable(const std::vector<int>& t, double delta, int cap = 24) const;

    // Largest edge-free subset of t, exact branch-and-bound. Refuses
    // |t| > cap.
    int induced_independence_number(const std::vector<int>& t, int cap = 24) const;

    // Vertex -> incident edge ids, CSR layout, built lazily (thread safe).
    void ensure_incidence() const;
    std::span<const int64_t> incident_edges(int vertex) const;

    // Text format: line 1 "v <N>", then one edge per line as space-separated
    // 0-based indices; '#' starts a comment. format() emits the canonical
    // form, and parse(format()) round-trips exactly.
    static hypergraph parse(std::istream& in);
    static hypergraph parse(const std::string& text);
    static hypergraph load(const std::string& path);
    std::string format() const;
    void save(const std::string& path) const;

    bool operator==(const hypergraph& other) const;

    // Trusted constructor for bulk builders: edges must already be sorted
    // lexicographically, internally strictly sorted, in-range, deduplicated.
    static hypergraph from_canonical(int vertex_count, std::vector<uint32_t> edge_data,
                                     std::vector<uint64_t> edge_offsets);

private:
    void finalize_shape();

    int vertex_count_ = 0;
    int64_t edge_count_ = 0;
    std::vector<uint32_t> edge_data_;
    std::vector<uint64_t> edge_offsets_;  // edge_count_+1 entries
    std::optional<int> uniformity_;
    int max_edge_size_ = 0;

    struct incidence_cache;
    mutable std::shared_ptr<const incidence_cache> incidence_;
};

parameter_table compute_parameters(const hypergraph& h);

// Convenience builder for the hypergraph of k-term arithmetic progressions in
// [1, n], integer i stored as vertex i-1. Used pervasively in tests and by
// the CLI; equivalent to building the Rado hypergraph of the k-AP system.
hypergraph ap_hypergraph(int k, int64_t n);

// Deduplicated random k-uniform hypergraph with (at most) the requested
// number of edges; test/experiment plumbing.
hypergraph random_uniform_hypergraph(int vertex_count, int k, int64_t edges, uint64_t seed);

}  // namespace mbg
