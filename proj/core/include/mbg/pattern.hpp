#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mbg/hypergraph.hpp"
#include "mbg/rational.hpp"

namespace mbg {

// Fixed r-uniform pattern hypergraph G on vertex labels [0, v).
struct pattern {
    int r = 0;
    int vertices = 0;
    std::vector<std::vector<int>> edges;  // sorted r-sets, deduplicated

    pattern() = default;
    pattern(int r, int vertices, std::vector<std::vector<int>> edges);

    int64_t edge_count() const { return static_cast<int64_t>(edges.size()); }
    // Vertices incident to at least one edge.
    std::vector<int> non_isolated() const;

    // Text format: line 1 "r <r>", line 2 "v <v>", then one edge per line;
    // '#' starts a comment.
    static pattern parse(std::istream& in);
    static pattern parse(const std::string& text);
    static pattern load(const std::string& path);
    std::string format() const;

    bool operator==(const pattern& other) const = default;
};

// m_r(G) = max over edge subsets F with at least r+1 non-isolated vertices of
// (e(F)-1)/(v(F)-r), by full enumeration of the 2^e - 1 nonempty subsets.
// The witness is a minimum-edge-count maximizer (ties: lexicographically
// first edge-index set).
struct r_density_result {
    rational value;
    std::vector<int> witness_edges;  // indices into pattern.edges
};
r_density_result r_density(const pattern& g);

// Edge subset achieving m_r(G) such that every proper subpattern on at least
// r+1 vertices has a strictly smaller ratio. Same vertex labels as g.
pattern strictly_balanced_sub(const pattern& g);

// Colex rank of a sorted r-set and its inverse; fixes the vertex indexing of
// the building-game hypergraph.
int64_t rset_colex_index(const std::vector<int>& s);
std::vector<int> rset_from_colex_index(int64_t index, int r);
int64_t binomial(int64_t n, int64_t k);

// Hypergraph of all copies of g in the complete r-uniform hypergraph on [n]:
// game vertices are the C(n,r) r-sets of [n] in colex order, edges are the
// e(g)-sets of r-set indices forming a copy of g, deduplicated across
// automorphisms.
hypergraph build_building_hypergraph(const pattern& g, int n, int64_t vertex_budget = 1000000,
                                     double placement_budget = 1e8);

// K_v as an r=2 pattern; complete r-uniform pattern on v vertices.
pattern complete_graph_pattern(int v);
pattern complete_uniform_pattern(int r, int v);

}  // namespace mbg
