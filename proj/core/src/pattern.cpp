#include "mbg/pattern.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

#include "mbg/errors.hpp"

namespace mbg {

pattern::pattern(int r_in, int vertices_in, std::vector<std::vector<int>> edges_in)
    : r(r_in), vertices(vertices_in), edges(std::move(edges_in)) {
    if (r < 1) throw input_error("pattern: uniformity must be positive");
    if (vertices < 0) throw input_error("pattern: negative vertex count");
    for (auto& e : edges) {
        if (static_cast<int>(e.size()) != r) throw input_error("pattern: edge is not an r-set");
        std::sort(e.begin(), e.end());
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= vertices) throw input_error("pattern: vertex index out of range");
            if (i > 0 && e[i] == e[i - 1]) throw input_error("pattern: repeated vertex in edge");
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::vector<int> pattern::non_isolated() const {
    std::vector<char> seen(vertices, 0);
    for (const auto& e : edges)
        for (int v : e) seen[v] = 1;
    std::vector<int> out;
    for (int v = 0; v < vertices; ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

pattern pattern::parse(std::istream& in) {
    std::string line;
    int lineno = 0;
    int r = -1, v = -1;
    std::vector<std::vector<int>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        if (r < 0 || v < 0) {
            std::string tok;
            if (!(ss >> tok)) continue;
            int val;
            if (r < 0) {
                if (tok != "r" || !(ss >> val) || val < 1)
                    throw input_error("pattern parse: expected 'r <r>' at line " + std::to_string(lineno));
                r = val;
            } else {
                if (tok != "v" || !(ss >> val) || val < 0)
                    throw input_error("pattern parse: expected 'v <v>' at line " + std::to_string(lineno));
                v = val;
            }
            continue;
        }
        std::vector<int> e;
        int x;
        while (ss >> x) e.push_back(x);
        if (!ss.eof()) throw input_error("pattern parse: bad token at line " + std::to_string(lineno));
        if (!e.empty()) edges.push_back(std::move(e));
    }
    if (r < 0 || v < 0) throw input_error("pattern parse: missing 'r' or 'v' header");
    return pattern(r, v, std::move(edges));
}

pattern pattern::parse(const std::string& text) {
    std::istringstream ss(text);
    return parse(ss);
}

pattern pattern::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open pattern file: " + path);
    return parse(in);
}

std::string pattern::format() const {
    std::string out = "r " + std::to_string(r) + "\nv " + std::to_string(vertices) + "\n";
    for (const auto& e : edges) {
        for (size_t j = 0; j < e.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(e[j]);
        }
        out += '\n';
    }
    return out;
}

namespace {

// Number of distinct vertices in the union of the selected edges.
int subset_vertex_count(const pattern& g, uint32_t mask) {
    std::vector<char> seen(g.vertices, 0);
    int count = 0;
    for (size_t i = 0; i < g.edges.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        for (int v : g.edges[i]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
            }
        }
    }
    return count;
}

void check_density_preconditions(const pattern& g) {
    if (g.edge_count() < 1) throw precondition_error("r_density: pattern has no edges");
    if (static_cast<int>(g.non_isolated().size()) <= g.r)
        throw precondition_error("r_density: need at least r+1 non-isolated vertices");
    if (g.edge_count() > 20) throw capacity_error("r_density: more than 20 edges");
}

}  // namespace

r_density_result r_density(const pattern& g) {
    check_density_preconditions(g);
    const int e = static_cast<int>(g.edge_count());
    r_density_result best;
    bool have = false;
    int best_edges = 0;
    for (uint32_t mask = 1; mask < (1u << e); ++mask) {
        const int vf = subset_vertex_count(g, mask);
        if (vf < g.r + 1) continue;
        const int ef = std::popcount(mask);
        rational val(ef - 1, vf - g.r);
        val.canonicalize();
        const bool better = !have || val > best.value || (val == best.value && ef < best_edges);
        if (better) {
            best.value = val;
            best.witness_edges.clear();
            for (int i = 0; i < e; ++i)
                if (mask & (1u << i)) best.witness_edges.push_back(i);
            best_edges = ef;
            have = true;
        }
    }
    if (!have) throw precondition_error("r_density: no edge subset spans r+1 vertices");
    return best;
}

pattern strictly_balanced_sub(const pattern& g) {
    const r_density_result rd = r_density(g);
    std::vector<std::vector<int>> edges;
    for (int i : rd.witness_edges) edges.push_back(g.edges[i]);
    pattern f(g.r, g.vertices, std::move(edges));

    // A minimum-edge maximizer is strictly balanced; re-verify by enumeration.
    const int ef = static_cast<int>(f.edge_count());
    for (uint32_t mask = 1; mask + 1 < (1u << ef); ++mask) {
        const int vf = subset_vertex_count(f, mask);
        if (vf < f.r + 1) continue;
        rational val(std::popcount(mask) - 1, vf - f.r);
        val.canonicalize();
        if (val >= rd.value)
            throw std::logic_error("strictly_balanced_sub: witness not strictly balanced");
    }
    return f;
}

int64_t binomial(int64_t n, int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    int64_t out = 1;
    for (int64_t i = 1; i <= k; ++i) {
        // Exact at every step: out * (n-k+i) is divisible by i here.
        out = out * (n - k + i) / i;
    }
    return out;
}

int64_t rset_colex_index(const std::vector<int>& s) {
    int64_t idx = 0;
    for (size_t i = 0; i < s.size(); ++i) idx += binomial(s[i], static_cast<int64_t>(i) + 1);
    return idx;
}

std::vector<int> rset_from_colex_index(int64_t index, int r) {
    std::vector<int> s(r);
    for (int i = r; i >= 1; --i) {
        int v = i - 1;
        while (binomial(v + 1, i) <= index) ++v;
        s[i - 1] = v;
        index -= binomial(v, i);
    }
    return s;
}

hypergraph build_building_hypergraph(const pattern& g, int n, int64_t vertex_budget,
                                     double placement_budget) {
    if (n < g.vertices) throw input_error("build_building_hypergraph: n < v(G)");
    const int64_t game_vertices = binomial(n, g.r);
    if (game_vertices > vertex_budget)
        throw capacity_error("build_building_hypergraph: C(n,r) exceeds vertex budget");
    const std::vector<int> support = g.non_isolated();
    const int vp = static_cast<int>(support.size());
    if (vp == 0) throw precondition_error("build_building_hypergraph: pattern has no edges");

    double placements = 1;
    for (int i = 0; i < vp; ++i) placements *= (n - i);
    if (placements > placement_budget)
        throw capacity_error("build_building_hypergraph: placement count exceeds budget");

    // Enumerate injective placements of the non-isolated pattern vertices and
    // deduplicate copies by their sorted edge-index signature.
    std::vector<int> map_to(vp);          // image of support[i]
    std::vector<char> used(n, 0);
    std::vector<int> image(g.vertices, -1);
    std::set<std::vector<int64_t>> signatures;

    auto place = [&](auto&& self, int depth) -> void {
        if (depth == vp) {
            for (int i = 0; i < vp; ++i) image[support[i]] = map_to[i];
            std::vector<int64_t> sig;
            sig.reserve(g.edges.size());
            std::vector<int> rset(g.r);
            for (const auto& e : g.edges) {
                for (int j = 0; j < g.r; ++j) rset[j] = image[e[j]];
                std::sort(rset.begin(), rset.end());
                sig.push_back(rset_colex_index(rset));
            }
            std::sort(sig.begin(), sig.end());
            signatures.insert(std::move(sig));
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            map_to[depth] = v;
            self(self, depth + 1);
            used[v] = 0;
        }
    };
    place(place, 0);

    std::vector<std::vector<int>> edges;
    edges.reserve(signatures.size());
    for (const auto& sig : signatures) {
        std::vector<int> e;
        e.reserve(sig.size());
        for (int64_t idx : sig) e.push_back(static_cast<int>(idx));
        edges.push_back(std::move(e));
    }
    return hypergraph(static_cast<int>(game_vertices), std::move(edges));
}

pattern complete_graph_pattern(int v) { return complete_uniform_pattern(2, v); }

pattern complete_uniform_pattern(int r, int v) {
    if (r < 1 || v < r) throw input_error("complete_uniform_pattern: need v >= r >= 1");
    std::vector<std::vector<int>> edges;
    std::vector<int> c(r);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        edges.push_back(c);
        int j = r - 1;
        while (j >= 0 && c[j] == v - r + j) --j;
        if (j < 0) break;
        ++c[j];
        for (int l = j + 1; l < r; ++l) c[l] = c[l - 1] + 1;
    }
    return pattern(r, v, std::move(edges));
}

}  // namespace mbg
