#include "mbg/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>

#include "mbg/errors.hpp"
#include "mbg/random.hpp"

namespace mbg {

struct hypergraph::incidence_cache {
    std::vector<uint64_t> offsets;
    std::vector<int64_t> data;
};

namespace {

std::mutex incidence_mutex;

// Lexicographic comparison of two sorted index ranges.
bool lex_less(std::span<const uint32_t> a, std::span<const uint32_t> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

hypergraph::hypergraph(int vertex_count, std::vector<std::vector<int>> edges) {
    if (vertex_count < 0) throw input_error("hypergraph: negative vertex count");
    vertex_count_ = vertex_count;
    for (auto& e : edges) {
        if (e.empty()) throw input_error("hypergraph: empty edge");
        std::sort(e.begin(), e.end());
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= vertex_count)
                throw input_error("hypergraph: vertex index out of range");
            if (i > 0 && e[i] == e[i - 1])
                throw input_error("hypergraph: repeated vertex within an edge");
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    edge_count_ = static_cast<int64_t>(edges.size());
    edge_offsets_.reserve(edges.size() + 1);
    edge_offsets_.push_back(0);
    size_t total = 0;
    for (const auto& e : edges) total += e.size();
    edge_data_.reserve(total);
    for (const auto& e : edges) {
        for (int v : e) edge_data_.push_back(static_cast<uint32_t>(v));
        edge_offsets_.push_back(edge_data_.size());
    }
    finalize_shape();
}

hypergraph hypergraph::from_canonical(int vertex_count, std::vector<uint32_t> edge_data,
                                      std::vector<uint64_t> edge_offsets) {
    if (vertex_count < 0 || edge_offsets.empty() || edge_offsets.front() != 0 ||
        edge_offsets.back() != edge_data.size())
        throw input_error("hypergraph: malformed canonical buffers");
    hypergraph h;
    h.vertex_count_ = vertex_count;
    h.edge_count_ = static_cast<int64_t>(edge_offsets.size()) - 1;
    h.edge_data_ = std::move(edge_data);
    h.edge_offsets_ = std::move(edge_offsets);
    for (int64_t i = 0; i < h.edge_count_; ++i) {
        const auto e = h.edge(i);
        if (e.empty()) throw input_error("hypergraph: empty edge");
        for (size_t j = 0; j < e.size(); ++j) {
            if (e[j] >= static_cast<uint32_t>(vertex_count))
                throw input_error("hypergraph: vertex index out of range");
            if (j > 0 && e[j] <= e[j - 1])
                throw input_error("hypergraph: edge not strictly sorted");
        }
        if (i > 0) {
            const auto prev = h.edge(i - 1);
            if (!lex_less(prev, e)) throw input_error("hypergraph: edges not canonical");
        }
    }
    h.finalize_shape();
    return h;
}

void hypergraph::finalize_shape() {
    max_edge_size_ = 0;
    uniformity_.reset();
    bool uniform = edge_count_ > 0;
    int k = edge_count_ > 0 ? edge_size(0) : 0;
    for (int64_t i = 0; i < edge_count_; ++i) {
        const int s = edge_size(i);
        max_edge_size_ = std::max(max_edge_size_, s);
        if (s != k) uniform = false;
    }
    if (uniform) uniformity_ = k;
}

std::span<const uint32_t> hypergraph::edge(int64_t i) const {
    const uint64_t b = edge_offsets_[i];
    return {edge_data_.data() + b, edge_data_.data() + edge_offsets_[i + 1]};
}

int hypergraph::edge_size(int64_t i) const {
    return static_cast<int>(edge_offsets_[i + 1] - edge_offsets_[i]);
}

std::vector<int> hypergraph::edge_vertices(int64_t i) const {
    const auto e = edge(i);
    return std::vector<int>(e.begin(), e.end());
}

int64_t hypergraph::degree(const std::vector<int>& s) const {
    if (s.empty()) throw input_error("degree: set must be nonempty");
    std::vector<uint32_t> q;
    q.reserve(s.size());
    for (int v : s) {
        if (v < 0 || v >= vertex_count_) throw input_error("degree: vertex index out of range");
        q.push_back(static_cast<uint32_t>(v));
    }
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());

    int64_t count = 0;
    for (int64_t i = 0; i < edge_count_; ++i) {
        const auto e = edge(i);
        if (e.size() < q.size()) continue;
        if (std::includes(e.begin(), e.end(), q.begin(), q.end())) ++count;
    }
    return count;
}

int64_t hypergraph::max_ell_degree(int ell) const {
    if (ell < 1) throw input_error("max_ell_degree: ell must be positive");
    if (ell > vertex_count_) throw input_error("max_ell_degree: ell exceeds vertex count");
    if (edge_count_ == 0 || ell > max_edge_size_) return 0;

    // Number of keys to bucket: sum over edges of C(|e|, ell).
    double total_est = 0;
    for (int64_t i = 0; i < edge_count_; ++i) {
        const int s = edge_size(i);
        if (s < ell) continue;
        double c = 1;
        for (int j = 0; j < ell; ++j) c = c * (s - j) / (j + 1);
        total_est += c;
        if (total_est > 2.5e8) throw capacity_error("max_ell_degree: subset count exceeds cap");
    }

    const int bits = std::bit_width(static_cast<uint32_t>(std::max(vertex_count_ - 1, 1)));
    if (static_cast<int64_t>(ell) * bits <= 64) {
        std::vector<uint64_t> keys;
        keys.reserve(static_cast<size_t>(total_est) + 1);
        std::vector<int> c(ell);
        for (int64_t i = 0; i < edge_count_; ++i) {
            const auto e = edge(i);
            const int s = static_cast<int>(e.size());
            if (s < ell) continue;
            for (int j = 0; j < ell; ++j) c[j] = j;
            while (true) {
                uint64_t key = 0;
                for (int j = 0; j < ell; ++j) key = (key << bits) | e[c[j]];
                keys.push_back(key);
                int j = ell - 1;
                while (j >= 0 && c[j] == s - ell + j) --j;
                if (j < 0) break;
                ++c[j];
                for (int l = j + 1; l < ell; ++l) c[l] = c[l - 1] + 1;
            }
        }
        std::sort(keys.begin(), keys.end());
        int64_t best = 0, run = 0;
        for (size_t i = 0; i < keys.size(); ++i) {
            run = (i > 0 && keys[i] == keys[i - 1]) ? run + 1 : 1;
            best = std::max(best, run);
        }
        return best;
    }

    // Wide-index fallback for ell*bits > 64; such boards are small.
    std::vector<std::vector<uint32_t>> subs;
    std::vector<int> c(ell);
    for (int64_t i = 0; i < edge_count_; ++i) {
        const auto e = edge(i);
        const int s = static_cast<int>(e.size());
        if (s < ell) continue;
        for (int j = 0; j < ell; ++j) c[j] = j;
        while (true) {
            std::vector<uint32_t> sub(ell);
            for (int j = 0; j < ell; ++j) sub[j] = e[c[j]];
            subs.push_back(std::move(sub));
            int j = ell - 1;
            while (j >= 0 && c[j] == s - ell + j) --j;
            if (j < 0) break;
            ++c[j];
            for (int l = j + 1; l < ell; ++l) c[l] = c[l - 1] + 1;
        }
    }
    std::sort(subs.begin(), subs.end());
    int64_t best = 0, run = 0;
    for (size_t i = 0; i < subs.size(); ++i) {
        run = (i > 0 && subs[i] == subs[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

rational hypergraph::density() const {
    if (vertex_count_ < 1) throw input_error("density: empty vertex set");
    rational d(static_cast<long>(edge_count_), static_cast<long>(vertex_count_));
    d.canonicalize();
    return d;
}

f_descriptor hypergraph::maker_f() const {
    if (!uniformity_ || *uniformity_ < 2)
        throw precondition_error("maker_f: hypergraph must be k-uniform with k >= 2");
    if (edge_count_ == 0) throw precondition_error("maker_f: hypergraph has no edges");
    const int k = *uniformity_;
    const rational d = density();

    f_descriptor best;
    for (int ell = 2; ell <= k; ++ell) {
        const int64_t delta = max_ell_degree(ell);
        // Delta_ell >= Delta_k = 1 for a nonempty k-uniform hypergraph.
        rational ratio = d / rational(static_cast<long>(delta));
        ratio.canonicalize();
        bool take = best.ell == 0;
        if (!take) {
            // ratio^(1/(ell-1)) < best.ratio^(1/(best.ell-1))
            // <=> ratio^(best.ell-1) < best.ratio^(ell-1), all positive.
            take = pow_rational(ratio, best.ell - 1) < pow_rational(best.ratio, ell - 1);
        }
        if (take) {
            best.ell = ell;
            best.ratio = ratio;
        }
    }
    best.value = std::pow(best.ratio.get_d(), 1.0 / (best.ell - 1));
    return best;
}

bool hypergraph::contains_edge(const std::vector<int>& t) const {
    std::vector<uint8_t> mark(vertex_count_, 0);
    for (int v : t) {
        if (v < 0 || v >= vertex_count_) throw input_error("contains_edge: vertex index out of range");
        mark[v] = 1;
    }
    for (int64_t i = 0; i < edge_count_; ++i) {
        const auto e = edge(i);
        bool inside = true;
        for (uint32_t v : e) {
            if (!mark[v]) {
                inside = false;
                break;
            }
        }
        if (inside) return true;
    }
    return false;
}

int hypergraph::induced_independence_number(const std::vector<int>& t, int cap) const {
    std::vector<int> tv(t);
    std::sort(tv.begin(), tv.end());
    tv.erase(std::unique(tv.begin(), tv.end()), tv.end());
    if (tv.empty()) throw input_error("independence: set must be nonempty");
    if (static_cast<int>(tv.size()) > cap || cap > 30)
        throw capacity_error("independence: set larger than exact-computation cap");
    for (int v : tv)
        if (v < 0 || v >= vertex_count_) throw input_error("independence: vertex index out of range");

    const int tn = static_cast<int>(tv.size());
    std::vector<int> pos(vertex_count_, -1);
    for (int i = 0; i < tn; ++i) pos[tv[i]] = i;

    // Induced edge masks; keep inclusion-minimal ones only.
    std::vector<uint32_t> masks;
    for (int64_t i = 0; i < edge_count_; ++i) {
        const auto e = edge(i);
        uint32_t m = 0;
        bool inside = true;
        for (uint32_t v : e) {
            if (pos[v] < 0) {
                inside = false;
                break;
            }
            m |= (1u << pos[v]);
        }
        if (inside) masks.push_back(m);
    }
    std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
        return std::popcount(a) < std::popcount(b);
    });
    std::vector<uint32_t> minimal;
    for (uint32_t m : masks) {
        bool dominated = false;
        for (uint32_t q : minimal) {
            if ((q & m) == q) {
                dominated = true;
                break;
            }
        }
        if (!dominated) minimal.push_back(m);
    }
    if (minimal.empty()) return tn;

    // Minimum hitting set of the induced edges; alpha = |t| - tau.
    int best = tn;
    auto dfs = [&](auto&& self, const std::vector<uint32_t>& alive, int used) -> void {
        if (used >= best) return;
        if (alive.empty()) {
            best = used;
            return;
        }
        uint32_t pick = alive[0];
        for (uint32_t m : alive)
            if (std::popcount(m) < std::popcount(pick)) pick = m;
        for (uint32_t bitset = pick; bitset; bitset &= bitset - 1) {
            const uint32_t vbit = bitset & (~bitset + 1);
            std::vector<uint32_t> next;
            next.reserve(alive.size());
            for (uint32_t m : alive)
                if (!(m & vbit)) next.push_back(m);
            self(self, next, used + 1);
        }
    };
    dfs(dfs, minimal, 0);
    return tn - best;
}

bool hypergraph::is_delta_stable(const std::vector<int>& t, double delta, int cap) const {
    if (delta <= 0.0 || delta >= 1.0) throw input_error("is_delta_stable: delta must be in (0,1)");
    if (t.empty()) throw input_error("is_delta_stable: set must be nonempty");
    const int alpha = induced_independence_number(t, cap);
    const double dt = delta * static_cast<double>(t.size());
    int s_min = static_cast<int>(std::ceil(dt - 1e-9));
    if (s_min < 1) s_min = 1;
    // Stable iff no edge-free subset of size >= s_min exists.
    return alpha < s_min;
}

void hypergraph::ensure_incidence() const {
    {
        std::lock_guard<std::mutex> lock(incidence_mutex);
        if (incidence_) return;
    }
    auto cache = std::make_shared<incidence_cache>();
    cache->offsets.assign(static_cast<size_t>(vertex_count_) + 1, 0);
    for (uint32_t v : edge_data_) ++cache->offsets[v + 1];
    for (size_t i = 1; i < cache->offsets.size(); ++i) cache->offsets[i] += cache->offsets[i - 1];
    cache->data.resize(edge_data_.size());
    std::vector<uint64_t> fill(cache->offsets.begin(), cache->offsets.end() - 1);
    for (int64_t i = 0; i < edge_count_; ++i) {
        for (uint32_t v : edge(i)) cache->data[fill[v]++] = i;
    }
    std::lock_guard<std::mutex> lock(incidence_mutex);
    if (!incidence_) incidence_ = std::move(cache);
}

std::span<const int64_t> hypergraph::incident_edges(int vertex) const {
    if (vertex < 0 || vertex >= vertex_count_)
        throw input_error("incident_edges: vertex index out of range");
    ensure_incidence();
    const auto& c = *incidence_;
    return {c.data.data() + c.offsets[vertex], c.data.data() + c.offsets[vertex + 1]};
}

hypergraph hypergraph::parse(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::vector<int>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        if (n < 0) {
            std::string tok;
            if (!(ss >> tok)) continue;  // blank/comment before header
            if (tok != "v" || !(ss >> n) || n < 0)
                throw input_error("hypergraph parse: expected 'v <N>' header at line " +
                                  std::to_string(lineno));
            std::string rest;
            if (ss >> rest) throw input_error("hypergraph parse: trailing tokens in header");
            continue;
        }
        std::vector<int> e;
        int v;
        while (ss >> v) e.push_back(v);
        if (!ss.eof()) throw input_error("hypergraph parse: bad token at line " + std::to_string(lineno));
        if (!e.empty()) edges.push_back(std::move(e));
    }
    if (n < 0) throw input_error("hypergraph parse: missing 'v <N>' header");
    return hypergraph(n, std::move(edges));
}

hypergraph hypergraph::parse(const std::string& text) {
    std::istringstream ss(text);
    return parse(ss);
}

hypergraph hypergraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open hypergraph file: " + path);
    return parse(in);
}

std::string hypergraph::format() const {
    std::string out = "v " + std::to_string(vertex_count_) + "\n";
    for (int64_t i = 0; i < edge_count_; ++i) {
        const auto e = edge(i);
        for (size_t j = 0; j < e.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(e[j]);
        }
        out += '\n';
    }
    return out;
}

void hypergraph::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write hypergraph file: " + path);
    out << format();
}

bool hypergraph::operator==(const hypergraph& other) const {
    return vertex_count_ == other.vertex_count_ && edge_offsets_ == other.edge_offsets_ &&
           edge_data_ == other.edge_data_;
}

parameter_table compute_parameters(const hypergraph& h) {
    parameter_table t;
    t.density = h.density();
    for (int ell = 1; ell <= h.max_edge_size(); ++ell)
        t.max_degrees.push_back(h.max_ell_degree(ell));
    const auto k = h.uniformity();
    if (k && *k >= 2 && h.edge_count() > 0) {
        t.f = h.maker_f();
        // k-uniform and nonempty: Delta_k = 1, and the table is monotone.
        if (t.max_degrees[*k - 1] != 1)
            throw std::logic_error("parameter_table: Delta_k != 1 on a uniform board");
    }
    for (size_t i = 1; i < t.max_degrees.size(); ++i) {
        if (t.max_degrees[i] > t.max_degrees[i - 1])
            throw std::logic_error("parameter_table: Delta_l not monotone");
    }
    return t;
}

hypergraph ap_hypergraph(int k, int64_t n) {
    if (k < 2) throw input_error("ap_hypergraph: k must be at least 2");
    if (n < 0) throw input_error("ap_hypergraph: n must be nonnegative");
    std::vector<uint32_t> data;
    std::vector<uint64_t> offsets;
    offsets.push_back(0);
    // (a, d) enumeration in lexicographic order of the resulting edges.
    for (int64_t a = 1; a + (k - 1) <= n; ++a) {
        for (int64_t d = 1; a + static_cast<int64_t>(k - 1) * d <= n; ++d) {
            for (int j = 0; j < k; ++j) data.push_back(static_cast<uint32_t>(a - 1 + j * d));
            offsets.push_back(data.size());
        }
    }
    return hypergraph::from_canonical(static_cast<int>(n), std::move(data), std::move(offsets));
}

hypergraph random_uniform_hypergraph(int vertex_count, int k, int64_t edges, uint64_t seed) {
    if (k < 1 || k > vertex_count) throw input_error("random_uniform_hypergraph: bad uniformity");
    rng_t rng(seed);
    std::vector<std::vector<int>> es;
    es.reserve(edges);
    for (int64_t i = 0; i < edges; ++i) es.push_back(sample_uniform_subset(vertex_count, k, rng));
    return hypergraph(vertex_count, std::move(es));
}

}  // namespace mbg
