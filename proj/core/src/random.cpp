#include "mbg/random.hpp"

#include <algorithm>
#include <numeric>

#include "mbg/errors.hpp"

namespace mbg {

uint64_t derive_seed(uint64_t master, uint64_t stream) {
    uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t uniform_below(rng_t& rng, uint64_t n) {
    if (n == 0) throw input_error("uniform_below: n must be positive");
    if (n == 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

double uniform_unit(rng_t& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<int> sample_uniform_subset(int n, int m, rng_t& rng) {
    if (n < 0 || m < 0 || m > n) throw input_error("sample_uniform_subset: need 0 <= M <= n");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < m; ++i) {
        const int j = i + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n - i)));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<int> sample_binomial_subset(int n, double p, rng_t& rng) {
    if (n < 0 || p < 0.0 || p > 1.0) throw input_error("sample_binomial_subset: need 0 <= p <= 1");
    std::vector<int> out;
    if (p == 0.0) return out;
    if (p == 1.0) {
        out.resize(n);
        std::iota(out.begin(), out.end(), 0);
        return out;
    }
    for (int v = 0; v < n; ++v) {
        if (uniform_unit(rng) < p) out.push_back(v);
    }
    return out;
}

}  // namespace mbg
