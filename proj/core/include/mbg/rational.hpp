#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace mbg {

using big_int = mpz_class;
using rational = mpq_class;

using int_matrix = std::vector<std::vector<big_int>>;
using int_vector = std::vector<big_int>;

inline big_int pow_big(const big_int& base, unsigned long exp) {
    big_int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline rational pow_rational(const rational& base, unsigned long exp) {
    rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), exp);
    out.canonicalize();
    return out;
}

inline rational make_rational(long num, long den) {
    rational r(num, den);
    r.canonicalize();
    return r;
}

// "p/q" or plain "p" for integers.
inline std::string to_string(const rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace mbg
