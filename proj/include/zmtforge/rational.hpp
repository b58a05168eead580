#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace zmtforge {

// Exact rational scalar. mpq_class keeps gcd(|num|, den) = 1 and den >= 1
// after canonicalize(), which is exactly the invariant the engine relies on.
using Rational = mpq_class;

inline Rational rat(long n, long d = 1) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Rational rat_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw EngineError("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }

inline Rational rat_pow(const Rational& q, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rational& q) { return q.get_str(); }

} // namespace zmtforge
