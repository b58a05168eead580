#pragma once

#include <cstdint>

namespace zmtforge {

// Engine-wide caps. Every unbounded search in the paper ("for N big enough",
// "there exists an exponent") is realized as a monotone search against one of
// these; exceeding a cap raises an explicit error instead of guessing.
struct Caps {
    int degree_cap = 512;  // total degree of any polynomial produced by arith
    int exp_cap = 64;      // radical / witness exponent searches
    int branch_cap = 256;  // dynamical branch count in the crucial lemma
    int solve_cap = 4096;  // columns in a single bounded-degree linear solve
};

inline Caps& caps() {
    static Caps c;
    return c;
}

inline const char* engine_version() { return "0.1.0"; }

} // namespace zmtforge
