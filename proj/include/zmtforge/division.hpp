#pragma once

#include <tuple>

#include "polynomial.hpp"

namespace zmtforge {

// Exact division in Q[vars]; throws if g does not divide f. Leading terms of
// exact multiples stay divisible under any monomial order, so single-divisor
// division never needs a remainder here.
inline Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero_poly()) throw ShapeError("exact_divide by zero");
    auto ctx = context_union(f.context(), g.context());
    Polynomial r = f.embedded(ctx), d = g.embedded(ctx);
    MonomialOrder ord = MonomialOrder::degrevlex();
    auto [gm, gc] = d.lead(ord);
    Polynomial q(ctx);
    while (!r.is_zero_poly()) {
        auto [rm, rc] = r.lead(ord);
        if (!mono_divides(gm, rm)) throw ShapeError("exact_divide: not divisible");
        Monomial qm = mono_div(rm, gm);
        Rational qc = rc / gc;
        Polynomial t(ctx);
        t.add_term(qm, qc);
        q += t;
        r -= t * d;
    }
    return q;
}

inline bool divides(const Polynomial& g, const Polynomial& f) {
    try {
        exact_divide(f, g);
        return true;
    } catch (const ShapeError&) {
        return false;
    }
}

// Pseudo-division of f by g viewed as univariate in `var`:
//   lc(g)^power * f = quotient * g + remainder,  deg_var(remainder) < deg_var(g)
// For monic g this is Euclidean division and power = 0.
struct PseudoDivision {
    Polynomial quotient;
    Polynomial remainder;
    int power = 0;
};

inline PseudoDivision pseudo_divide(const Polynomial& f, const Polynomial& g,
                                    const std::string& var) {
    auto ctx = context_union(f.context(), g.context());
    ctx = context_union(ctx, make_context({var}));
    Polynomial a = f.embedded(ctx), b = g.embedded(ctx);
    long db = b.degree_in(var);
    if (db < 0 || b.is_zero_poly()) throw ShapeError("pseudo_divide by zero divisor");
    long da = a.degree_in(var);
    Polynomial lc = b.coeff_of(var, (uint32_t)db);
    bool monic = lc.is_constant_poly() && is_one(lc.constant_value());
    if (da < db) return {Polynomial::zero(ctx), a, 0};

    Polynomial x = Polynomial::variable(var, ctx);
    Polynomial q = Polynomial::zero(ctx), r = a;
    int e = (int)(da - db + 1);
    int used = 0;
    while (!r.is_zero_poly() && r.degree_in(var) >= db) {
        long dr = r.degree_in(var);
        Polynomial s = r.coeff_of(var, (uint32_t)dr) * x.pow((unsigned long)(dr - db));
        if (monic) {
            q += s;
            r -= s * b;
        } else {
            q = lc * q + s;
            r = lc * r - s * b;
            ++used;
        }
    }
    if (monic) return {q, r, 0};
    // pad so the stated identity holds with power = deg f - deg g + 1
    while (used < e) {
        q = lc * q;
        r = lc * r;
        ++used;
    }
    return {q, r, e};
}

} // namespace zmtforge
