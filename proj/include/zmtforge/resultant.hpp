#pragma once

#include "matrix.hpp"

namespace zmtforge {

// Sylvester matrix of f (degree m) and g (degree n) in `var`: n rows of
// f-coefficient shifts over m rows of g-coefficient shifts, coefficients of
// descending powers of var left to right.
inline PolyMatrix sylvester_matrix(const Polynomial& f, const Polynomial& g,
                                   const std::string& var) {
    auto ctx = context_union(f.context(), g.context());
    ctx = context_union(ctx, make_context({var}));
    Polynomial a = f.embedded(ctx), b = g.embedded(ctx);
    long m = a.degree_in(var), n = b.degree_in(var);
    if (m < 0 || n < 0) throw ShapeError("sylvester: zero polynomial");
    std::size_t size = (std::size_t)(m + n);
    PolyMatrix s(size, size, ctx);
    for (long r = 0; r < n; ++r)
        for (long k = 0; k <= m; ++k)
            s.at((std::size_t)r, (std::size_t)(r + k)) = a.coeff_of(var, (uint32_t)(m - k));
    for (long r = 0; r < m; ++r)
        for (long k = 0; k <= n; ++k)
            s.at((std::size_t)(n + r), (std::size_t)(r + k)) = b.coeff_of(var, (uint32_t)(n - k));
    return s;
}

// Res_var(f, g) as the Sylvester determinant. Vanishes iff f, g share a factor
// over the fraction field of a domain.
inline Polynomial resultant(const Polynomial& f, const Polynomial& g, const std::string& var) {
    long m = f.degree_in(var), n = g.degree_in(var);
    if (f.is_zero_poly() || g.is_zero_poly())
        throw ShapeError("resultant of zero polynomial");
    if (m <= 0 && n <= 0)
        throw DegenerateResultant("both arguments constant in " + var);
    if (m <= 0) return f.pow((unsigned long)n);
    if (n <= 0) return g.pow((unsigned long)m);
    return det_ff(sylvester_matrix(f, g, var));
}

} // namespace zmtforge
