#pragma once

#include "matrix.hpp"
#include "groebner.hpp"

namespace zmtforge {

// Subresultant chain of a monic f (degree d in var) and g (degree bound
// delta), by the determinant-polynomial definition: Sr_j is the determinant of
// the Sylvester-type matrix of X^{delta-j-1}f..f, X^{d-j-1}g..g with the tail
// columns collapsed into one polynomial column. Sr_d = f, Sr_0 is the
// resultant up to that normalization, and each Sr_j carries cofactors with
// Sr_j = U_j f + V_j g exactly.
struct SubresultantChain {
    Polynomial f, g;
    std::string var;
    long d = 0;      // degree of f
    long gdeg = -1;  // actual degree of g
    std::vector<Polynomial> chain;      // indexed by degree j = 0..d
    std::vector<Polynomial> principal;  // s_j = coefficient of var^j in Sr_j
    std::vector<Polynomial> cof_f;      // U_j
    std::vector<Polynomial> cof_g;      // V_j
};

namespace detail_sres {

// rows: X^{df-1} f, ..., f  then X^{dg-1} g, ..., g; columns are coefficients
// of descending powers; the final column holds the row polynomial tails so the
// determinant is the determinant polynomial itself.
inline Polynomial det_poly(const Polynomial& f, const Polynomial& g, const std::string& var,
                           long df_rows, long dg_rows, long ncols, Polynomial* uf = nullptr,
                           Polynomial* vg = nullptr) {
    auto ctx = context_union(f.context(), g.context());
    ctx = context_union(ctx, make_context({var}));
    long rows = df_rows + dg_rows;
    if (rows <= 0) throw ShapeError("det_poly: empty matrix");
    Polynomial x = Polynomial::variable(var, ctx);
    // row polynomial list
    std::vector<Polynomial> rp;
    for (long i = df_rows; i-- > 0;) rp.push_back(f.embedded(ctx) * x.pow((unsigned long)i));
    for (long i = dg_rows; i-- > 0;) rp.push_back(g.embedded(ctx) * x.pow((unsigned long)i));

    PolyMatrix m((std::size_t)rows, (std::size_t)rows, ctx);
    for (long r = 0; r < rows; ++r) {
        for (long c = 0; c + 1 < rows; ++c)
            m.at((std::size_t)r, (std::size_t)c) =
                rp[(std::size_t)r].coeff_of(var, (uint32_t)(ncols - 1 - c));
        // last column: the full row polynomial (equivalent to the tail column:
        // the head part is a combination of the head columns)
        m.at((std::size_t)r, (std::size_t)(rows - 1)) = rp[(std::size_t)r];
    }
    Polynomial det = det_ff(m);
    if (uf || vg) {
        // cofactor expansion along the last column: minor determinants
        Polynomial U = Polynomial::zero(ctx), V = Polynomial::zero(ctx);
        for (long r = 0; r < rows; ++r) {
            PolyMatrix minor((std::size_t)(rows - 1), (std::size_t)(rows - 1), ctx);
            for (long i = 0, mi = 0; i < rows; ++i) {
                if (i == r) continue;
                for (long c = 0; c + 1 < rows; ++c)
                    minor.at((std::size_t)mi, (std::size_t)c) = m.at((std::size_t)i, (std::size_t)c);
                ++mi;
            }
            Polynomial cof = det_ff(minor);
            if ((r + rows - 1) % 2 == 1) cof = -cof;
            if (r < df_rows)
                U += cof * x.pow((unsigned long)(df_rows - 1 - r));
            else
                V += cof * x.pow((unsigned long)(dg_rows - 1 - (r - df_rows)));
        }
        if (uf) *uf = U;
        if (vg) *vg = V;
    }
    return det;
}

} // namespace detail_sres

inline SubresultantChain subresultant_chain(const Polynomial& f, const Polynomial& g,
                                            const std::string& var, bool with_cofactors = true,
                                            long formal_delta = -1) {
    SubresultantChain out;
    out.f = f;
    out.g = g;
    out.var = var;
    out.d = f.degree_in(var);
    if (out.d < 1) throw ShapeError("subresultant_chain: deg f < 1");
    Polynomial lcf = f.coeff_of(var, (uint32_t)out.d);
    if (!(lcf.is_constant_poly() && is_one(lcf.constant_value())))
        throw ShapeError("subresultant_chain: f not monic");
    out.gdeg = g.degree_in(var);
    long delta = formal_delta >= 0 ? formal_delta : std::max(out.gdeg, 0L);
    if (delta < out.gdeg) throw ShapeError("subresultant_chain: delta below deg g");

    auto ctx = context_union(f.context(), g.context());
    ctx = context_union(ctx, make_context({var}));
    Polynomial zero = Polynomial::zero(ctx);
    out.chain.assign((std::size_t)out.d + 1, zero);
    out.principal.assign((std::size_t)out.d + 1, zero);
    out.cof_f.assign((std::size_t)out.d + 1, zero);
    out.cof_g.assign((std::size_t)out.d + 1, zero);

    out.chain[(std::size_t)out.d] = f.embedded(ctx);
    out.principal[(std::size_t)out.d] = Polynomial::constant(Rational(1), ctx);
    out.cof_f[(std::size_t)out.d] = Polynomial::constant(Rational(1), ctx);

    if (g.is_zero_poly() || out.gdeg < 0) return out;  // all lower entries zero

    for (long j = 0; j < out.d; ++j) {
        if (j > out.gdeg) continue;  // zero by convention
        if (j == out.gdeg) {
            // Sr_{deg g} = lc(g)^{d - deg g - 1} g
            Polynomial lcg = g.coeff_of(var, (uint32_t)out.gdeg);
            Polynomial scale = (out.d - out.gdeg - 1) <= 0
                                   ? Polynomial::constant(Rational(1), ctx)
                                   : lcg.embedded(ctx).pow((unsigned long)(out.d - out.gdeg - 1));
            out.chain[(std::size_t)j] = scale * g.embedded(ctx);
            out.cof_g[(std::size_t)j] = scale;
            out.principal[(std::size_t)j] =
                out.chain[(std::size_t)j].coeff_of(var, (uint32_t)j);
            continue;
        }
        long fr = delta - j, gr = out.d - j;
        long ncols = out.d + delta - j;
        Polynomial U, V;
        Polynomial sr = detail_sres::det_poly(f.embedded(ctx), g.embedded(ctx), var, fr, gr,
                                              ncols, with_cofactors ? &U : nullptr,
                                              with_cofactors ? &V : nullptr);
        out.chain[(std::size_t)j] = sr;
        out.principal[(std::size_t)j] = sr.coeff_of(var, (uint32_t)j);
        if (with_cofactors) {
            out.cof_f[(std::size_t)j] = U;
            out.cof_g[(std::size_t)j] = V;
        }
    }
    return out;
}

} // namespace zmtforge
