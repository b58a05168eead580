#pragma once

#include <optional>
#include <string>

#include "algebra.hpp"
#include "linsolve.hpp"
#include "resultant.hpp"

namespace zmtforge {

// Where the non-leading coefficients of a monic integral-dependence relation
// are required to live.
struct CoefficientLocation {
    enum class Kind { OverBase, OverIdeal } kind = Kind::OverBase;
    std::vector<Polynomial> base_gens;  // OverBase: subring generators
    IdealPresentation ideal;            // OverIdeal

    static CoefficientLocation over_base(std::vector<Polynomial> gens) {
        CoefficientLocation l;
        l.kind = Kind::OverBase;
        l.base_gens = std::move(gens);
        return l;
    }
    static CoefficientLocation over_base_vars(const std::vector<std::string>& names,
                                              const CtxPtr& ctx) {
        std::vector<Polynomial> gens;
        for (auto& n : names) gens.push_back(Polynomial::variable(n, ctx));
        return over_base(std::move(gens));
    }
    static CoefficientLocation over_ideal(IdealPresentation i) {
        CoefficientLocation l;
        l.kind = Kind::OverIdeal;
        l.ideal = std::move(i);
        return l;
    }
};

// Monic polynomial annihilating a designated element, with coefficient
// location tags. The ubiquitous "integral over" witness.
struct IntegralityCertificate {
    AlgebraElement element;
    Polynomial monic;      // polynomial in cert_var over the owner's variables
    std::string cert_var;  // usually "T"
    CoefficientLocation location;
    std::string provenance;

    long degree() const { return monic.degree_in(cert_var); }
};

inline std::string cert_variable(const CtxPtr& owner_vars) {
    return fresh_var(*owner_vars, "T");
}

// Horner evaluation of a cert_var-polynomial at a ring element, reducing by
// the owner's relations after every step so sizes stay bounded.
inline Polynomial eval_poly_at(const Polynomial& pT, const std::string& var,
                               const Polynomial& value, const AlgebraPresentation& owner) {
    long d = pT.degree_in(var);
    Polynomial v = owner.nf(value);
    Polynomial acc = Polynomial::zero(owner.vars());
    for (long k = d; k >= 0; --k) {
        acc = owner.nf(acc * v + pT.coeff_of(var, (uint32_t)k).embedded(owner.vars()));
    }
    return acc;
}

// Same, for an element with a denominator: returns the numerator of
// den^deg * p(num/den).
inline Polynomial eval_poly_at_cleared(const Polynomial& pT, const std::string& var,
                                       const AlgebraElement& e) {
    const AlgebraPresentation& owner = e.owner();
    long d = pT.degree_in(var);
    Polynomial num = owner.nf(e.numerator()), den = owner.nf(e.denominator());
    Polynomial acc = Polynomial::zero(owner.vars());
    for (long k = d; k >= 0; --k) {
        Polynomial ck = pT.coeff_of(var, (uint32_t)k).embedded(owner.vars());
        // invariant: acc == sum_{i>k} c_i num^{i-k-1} den^{d-i} before this step
        acc = owner.nf(acc * num + ck * den.pow((unsigned long)(d - k)));
    }
    return acc;
}

struct CertCheck {
    bool ok = false;
    std::string reason;  // NotMonic | Annihilation | CoefficientLocation | ""
};

// Independent re-check of a certificate: monicity, annihilation through the
// ideal engine, and the coefficient-location tag. Trusts nothing from the
// producer.
inline CertCheck verify_cert(const IntegralityCertificate& c) {
    CertCheck out;
    const AlgebraPresentation& owner = c.element.owner();
    long d = c.monic.degree_in(c.cert_var);
    if (d < 1) {
        out.reason = "NotMonic";
        return out;
    }
    Polynomial lead = c.monic.coeff_of(c.cert_var, (uint32_t)d);
    if (!(lead.is_constant_poly() && is_one(lead.constant_value()))) {
        out.reason = "NotMonic";
        return out;
    }
    Polynomial value = eval_poly_at_cleared(c.monic, c.cert_var, c.element);
    if (!owner.is_zero(value)) {
        out.reason = "Annihilation";
        return out;
    }
    for (long k = 0; k < d; ++k) {
        Polynomial ck = c.monic.coeff_of(c.cert_var, (uint32_t)k).embedded(owner.vars());
        if (ck.is_zero_poly()) continue;
        if (c.location.kind == CoefficientLocation::Kind::OverIdeal) {
            if (!owner.in_ideal(ck, c.location.ideal)) {
                out.reason = "CoefficientLocation";
                return out;
            }
        } else {
            // fast path: generators that are plain variables
            bool pure_vars = true;
            std::vector<std::string> names;
            for (auto& g : c.location.base_gens) {
                auto uv = g.used_vars();
                if (g.term_count() == 1 && uv.size() == 1 &&
                    g == Polynomial::variable(uv[0], g.context())) {
                    names.push_back(uv[0]);
                } else {
                    pure_vars = false;
                    break;
                }
            }
            bool located = false;
            if (pure_vars) {
                located = true;
                for (auto& v : ck.used_vars())
                    if (std::find(names.begin(), names.end(), v) == names.end()) {
                        located = false;
                        break;
                    }
            }
            if (!located && !subalg_member(ck, c.location.base_gens, owner).is_member) {
                out.reason = "CoefficientLocation";
                return out;
            }
        }
    }
    out.ok = true;
    return out;
}

// ----- closure operations on certificates -----
// These produce new witnesses by explicit algebra; callers re-verify.

namespace certops {

inline Polynomial shifted_monic(const Polynomial& monic, const std::string& var,
                                const Polynomial& r) {
    // C(T - r) annihilates e + r when C(e) = 0
    auto ctx = context_union(monic.context(), r.context());
    Polynomial t = Polynomial::variable(var, ctx);
    std::map<std::string, Polynomial> bind{{var, t - r.embedded(ctx)}};
    return substitute(monic.embedded(ctx), bind);
}

inline Polynomial scaled_monic(const Polynomial& monic, const std::string& var,
                               const Polynomial& r) {
    // T^d + sum c_i r^{d-i} T^i annihilates r*e
    long d = monic.degree_in(var);
    auto ctx = context_union(monic.context(), r.context());
    std::vector<Polynomial> cs;
    for (long k = 0; k <= d; ++k)
        cs.push_back(monic.coeff_of(var, (uint32_t)k).embedded(ctx) *
                     r.embedded(ctx).pow((unsigned long)(d - k)));
    return poly_from_coeffs(var, cs);
}

// monic in var annihilating e^n given C(e)=0: Res_s(C(s), var - s^n)
inline Polynomial power_monic(const Polynomial& monic, const std::string& var, unsigned long n) {
    auto ctx = monic.context();
    std::string s = fresh_var(*ctx, "zs");
    auto ectx = context_union(ctx, make_context({s}));
    Polynomial sv = Polynomial::variable(s, ectx);
    std::map<std::string, Polynomial> bind{{var, sv}};
    Polynomial cs = substitute(monic.embedded(ectx), bind);
    Polynomial target = Polynomial::variable(var, ectx) - sv.pow(n);
    // Res(monic in s, var - s^n) = prod over roots (var - root^n): monic in var
    return resultant(cs, target, s);
}

// monic annihilating e1 + e2 from certs C1, C2: Res_s(C1(s), C2(T - s))
inline Polynomial sum_monic(const Polynomial& c1, const Polynomial& c2, const std::string& var) {
    auto ctx = context_union(c1.context(), c2.context());
    std::string s = fresh_var(*ctx, "zs");
    auto ectx = context_union(ctx, make_context({s}));
    Polynomial sv = Polynomial::variable(s, ectx);
    Polynomial a = substitute(c1.embedded(ectx), {{var, sv}});
    Polynomial b = substitute(c2.embedded(ectx),
                              {{var, Polynomial::variable(var, ectx) - sv}});
    return resultant(a, b, s);
}

// monic annihilating e1 * e2: Res_s(C1(s), s^{d2} C2(T/s))
inline Polynomial product_monic(const Polynomial& c1, const Polynomial& c2,
                                const std::string& var) {
    auto ctx = context_union(c1.context(), c2.context());
    std::string s = fresh_var(*ctx, "zs");
    auto ectx = context_union(ctx, make_context({s}));
    Polynomial sv = Polynomial::variable(s, ectx);
    Polynomial a = substitute(c1.embedded(ectx), {{var, sv}});
    long d2 = c2.degree_in(var);
    Polynomial t = Polynomial::variable(var, ectx);
    Polynomial h = Polynomial::zero(ectx);
    for (long k = 0; k <= d2; ++k)
        h += c2.coeff_of(var, (uint32_t)k).embedded(ectx) * sv.pow((unsigned long)(d2 - k)) *
             t.pow((unsigned long)k);
    return resultant(a, h, s);
}

// e satisfies F(z, e) = 0 (monic in var, coefficients polynomials in zvar)
// and z satisfies G(z) = 0 (monic in zvar): Res_z(G, F) annihilates e over
// the ring without zvar.
inline Polynomial transitive_monic(const Polynomial& F, const std::string& var,
                                   const Polynomial& G, const std::string& zvar) {
    return resultant(G, F, zvar);
}

// P(e^n) = 0 with P monic  ->  P(T^n) annihilates e
inline Polynomial compose_power_monic(const Polynomial& monic, const std::string& var,
                                      unsigned long n) {
    Polynomial t = Polynomial::variable(var, monic.context());
    return substitute(monic, {{var, t.pow(n)}});
}

} // namespace certops

// Search for a low-degree monic annihilating `e` with coefficients confined
// to the location, by a bounded linear solve over Q. Returns the first hit.
inline std::optional<IntegralityCertificate> minimize_cert(
    const AlgebraElement& e, const CoefficientLocation& loc, const std::string& cert_var,
    int max_degree, int support_degree, const std::string& provenance) {
    if (!e.has_trivial_denominator()) return std::nullopt;
    const AlgebraPresentation& owner = e.owner();
    const GroebnerBasis& gb = owner.gb();

    // allowed coefficient polynomials
    std::vector<Polynomial> support;
    if (loc.kind == CoefficientLocation::Kind::OverBase) {
        // monomials in the generators (only valid when generators are variables)
        std::vector<std::string> names;
        for (auto& g : loc.base_gens) {
            auto uv = g.used_vars();
            if (g.term_count() == 1 && uv.size() == 1) names.push_back(uv[0]);
            else return std::nullopt;
        }
        support = monomial_basis(names, support_degree, owner.vars());
    } else {
        auto monos = monomial_basis(*owner.vars(), support_degree, owner.vars());
        for (auto& g : loc.ideal.generators)
            for (auto& m : monos) support.push_back(g.embedded(owner.vars()) * m);
    }

    Polynomial base = owner.nf(e.numerator());
    std::vector<Polynomial> powers{Polynomial::constant(Rational(1), owner.vars())};
    for (int d = 1; d <= max_degree; ++d) {
        powers.push_back(owner.nf(powers.back() * base));
        std::vector<Polynomial> candidates;
        for (int i = 0; i < d; ++i)
            for (auto& s : support) candidates.push_back(s * powers[(std::size_t)i]);
        if ((int)candidates.size() > caps().solve_cap) return std::nullopt;
        auto sol = solve_combination(-powers[(std::size_t)d], candidates, gb);
        if (!sol) continue;
        // assemble the monic
        auto ctx = context_union(owner.vars(), make_context({cert_var}));
        Polynomial t = Polynomial::variable(cert_var, ctx);
        Polynomial monic = t.pow((unsigned long)d);
        std::size_t idx = 0;
        for (int i = 0; i < d; ++i)
            for (auto& s : support) {
                if (!is_zero((*sol)[idx]))
                    monic += Polynomial::constant((*sol)[idx], ctx) * s.embedded(ctx) *
                             t.pow((unsigned long)i);
                ++idx;
            }
        IntegralityCertificate c{e, monic, cert_var, loc, provenance};
        if (verify_cert(c).ok) return c;
    }
    return std::nullopt;
}

} // namespace zmtforge
