#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "splitting.hpp"

namespace zmtforge {

// ---------------------------------------------------------------------------
// Lying Over, concrete form: for x in sqrt(I*S) (exponent n with
// x^n = sum a_k s_k), the characteristic polynomial of the multiplication
// matrix of x^n on a module generating set has coefficients in I and
// annihilates x^n.
// ---------------------------------------------------------------------------

struct LyingOverData {
    IntegralityCertificate cert;  // element = x^n, monic = char poly, tag over-ideal
    int exponent = 1;             // the n with x^n in I*S
    PolyMatrix mult;              // the multiplication matrix (entries in I*<base>)
};

// monomials (up to total degree `deg`) in arbitrary generator polynomials,
// reduced in the owner
inline std::vector<Polynomial> generator_monomials(const std::vector<Polynomial>& gens, int deg,
                                                   const AlgebraPresentation& owner) {
    std::vector<Polynomial> out{Polynomial::constant(Rational(1), owner.vars())};
    std::vector<Polynomial> layer = out;
    for (int d = 1; d <= deg; ++d) {
        std::vector<Polynomial> next;
        for (auto& m : layer)
            for (auto& g : gens) next.push_back(owner.nf(m * g.embedded(owner.vars())));
        // dedup
        for (auto& n : next) {
            bool seen = false;
            for (auto& o : out)
                if (o == n) { seen = true; break; }
            if (!seen) out.push_back(n);
        }
        layer = std::move(next);
    }
    return out;
}

inline LyingOverData lying_over_cert(const AlgebraElement& x, const IdealPresentation& ideal,
                                     std::vector<AlgebraElement> module_gens,
                                     const std::vector<Polynomial>& support_gens) {
    const AlgebraPresentation& owner = x.owner();
    if (!x.has_trivial_denominator())
        throw ShapeError("lying_over_cert expects a denominator-free element");

    // ensure 1 is among the module generators
    bool has_one = false;
    Polynomial one = Polynomial::constant(Rational(1), owner.vars());
    for (auto& g : module_gens)
        if (owner.is_zero(g.numerator() - one)) { has_one = true; break; }
    if (!has_one) module_gens.insert(module_gens.begin(), AlgebraElement(owner, one));

    // exponent search: x^n in I*S
    IdealPresentation full = ideal.embedded(owner.vars()).plus(owner.relations());
    GroebnerBasis fgb = groebner(full, MonomialOrder::degrevlex());
    Polynomial xp = owner.nf(x.numerator());
    int n = -1;
    Polynomial pw = Polynomial::constant(Rational(1), owner.vars());
    for (int k = 1; k <= caps().exp_cap; ++k) {
        pw = owner.nf(pw * xp);
        if (member(pw, fgb)) { n = k; break; }
    }
    if (n < 0) throw ExponentCapExceeded("lying_over_cert: x not found in sqrt(I*S) within cap");

    // multiplication matrix by degree-bounded linear solves over Q:
    //   x^n * gen_j == sum_k ( sum_c c * i_gen * support-monomial ) * gen_k  (mod relations)
    const GroebnerBasis& gb = owner.gb();
    std::size_t m = module_gens.size();
    Polynomial xn = pw;
    std::optional<PolyMatrix> mtx;
    for (int bound = 1; bound <= 8; bound *= 2) {
        auto monos = generator_monomials(support_gens, bound, owner);
        std::vector<Polynomial> shapes;
        for (auto& ig : ideal.generators)
            for (auto& mo : monos) shapes.push_back(ig.embedded(owner.vars()) * mo);
        if (shapes.size() * m > (std::size_t)caps().solve_cap) break;
        PolyMatrix cand((std::size_t)m, (std::size_t)m, owner.vars());
        bool all_ok = true;
        for (std::size_t j = 0; j < m && all_ok; ++j) {
            Polynomial target = owner.nf(xn * module_gens[j].numerator());
            std::vector<Polynomial> cols;
            cols.reserve(shapes.size() * m);
            for (std::size_t k = 0; k < m; ++k)
                for (auto& s : shapes) cols.push_back(s * module_gens[k].numerator());
            auto sol = solve_combination(target, cols, gb);
            if (!sol) { all_ok = false; break; }
            std::size_t idx = 0;
            for (std::size_t k = 0; k < m; ++k) {
                Polynomial entry = Polynomial::zero(owner.vars());
                for (auto& s : shapes) {
                    if (!is_zero((*sol)[idx])) entry += Polynomial::constant((*sol)[idx], owner.vars()) * s;
                    ++idx;
                }
                cand.at(k, j) = entry;
            }
        }
        if (all_ok) { mtx = cand; break; }
    }
    if (!mtx)
        throw ModuleGensInsufficient("lying_over_cert: multiplication matrix not expressible");

    std::string tv = cert_variable(owner.vars());
    Polynomial p = char_poly(*mtx, tv);
    LyingOverData out{
        IntegralityCertificate{AlgebraElement(owner, xn), p, tv,
                               CoefficientLocation::over_ideal(ideal),
                               "LyingOver(x^" + std::to_string(n) + ")"},
        n, *mtx};
    return out;
}

inline LyingOverData lying_over_cert(const AlgebraElement& x, const IdealPresentation& ideal,
                                     std::vector<AlgebraElement> module_gens,
                                     const std::vector<std::string>& base_vars) {
    std::vector<Polynomial> support;
    for (auto& v : base_vars)
        support.push_back(Polynomial::variable(v, x.owner().vars()));
    return lying_over_cert(x, ideal, std::move(module_gens), support);
}

// certificate for the base element itself: P(T^n)
inline IntegralityCertificate lying_over_base_cert(const LyingOverData& d,
                                                   const AlgebraElement& x) {
    Polynomial composed =
        certops::compose_power_monic(d.cert.monic, d.cert.cert_var, (unsigned long)d.exponent);
    return IntegralityCertificate{x, composed, d.cert.cert_var, d.cert.location,
                                  d.cert.provenance + " composed"};
}

// ---------------------------------------------------------------------------
// Lying Over item 2: 1 in <b_1..b_m>S with S integral over R gives
// 1 = sum b_i g_i(b) mod I*S with g_i over the base; found by a bounded
// linear solve in monomials of the b's.
// ---------------------------------------------------------------------------

struct UnitWitness {
    std::vector<Polynomial> g;  // tag polynomials, g[i] in tags of the b's
    std::vector<std::string> tags;
    Polynomial w;  // = sum b_i g_i(b) evaluated in the owner
};

inline UnitWitness lying_over_unit(const std::vector<AlgebraElement>& bs,
                                   const IdealPresentation& mod_ideal,
                                   const std::vector<std::string>& base_vars) {
    if (bs.empty()) throw WitnessSearchExhausted("lying_over_unit: no generators");
    const AlgebraPresentation& owner = bs[0].owner();
    IdealPresentation full = mod_ideal.embedded(owner.vars()).plus(owner.relations());
    GroebnerBasis gb = groebner(full, MonomialOrder::degrevlex());

    std::vector<std::string> tags;
    for (std::size_t i = 0; i < bs.size(); ++i) tags.push_back("zb" + std::to_string(i));
    auto tag_ctx = make_context(tags);

    Polynomial one = Polynomial::constant(Rational(1), owner.vars());
    for (int bound = 0; bound <= 4; ++bound) {
        // candidate tag monomials of degree <= bound
        auto tag_monos = monomial_basis(tags, bound, tag_ctx);
        // base-variable multipliers of small degree
        for (int cdeg = 0; cdeg <= 2; ++cdeg) {
            auto coef_monos = monomial_basis(base_vars, cdeg, owner.vars());
            std::vector<Polynomial> cand_vals;
            std::vector<std::pair<std::size_t, std::pair<Polynomial, Polynomial>>> cand_info;
            for (std::size_t i = 0; i < bs.size(); ++i) {
                for (auto& tm : tag_monos) {
                    // evaluate the tag monomial at the b's
                    std::map<std::string, Polynomial> bind;
                    for (std::size_t k = 0; k < bs.size(); ++k)
                        bind[tags[k]] = bs[k].numerator();
                    Polynomial tm_val =
                        substitute(tm.embedded(context_union(tag_ctx, owner.vars())), bind)
                            .embedded(owner.vars());
                    for (auto& cm : coef_monos) {
                        cand_vals.push_back(owner.nf(bs[i].numerator() * tm_val * cm));
                        cand_info.push_back({i, {tm, cm}});
                    }
                }
            }
            if (cand_vals.size() > (std::size_t)caps().solve_cap) break;
            auto sol = solve_combination(one, cand_vals, gb);
            if (!sol) continue;
            UnitWitness out;
            out.tags = tags;
            out.g.assign(bs.size(), Polynomial::zero(context_union(tag_ctx, owner.vars())));
            Polynomial w = Polynomial::zero(owner.vars());
            for (std::size_t c = 0; c < cand_vals.size(); ++c) {
                if (is_zero((*sol)[c])) continue;
                auto [i, parts] = cand_info[c];
                out.g[i] += Polynomial::constant((*sol)[c], out.g[i].context()) *
                            parts.first.embedded(out.g[i].context()) *
                            parts.second.embedded(out.g[i].context());
                w += Polynomial::constant((*sol)[c], owner.vars()) * cand_vals[c];
            }
            out.w = owner.nf(w);
            return out;
        }
    }
    throw WitnessSearchExhausted("lying_over_unit: no expression within bounds");
}

// ---------------------------------------------------------------------------
// Kronecker: if monic f divides monic h, each coefficient of f is integral
// over the ideal generated by the non-leading coefficients of h. Realized in
// the splitting algebra of f for deg f <= 4, by a resultant tower above that.
// ---------------------------------------------------------------------------

inline IntegralityCertificate kronecker_cert(const Polynomial& f, const Polynomial& h,
                                             int which, const std::string& var,
                                             const AlgebraPresentation& owner) {
    long k = f.degree_in(var), n = h.degree_in(var);
    if (k < 1 || n < 1) throw ShapeError("kronecker_cert: constant input");
    Polynomial lcf = f.coeff_of(var, (uint32_t)k), lch = h.coeff_of(var, (uint32_t)n);
    if (!(lcf.is_constant_poly() && is_one(lcf.constant_value())))
        throw ShapeError("kronecker_cert: f not monic");
    if (!(lch.is_constant_poly() && is_one(lch.constant_value())))
        throw ShapeError("kronecker_cert: h not monic");
    if (which < 1 || which > k) throw ShapeError("kronecker_cert: coefficient index");
    // divisibility: remainder of h by f must vanish in the owner
    Polynomial rem = pseudo_divide(h, f, var).remainder;
    for (auto& c : rem.coeff_list(var))
        if (!owner.is_zero(c)) throw NotADivisor("kronecker_cert: f does not divide h");

    std::vector<Polynomial> bgens;
    for (long i = 0; i < n; ++i) {
        Polynomial c = h.coeff_of(var, (uint32_t)i);
        if (!c.is_zero_poly()) bgens.push_back(c.embedded(owner.vars()));
    }
    IdealPresentation content(owner.vars(), bgens);
    AlgebraElement target(owner, f.coeff_of(var, (uint32_t)(k - which)).embedded(owner.vars()));
    std::string tv = cert_variable(owner.vars());

    if (k == 1) {
        // f = X + a_1: the coefficient is -root, a root of h(-T) up to sign
        Polynomial ct = certops::scaled_monic(
            h.embedded(context_union(owner.vars(), make_context({var}))), var,
            Polynomial::constant(Rational(-1), owner.vars()));
        std::map<std::string, Polynomial> ren{{var, Polynomial::variable(
            tv, context_union(ct.context(), make_context({tv})))}};
        Polynomial monic = substitute(ct, ren);
        return IntegralityCertificate{target, monic, tv,
                                      CoefficientLocation::over_ideal(content), "Kronecker(deg1)"};
    }

    if (k <= 4) {
        SplittingAlgebra split(owner, f.embedded(context_union(owner.vars(), make_context({var}))),
                               var);
        const AlgebraPresentation& sp = split.presentation();
        // exponent m with a_j^m in <b> * split
        IdealPresentation bfull = content.embedded(sp.vars()).plus(sp.relations());
        GroebnerBasis bgb = groebner(bfull, MonomialOrder::degrevlex());
        Polynomial a = target.numerator().embedded(sp.vars());
        Polynomial pw = Polynomial::constant(Rational(1), sp.vars());
        int m = -1;
        for (int e = 1; e <= caps().exp_cap; ++e) {
            pw = split.normal_form(pw * a);
            if (member(pw, bgb)) { m = e; break; }
        }
        if (m < 0) throw ExponentCapExceeded("kronecker_cert: power not in content ideal");
        PolyMatrix mult = split.mult_matrix(pw);
        Polynomial p = char_poly(mult, tv);
        Polynomial composed = certops::compose_power_monic(p, tv, (unsigned long)m);
        IntegralityCertificate cert{target, composed, tv, CoefficientLocation::over_ideal(content),
                                    "Kronecker(split,m=" + std::to_string(m) + ")"};
        auto mini = minimize_cert(target, cert.location, tv, (int)std::min<long>(2 * n, 12), 1,
                                  "Kronecker(min)");
        if (mini) return *mini;
        return cert;
    }

    // resultant tower: eliminate the roots of the Cauchy presentation one at a
    // time from E - (coefficient as symmetric expression)
    if (k > 6) throw BranchBlowup("kronecker_cert: degree above tower cap");
    SplittingAlgebra split(owner, f.embedded(context_union(owner.vars(), make_context({var}))), var);
    // the coefficient equals the signed elementary symmetric function; express
    // E - a_j via the identity f = prod (X - r_i): a_j = (-1)^j e_j(r)
    Polynomial ej = Polynomial::zero(split.context());
    {
        // elementary symmetric of degree `which`
        std::vector<std::vector<uint32_t>> subsets;
        std::vector<uint32_t> idx((std::size_t)which);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t d) {
            if (d == (std::size_t)which) { subsets.push_back(idx); return; }
            for (std::size_t i = start; i < (std::size_t)k; ++i) {
                idx[d] = (uint32_t)i;
                rec(i + 1, d + 1);
            }
        };
        rec(0, 0);
        for (auto& s : subsets) {
            Polynomial t = Polynomial::constant(Rational(1), split.context());
            for (auto i : s) t = t * split.root(i);
            ej += t;
        }
    }
    int sign = which % 2 == 0 ? 1 : -1;
    Polynomial v = Polynomial::variable(tv, context_union(split.context(), make_context({tv}))) -
                   Polynomial::constant(Rational(sign), split.context()) * ej;
    for (long i = k; i-- > 0;) v = resultant(split.rewrite_rules()[(std::size_t)i], v,
                                             split.root_names()[(std::size_t)i]);
    return IntegralityCertificate{target, v.embedded(context_union(owner.vars(), make_context({tv}))),
                                  tv, CoefficientLocation::over_ideal(content), "Kronecker(tower)"};
}

// ---------------------------------------------------------------------------
// Gauss-Joyal: c(f)c(g) subset sqrt(c(fg)); returns the exponent found for
// (f_i g_j)^k in c(fg).
// ---------------------------------------------------------------------------

struct GaussJoyalWitness {
    bool is_member = false;
    std::optional<int> exponent;
    Polynomial product;  // f_i * g_j
};

inline GaussJoyalWitness gauss_joyal(const Polynomial& f, const Polynomial& g, int i, int j,
                                     const std::string& var, const AlgebraPresentation& owner) {
    Polynomial h = f * g;
    std::vector<Polynomial> content;
    for (auto& c : h.coeff_list(var))
        if (!c.is_zero_poly()) content.push_back(c.embedded(owner.vars()));
    IdealPresentation ch =
        IdealPresentation(owner.vars(), content).plus(owner.relations());
    Polynomial fi = f.coeff_of(var, (uint32_t)i).embedded(owner.vars());
    Polynomial gj = g.coeff_of(var, (uint32_t)j).embedded(owner.vars());
    auto r = radical_member(fi * gj, ch);
    return GaussJoyalWitness{r.is_member, r.exponent, fi * gj};
}

// ---------------------------------------------------------------------------
// Emmanuel sequence: from P(x) = a_n x^n + ... + a_0 = 0, the Horner tails
// u_n = a_n, u_j = u_{j+1} x + a_j end at u_0 = 0; all u_j and u_j x are
// integral over the base with explicit certificates, and <u> = <a> in R[x].
// ---------------------------------------------------------------------------

struct EmmanuelSequence {
    std::vector<Polynomial> input_coeffs;         // a_0..a_n
    AlgebraElement x;
    std::vector<Polynomial> u;                    // u_0..u_n (reduced)
    std::vector<IntegralityCertificate> u_certs;  // for u_j
    std::vector<IntegralityCertificate> ux_certs; // for u_j * x
    bool ideal_equality = false;                  // <u> == <a> checked both ways
};

// basicEmmanuel: if a_n t^n + ... + a_0 = 0 then y = a_n t satisfies
// y^n + a_{n-1} y^{n-1} + a_{n-2} a_n y^{n-2} + ... + a_0 a_n^{n-1} = 0.
inline Polynomial basic_emmanuel_monic(const std::vector<Polynomial>& a, const std::string& tv) {
    std::size_t n = a.size() - 1;
    CtxPtr ctx = make_context({tv});
    for (auto& c : a) ctx = context_union(ctx, c.context());
    std::vector<Polynomial> cs(n + 1, Polynomial::zero(ctx));
    cs[n] = Polynomial::constant(Rational(1), ctx);
    for (std::size_t i = 0; i < n; ++i)
        cs[i] = a[i].embedded(ctx) * a[n].embedded(ctx).pow((unsigned long)(n - 1 - i));
    return poly_from_coeffs(tv, cs);
}

inline EmmanuelSequence emmanuel(const std::vector<Polynomial>& coeffs, const AlgebraElement& x,
                                 const std::vector<std::string>& base_vars) {
    const AlgebraPresentation& owner = x.owner();
    if (coeffs.empty()) throw ShapeError("emmanuel: empty coefficient list");
    std::size_t n = coeffs.size() - 1;
    std::string tv = cert_variable(owner.vars());
    auto loc = CoefficientLocation::over_base_vars(base_vars, owner.vars());

    // precondition: P(x) = 0
    Polynomial val = Polynomial::zero(owner.vars());
    for (std::size_t k = coeffs.size(); k-- > 0;)
        val = owner.nf(val * x.numerator() + coeffs[k].embedded(owner.vars()));
    if (!owner.is_zero(val)) throw PNotAnnihilating("emmanuel: P(x) != 0");

    EmmanuelSequence out;
    out.input_coeffs = coeffs;
    out.x = x;
    out.u.assign(n + 1, Polynomial::zero(owner.vars()));
    out.u_certs.resize(n + 1);
    out.ux_certs.resize(n + 1);

    out.u[n] = owner.nf(coeffs[n].embedded(owner.vars()));
    for (std::size_t j = n; j-- > 0;)
        out.u[j] = owner.nf(out.u[j + 1] * x.numerator() + coeffs[j].embedded(owner.vars()));

    auto tctx = context_union(owner.vars(), make_context({tv}));
    Polynomial T = Polynomial::variable(tv, tctx);

    // u_n = a_n: linear certificate
    out.u_certs[n] = IntegralityCertificate{AlgebraElement(owner, out.u[n]),
                                            T - coeffs[n].embedded(tctx), tv, loc, "Emmanuel(u_n)"};
    // u_n x via basicEmmanuel on the full relation
    {
        Polynomial monic = basic_emmanuel_monic(coeffs, tv);
        out.ux_certs[n] =
            IntegralityCertificate{AlgebraElement(owner, owner.nf(out.u[n] * x.numerator())),
                                   monic, tv, loc, "Emmanuel(basic,u_n x)"};
    }

    for (std::size_t j = n; j-- > 0;) {
        // u_j = u_{j+1} x + a_j: shift the u_{j+1}x certificate
        Polynomial monic =
            certops::shifted_monic(out.ux_certs[j + 1].monic, tv, coeffs[j].embedded(tctx));
        out.u_certs[j] = IntegralityCertificate{AlgebraElement(owner, out.u[j]), monic, tv, loc,
                                                "Emmanuel(shift,u_" + std::to_string(j) + ")"};
        if (j == 0) {
            // u_0 = 0
            out.u_certs[0].monic = T;
            out.u_certs[0].provenance = "Emmanuel(u_0=0)";
            out.ux_certs[0] = IntegralityCertificate{
                AlgebraElement(owner, Polynomial::zero(owner.vars())), T, tv, loc, "Emmanuel(u_0 x)"};
            break;
        }
        Polynomial ujx = owner.nf(out.u[j] * x.numerator());
        if (j == 1) {
            // u_1 x = -a_0 exactly
            out.ux_certs[1] = IntegralityCertificate{AlgebraElement(owner, ujx),
                                                     T + coeffs[0].embedded(tctx), tv, loc,
                                                     "Emmanuel(u_1 x = -a_0)"};
            continue;
        }
        // u_j x^j + a_{j-1} x^{j-1} + ... + a_0 = 0: basicEmmanuel over base[u_j],
        // then transitivity by a resultant against u_j's certificate
        std::string zv = fresh_var(*tctx, "zz");
        auto zctx = context_union(tctx, make_context({zv}));
        std::vector<Polynomial> rel(j + 1, Polynomial::zero(zctx));
        rel[j] = Polynomial::variable(zv, zctx);
        for (std::size_t i = 0; i < j; ++i) rel[i] = coeffs[i].embedded(zctx);
        Polynomial F = basic_emmanuel_monic(rel, tv);  // monic in tv, coefficients in z
        Polynomial G = substitute(out.u_certs[j].monic.embedded(zctx),
                                  {{tv, Polynomial::variable(zv, zctx)}});
        Polynomial monic_x = certops::transitive_monic(F, tv, G, zv);
        IntegralityCertificate c{AlgebraElement(owner, ujx), monic_x, tv, loc,
                                 "Emmanuel(transitive,u_" + std::to_string(j) + " x)"};
        auto mini = minimize_cert(c.element, loc, tv, (int)(2 * (n + 1)), 2, c.provenance + " min");
        out.ux_certs[j] = mini ? *mini : c;
    }

    // ideal equality <u_0..u_n> = <a_0..a_n> in the owner
    {
        std::vector<Polynomial> ug, ag;
        for (auto& u : out.u)
            if (!u.is_zero_poly()) ug.push_back(u);
        for (auto& a : coeffs) {
            Polynomial r = owner.nf(a.embedded(owner.vars()));
            if (!r.is_zero_poly()) ag.push_back(r);
        }
        IdealPresentation U = IdealPresentation(owner.vars(), ug).plus(owner.relations());
        IdealPresentation A = IdealPresentation(owner.vars(), ag).plus(owner.relations());
        out.ideal_equality = ideal_contains(U, IdealPresentation(owner.vars(), ag)) &&
                             ideal_contains(A, IdealPresentation(owner.vars(), ug));
    }
    return out;
}

// ---------------------------------------------------------------------------
// comp lemma: t integral over R[x] and t*p(x) in R[x] yield q with t - q
// integral over R (p monic); for general p with leading coefficient a_k there
// are m and q with a_k^m t - q integral over R.
// ---------------------------------------------------------------------------

struct ShiftCertResult {
    Polynomial q;        // polynomial in the formal variable `pvar` over the base
    int m = 0;           // a_k^m scaling exponent (0 when p monic)
    IntegralityCertificate cert;  // for a_k^m * t - q(x), over the base
};

namespace detail_shift {

// monic case: t*p(x) = r(x) known; q from Euclidean division; the certificate
// comes from Res_X(p(X) - r1(X)*v, G(X,W)) with v ~ 1/w cleared afterwards.
inline ShiftCertResult shift_cert_monic(const AlgebraElement& t, const Polynomial& p,
                                        const std::string& pvar, const Polynomial& r,
                                        const Polynomial& integral_rel, const std::string& tv,
                                        const Polynomial& x_elt,
                                        const std::vector<std::string>& base_vars) {
    const AlgebraPresentation& owner = t.owner();
    auto pd = pseudo_divide(r, p, pvar);  // p monic: r = p*q + r1, power 0
    Polynomial q = pd.quotient, r1 = pd.remainder;

    // w = t - q(x)
    Polynomial qx = substitute(q, {{pvar, x_elt.embedded(context_union(q.context(), x_elt.context()))}})
                        .embedded(owner.vars());
    Polynomial w = owner.nf(t.numerator() - qx);

    // Formal data: A_v(X) = p(X) - r1(X)*v with v ~ 1/w, and
    // G(X, W) = integral_rel(X, W + q(X)), both over the formal variable pvar.
    std::string wv = fresh_var(*context_union(owner.vars(), make_context({tv})), "zw");
    std::string vv = fresh_var(*context_union(owner.vars(), make_context({tv, wv})), "zv");
    auto vctx = context_union(context_union(integral_rel.context(), p.context()),
                              make_context({pvar, wv, vv}));
    Polynomial Av = p.embedded(vctx) - r1.embedded(vctx) * Polynomial::variable(vv, vctx);
    Polynomial Gf = substitute(integral_rel.embedded(vctx),
                               {{tv, Polynomial::variable(wv, vctx) + q.embedded(vctx)}});
    Polynomial H = resultant(Av, Gf, pvar);  // monic in wv, coefficients in base[v]

    // clear v = 1/w: C(T) = sum over terms rho * v^jv * w^iw -> T^{iw + E - jv}
    long E = H.degree_in(vv);
    long dW = H.degree_in(wv);
    auto tctx = context_union(owner.vars(), make_context({tv}));
    Polynomial T = Polynomial::variable(tv, tctx);
    Polynomial C = Polynomial::zero(tctx);
    for (long iw = 0; iw <= dW; ++iw) {
        Polynomial ci = H.coeff_of(wv, (uint32_t)iw);
        for (long jv = 0; jv <= E; ++jv) {
            Polynomial rho = ci.coeff_of(vv, (uint32_t)jv);
            if (rho.is_zero_poly()) continue;
            C += rho.embedded(tctx) * T.pow((unsigned long)(iw + E - jv));
        }
    }
    // C is monic of degree dW + E; if w is a zerodivisor an extra T^e may be
    // needed for annihilation
    ShiftCertResult out;
    out.q = q;
    out.m = 0;
    auto loc = CoefficientLocation::over_base_vars(base_vars, owner.vars());
    for (int e = 0; e <= caps().exp_cap; ++e) {
        Polynomial monic = e == 0 ? C : C * T.pow((unsigned long)e);
        IntegralityCertificate cert{AlgebraElement(owner, w), monic, tv, loc, "comp(monic p)"};
        if (verify_cert(cert).ok) {
            auto mini = minimize_cert(cert.element, loc, tv, (int)std::min<long>(dW, 10), 2,
                                      "comp(min)");
            out.cert = mini ? *mini : cert;
            return out;
        }
    }
    throw ExponentCapExceeded("shift_cert: annihilation exponent not found");
}

} // namespace detail_shift

// t: the element; p: polynomial in `pvar` with base coefficients; x_elt: the
// ring element substituted for pvar; integral_rel: monic in `tv` over
// base[x] with integral_rel(t) = 0.
inline ShiftCertResult shift_cert(const AlgebraElement& t, const Polynomial& p,
                                  const std::string& pvar, const Polynomial& x_elt,
                                  const Polynomial& integral_rel, const std::string& tv,
                                  const std::vector<std::string>& base_vars) {
    const AlgebraPresentation& owner = t.owner();
    long k = p.degree_in(pvar);
    if (k < 0) throw ShapeError("shift_cert: p has no main variable");
    // find r with t*p(x) = r(x) in the subalgebra base[x]
    Polynomial px = substitute(p, {{pvar, x_elt}});
    std::vector<Polynomial> gens;
    for (auto& v : base_vars) gens.push_back(Polynomial::variable(v, owner.vars()));
    gens.push_back(x_elt.embedded(owner.vars()));
    auto wit = subalg_member(owner.nf(t.numerator() * px.embedded(owner.vars())), gens, owner);
    if (!wit.is_member) throw SubalgebraWitnessMissing("shift_cert: t*p(x) not in base[x]");
    // the witness is a tag polynomial; the x-tag is the last generator
    std::map<std::string, Polynomial> bind;
    auto rctx = context_union(p.context(), make_context({pvar}));
    for (std::size_t i = 0; i < base_vars.size(); ++i)
        bind[wit.tags[i]] = Polynomial::variable(base_vars[i], rctx);
    bind[wit.tags.back()] = Polynomial::variable(pvar, rctx);
    Polynomial r = substitute(wit.expression.embedded(context_union(wit.tag_context, rctx)), bind);

    Polynomial lc = p.coeff_of(pvar, (uint32_t)k);
    bool monic = lc.is_constant_poly() && is_one(lc.constant_value());
    if (monic)
        return detail_shift::shift_cert_monic(t, p, pvar, r, integral_rel, tv, x_elt, base_vars);

    // general p: rescale to y = a_k x; P~(Y) = a_k^{k-1} p rewritten in Y
    long ell = 0;
    for (auto& c : integral_rel.coeff_list(tv)) ell = std::max(ell, c.degree_in(pvar));
    // integral_rel's coefficients are in base[x]; measure x-degree via x_elt
    // only when x is a variable; otherwise use the degree in pvar of r forms.
    long degr = r.degree_in(pvar);
    long m = std::max({ell, degr - k + 1, 1L});

    std::string yv = fresh_var(*rctx, "zy");
    auto yctx = context_union(context_union(rctx, integral_rel.context()), make_context({yv}));
    auto rewrite_in_y = [&](const Polynomial& poly, long scale_pow) {
        // multiply poly (in pvar) by lc^{scale_pow} and rewrite c x^j as
        // c lc^{scale_pow - j} y^j; c must absorb lc^{j - scale_pow} when j is
        // larger (only the leading coefficient of p itself needs this)
        Polynomial out = Polynomial::zero(yctx);
        long d = poly.degree_in(pvar);
        for (long j = 0; j <= std::max(d, 0L); ++j) {
            Polynomial c = poly.coeff_of(pvar, (uint32_t)j);
            if (c.is_zero_poly()) continue;
            Polynomial cc = c.embedded(yctx);
            if (scale_pow >= j) {
                cc = cc * lc.embedded(yctx).pow((unsigned long)(scale_pow - j));
            } else {
                for (long e = 0; e < j - scale_pow; ++e) cc = exact_divide(cc, lc.embedded(yctx));
            }
            out += cc * Polynomial::variable(yv, yctx).pow((unsigned long)j);
        }
        return out;
    };
    Polynomial Ptilde = rewrite_in_y(p, k - 1);  // monic in yv
    // t~ = lc^m t; its relation over base[y]: multiply integral_rel by lc^{m*nt}
    long nt = integral_rel.degree_in(tv);
    Polynomial Grel;
    {
        std::vector<Polynomial> cs((std::size_t)nt + 1, Polynomial::zero(yctx));
        cs[(std::size_t)nt] = Polynomial::constant(Rational(1), yctx);
        for (long i = 0; i < nt; ++i)
            cs[(std::size_t)i] = rewrite_in_y(integral_rel.coeff_of(tv, (uint32_t)i), m * (nt - i));
        Grel = poly_from_coeffs(tv, cs);
    }
    // t~ * P~(y) = lc^{m + k - 1} r(x), rewritten in y
    Polynomial rY = rewrite_in_y(r, m + k - 1);
    AlgebraElement ttilde(owner, owner.nf(lc.embedded(owner.vars()).pow((unsigned long)m) *
                                          t.numerator()));
    Polynomial y_elt = owner.nf(lc.embedded(owner.vars()) * x_elt.embedded(owner.vars()));
    ShiftCertResult inner = detail_shift::shift_cert_monic(
        ttilde, Ptilde, yv, rY, Grel, tv, Polynomial(y_elt), base_vars);
    ShiftCertResult out;
    // inner.q is a polynomial in yv; rewrite as polynomial in pvar via y = lc*x
    out.q = substitute(inner.q.embedded(context_union(inner.q.context(), yctx)),
                       {{yv, lc.embedded(yctx) * Polynomial::variable(pvar, yctx)}});
    out.m = (int)m;
    out.cert = inner.cert;
    return out;
}

// ---------------------------------------------------------------------------
// gluing lemma: t, ty integral over R[x] (certs given), s, sx integral over R
// (certs given); with d the highest x-power in the two R[x]-relations and
// N = d+1, w = s^N t satisfies: w, wx, wy integral over R.
// ---------------------------------------------------------------------------

struct GlueResult {
    int N = 1;
    AlgebraElement w;
    IntegralityCertificate w_cert, wx_cert, wy_cert;
};

namespace detail_glue {

// scale a monic-in-tv relation with coefficients in base[x] (x tracked as the
// formal variable xv) into a relation for s^d * elt over base[sigma, chi]
// where sigma ~ s and chi ~ s*x.
inline Polynomial scale_relation(const Polynomial& rel, const std::string& tv,
                                 const std::string& xv, long d, const std::string& sigma,
                                 const std::string& chi) {
    long n = rel.degree_in(tv);
    auto ctx = context_union(rel.context(), make_context({sigma, chi}));
    std::vector<Polynomial> cs((std::size_t)n + 1, Polynomial::zero(ctx));
    cs[(std::size_t)n] = Polynomial::constant(Rational(1), ctx);
    Polynomial sv = Polynomial::variable(sigma, ctx), cv = Polynomial::variable(chi, ctx);
    for (long i = 0; i < n; ++i) {
        Polynomial ci = rel.coeff_of(tv, (uint32_t)i);
        long di = d * (n - i);  // multiply whole relation by sigma^{d n}
        Polynomial acc = Polynomial::zero(ctx);
        long dx = ci.degree_in(xv);
        for (long j = 0; j <= std::max(dx, 0L); ++j) {
            Polynomial cj = ci.coeff_of(xv, (uint32_t)j);
            if (cj.is_zero_poly()) continue;
            if (di < j) throw ShapeError("glue: x-degree exceeds scaling bound");
            acc += cj.embedded(ctx) * sv.pow((unsigned long)(di - j)) * cv.pow((unsigned long)j);
        }
        cs[(std::size_t)i] = acc;
    }
    return poly_from_coeffs(tv, cs);
}

} // namespace detail_glue

// t_rel, ty_rel: monic in tv, coefficients polynomials in base vars and xv
// (the formal name for x). s_cert, sx_cert: certificates over the base.
inline GlueResult glue(const AlgebraElement& t, const AlgebraElement& y, const AlgebraElement& x,
                       const AlgebraElement& s, const Polynomial& t_rel, const Polynomial& ty_rel,
                       const std::string& tv, const std::string& xv,
                       const IntegralityCertificate& s_cert, const IntegralityCertificate& sx_cert,
                       const std::vector<std::string>& base_vars) {
    const AlgebraPresentation& owner = t.owner();
    long d = 0;
    for (auto& c : t_rel.coeff_list(tv)) d = std::max(d, c.degree_in(xv));
    for (auto& c : ty_rel.coeff_list(tv)) d = std::max(d, c.degree_in(xv));
    int N = (int)d + 1;

    std::string sigma = fresh_var(*context_union(owner.vars(), make_context({tv})), "zsg");
    std::string chi = fresh_var(*context_union(owner.vars(), make_context({tv, sigma})), "zch");

    auto iterated = [&](const Polynomial& rel) {
        // relation for s^d * elt over base[sigma, chi], then eliminate chi
        // against sx_cert and sigma against s_cert
        Polynomial scaled = detail_glue::scale_relation(rel, tv, xv, d, sigma, chi);
        Polynomial cchi = substitute(sx_cert.monic.embedded(
                                         context_union(sx_cert.monic.context(), make_context({chi}))),
                                     {{sx_cert.cert_var, Polynomial::variable(chi, make_context({chi}))}});
        Polynomial h1 = scaled.degree_in(chi) > 0 ? resultant(cchi, scaled, chi) : scaled;
        Polynomial csig = substitute(s_cert.monic.embedded(
                                         context_union(s_cert.monic.context(), make_context({sigma}))),
                                     {{s_cert.cert_var, Polynomial::variable(sigma, make_context({sigma}))}});
        Polynomial h2 = h1.degree_in(sigma) > 0 ? resultant(csig, h1, sigma) : h1;
        return h2;  // monic in tv over the base
    };

    Polynomial h_t = iterated(t_rel);    // annihilates s^d t
    Polynomial h_ty = iterated(ty_rel);  // annihilates s^d t y

    auto loc = CoefficientLocation::over_base_vars(base_vars, owner.vars());
    Polynomial sN = owner.nf(s.numerator().pow((unsigned long)N));
    AlgebraElement w(owner, owner.nf(sN * t.numerator()));
    AlgebraElement wx(owner, owner.nf(w.numerator() * x.numerator()));
    AlgebraElement wy(owner, owner.nf(w.numerator() * y.numerator()));

    auto finalize = [&](const AlgebraElement& e, Polynomial monic, const std::string& what) {
        IntegralityCertificate cert{e, monic, tv, loc, "glue(" + what + ")"};
        auto mini = minimize_cert(e, loc, tv, 8, 3, "glue(" + what + " min)");
        return mini ? *mini : cert;
    };

    auto renamed = [&](const IntegralityCertificate& c) {
        if (c.cert_var == tv) return c.monic;
        auto cctx = context_union(c.monic.context(), make_context({tv}));
        return substitute(c.monic.embedded(cctx), {{c.cert_var, Polynomial::variable(tv, cctx)}});
    };
    Polynomial sm = renamed(s_cert), sxm = renamed(sx_cert);

    GlueResult out;
    out.N = N;
    out.w = w;
    // s^N t = s * (s^d t), N = d+1
    out.w_cert = finalize(w, certops::product_monic(sm, h_t, tv), "w");
    // wx = (s^d t) * (s x)
    out.wx_cert = finalize(wx, certops::product_monic(h_t, sxm, tv), "wx");
    // wy = s * (s^d t y)
    out.wy_cert = finalize(wy, certops::product_monic(sm, h_ty, tv), "wy");
    return out;
}

} // namespace zmtforge
