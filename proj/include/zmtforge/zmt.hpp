#pragma once

#include <map>
#include <string>
#include <vector>

#include "crucial.hpp"

namespace zmtforge {

// ---------------------------------------------------------------------------
// Problem and result shapes
// ---------------------------------------------------------------------------

struct ZmtProblem {
    AlgebraPresentation B;                    // unlocalized presentation
    std::vector<std::string> base_vars;       // the subring A
    std::vector<std::string> gen_vars;        // x_1..x_n
    IdealPresentation I;                      // ideal of A
    std::vector<Polynomial> residual_monics;  // p_j monic in pvar, base coefficients
    std::string pvar = "X";
};

struct ZmtResult {
    AlgebraElement s;
    IntegralityCertificate s_cert;
    std::vector<IntegralityCertificate> sx_certs;  // for s*x_j, in gen order
    bool s_in_one_plus_IB = false;
};

// verify the hypothesis shape: each p_j monic with p_j(x_j) in I*B
inline void verify_zmt_problem(const ZmtProblem& p) {
    if (p.gen_vars.size() != p.residual_monics.size())
        throw ShapeError("zmt: one residual monic per generator required");
    IdealPresentation full = p.I.embedded(p.B.vars()).plus(p.B.relations());
    GroebnerBasis gb = groebner(full, MonomialOrder::degrevlex());
    for (std::size_t j = 0; j < p.gen_vars.size(); ++j) {
        const Polynomial& pj = p.residual_monics[j];
        long d = pj.degree_in(p.pvar);
        if (d < 1) throw ShapeError("zmt: residual monic must have degree >= 1");
        Polynomial lc = pj.coeff_of(p.pvar, (uint32_t)d);
        if (!(lc.is_constant_poly() && is_one(lc.constant_value())))
            throw ShapeError("zmt: residual polynomial not monic");
        Polynomial at = substitute(
            pj.embedded(context_union(pj.context(), p.B.vars())),
            {{p.pvar, Polynomial::variable(p.gen_vars[j], p.B.vars())}});
        if (!member(p.B.nf(at), gb))
            throw ShapeError("zmt: residual monic p_" + std::to_string(j) +
                             " does not land in I*B");
    }
}

// ---------------------------------------------------------------------------
// Subalgebra presentation by elimination: Q[keep ∪ new names]/induced ideal.
// ---------------------------------------------------------------------------

struct SubalgebraPresentation {
    AlgebraPresentation algebra;
    std::map<std::string, Polynomial> images;  // new name -> element of the big ring
};

inline SubalgebraPresentation present_subalgebra(
    const AlgebraPresentation& big, const std::vector<std::string>& keep_vars,
    const std::vector<std::pair<std::string, Polynomial>>& new_elts) {
    std::vector<std::string> names = *big.vars();
    std::vector<std::string> small;
    for (auto& v : keep_vars) small.push_back(v);
    std::vector<Polynomial> rel = big.relations().generators;
    SubalgebraPresentation out;
    CtxPtr work = big.vars();
    for (auto& [name, val] : new_elts) {
        std::string nm = fresh_var(*make_context(names), name);
        names.push_back(nm);
        small.push_back(nm);
        work = make_context(names);
        rel.push_back(Polynomial::variable(nm, work) - val.embedded(work));
        out.images[nm] = val;
    }
    std::vector<std::string> drop;
    for (auto& v : *big.vars())
        if (std::find(small.begin(), small.end(), v) == small.end()) drop.push_back(v);
    IdealPresentation full(make_context(names), std::move(rel));
    IdealPresentation small_rel = eliminate(full, drop);
    auto sctx = make_context(small);
    out.algebra = AlgebraPresentation(sctx, small_rel.embedded(sctx));
    return out;
}

// ---------------------------------------------------------------------------
// Certificates for elements given by polynomial expressions in certified
// elements: fold sums and products through the resultant closure.
// ---------------------------------------------------------------------------

inline IntegralityCertificate cert_for_constant(const AlgebraPresentation& owner,
                                                const Polynomial& c, const std::string& tv,
                                                const CoefficientLocation& loc) {
    auto tctx = context_union(owner.vars(), make_context({tv}));
    return IntegralityCertificate{AlgebraElement(owner, c.embedded(owner.vars())),
                                  Polynomial::variable(tv, tctx) - c.embedded(tctx), tv, loc,
                                  "linear"};
}

// best-effort small certificate: bounded search first, else the supplied fallback
inline IntegralityCertificate tighten_cert(const IntegralityCertificate& fallback,
                                           int deg_bound = 8, int support = 3) {
    auto mini = minimize_cert(fallback.element, fallback.location, fallback.cert_var, deg_bound,
                              support, fallback.provenance + " min");
    return mini ? *mini : fallback;
}

// ---------------------------------------------------------------------------
// Base case n = 1 (Proposition for one generator): from a monic f with
// f(g) in I*B, produce P with P(g) = 0 and unit content mod I*B, run the
// Emmanuel sequence, and assemble s = sum u_i g_i(u) in 1 + I*B with s, s*g
// integral over the designated base.
// ---------------------------------------------------------------------------

struct ZmtBaseResult {
    AlgebraElement s;
    IntegralityCertificate s_cert;   // over base'_vars
    IntegralityCertificate sg_cert;  // for s*g, over base'_vars
    std::vector<Polynomial> P_coeffs;
    EmmanuelSequence emmanuel_run;
};

inline ZmtBaseResult zmt_base(const AlgebraPresentation& B,
                              const std::vector<std::string>& baseprime_vars,
                              const std::string& gen, const IdealPresentation& I,
                              const Polynomial& residual_monic, const std::string& pvar) {
    IdealPresentation full = I.embedded(B.vars()).plus(B.relations());
    GroebnerBasis fgb = groebner(full, MonomialOrder::degrevlex());
    Polynomial g = Polynomial::variable(gen, B.vars());

    // find P over base'[gen] with P(g) = 0 and 1 in <coeffs> + I*B
    std::vector<Polynomial> candidates;
    for (auto& r : B.relations().generators) {
        bool ok = true;
        for (auto& v : r.used_vars()) {
            if (v == gen) continue;
            if (std::find(baseprime_vars.begin(), baseprime_vars.end(), v) ==
                baseprime_vars.end()) { ok = false; break; }
        }
        if (ok && r.degree_in(gen) > 0) candidates.push_back(r);
    }
    {
        // elimination route for presentations whose relations mix generators
        std::vector<std::string> drop;
        for (auto& v : *B.vars()) {
            if (v == gen) continue;
            if (std::find(baseprime_vars.begin(), baseprime_vars.end(), v) ==
                baseprime_vars.end()) drop.push_back(v);
        }
        if (!drop.empty()) {
            auto elim = eliminate(B.relations(), drop);
            for (auto& r : elim.generators)
                if (r.degree_in(gen) > 0) candidates.push_back(r.embedded(B.vars()));
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Polynomial& a, const Polynomial& b) {
        return a.degree_in(gen) < b.degree_in(gen);
    });

    std::optional<std::vector<Polynomial>> coeffs;
    for (auto& cand : candidates) {
        auto cs = cand.coeff_list(gen);
        std::vector<Polynomial> gens_chk;
        for (auto& c : cs)
            if (!c.is_zero_poly()) gens_chk.push_back(c);
        IdealPresentation content =
            IdealPresentation(B.vars(), gens_chk).plus(full);
        if (groebner(content, MonomialOrder::degrevlex()).is_trivial()) {
            coeffs = cs;
            break;
        }
    }
    if (!coeffs) {
        // fallback: Lying Over route on f(g): compose the characteristic
        // polynomial with f, which is monic, hence unit content
        std::vector<AlgebraElement> mg;
        Polynomial acc = Polynomial::constant(Rational(1), B.vars());
        long fd = residual_monic.degree_in(pvar);
        for (long i = 0; i < std::max(fd, 1L); ++i) {
            mg.push_back(AlgebraElement(B, acc));
            acc = B.nf(acc * g);
        }
        Polynomial fg = B.nf(substitute(
            residual_monic.embedded(context_union(residual_monic.context(), B.vars())),
            {{pvar, g}}));
        auto lo = lying_over_cert(AlgebraElement(B, fg), I, mg, baseprime_vars);
        // P(X) = monic(f(X)^e) as a polynomial in X
        auto xctx = context_union(B.vars(), make_context({pvar}));
        Polynomial fX = residual_monic.embedded(xctx).pow((unsigned long)lo.exponent);
        Polynomial PX = substitute(lo.cert.monic.embedded(context_union(lo.cert.monic.context(), xctx)),
                                   {{lo.cert.cert_var, fX}});
        coeffs = PX.coeff_list(pvar);
    }

    // Emmanuel on P, then the unit witness w = sum u_i g_i(u) = 1 mod I*B
    auto es = emmanuel(*coeffs, AlgebraElement(B, g), baseprime_vars);
    std::vector<AlgebraElement> us;
    for (auto& u : es.u)
        if (!u.is_zero_poly()) us.push_back(AlgebraElement(B, u));
    auto unit = lying_over_unit(us, I, baseprime_vars);
    Polynomial s = B.nf(unit.w);
    if (!member(B.nf(s - Polynomial::constant(Rational(1), B.vars())), fgb))
        throw WitnessSearchExhausted("zmt_base: s not in 1 + I*B");

    std::string tv = cert_variable(B.vars());
    auto loc = CoefficientLocation::over_base_vars(baseprime_vars, B.vars());
    AlgebraElement se(B, s), sge(B, B.nf(s * g));

    auto assemble = [&](const AlgebraElement& e, const char* what) {
        auto mini = minimize_cert(e, loc, tv, 8, 4, std::string("zmt_base ") + what);
        if (mini) return *mini;
        // compose through the expression in the certified u's (and u*g's)
        throw WitnessSearchExhausted(std::string("zmt_base: no certificate for ") + what);
    };
    ZmtBaseResult out{se, assemble(se, "s"), assemble(sge, "s*g"), *coeffs, std::move(es)};
    return out;
}

// ---------------------------------------------------------------------------
// corint2 tail: from a certificate for b*y with y = p(x) (p monic of degree
// mp over the base), an integral dependence for b*x over base[b], then over
// the base by a resultant against b's certificate.
// ---------------------------------------------------------------------------

inline IntegralityCertificate cert_bx_from_by(const IntegralityCertificate& by_cert,
                                              const IntegralityCertificate& b_cert,
                                              const Polynomial& p, const std::string& pvar,
                                              const AlgebraElement& bx,
                                              const CoefficientLocation& loc) {
    const std::string& tv = by_cert.cert_var;
    long d = by_cert.monic.degree_in(tv);
    long mp = p.degree_in(pvar);
    // rho(z, B) = B^{mp-1} p(x) rewritten with z = B x:  z^mp + sum p_i B^{mp-1-i} z^i
    std::string Bv = fresh_var(*context_union(by_cert.monic.context(), p.context()), "zB");
    auto ctx = context_union(context_union(by_cert.monic.context(), p.context()),
                             make_context({Bv, tv}));
    Polynomial B = Polynomial::variable(Bv, ctx), Z = Polynomial::variable(tv, ctx);
    Polynomial rho = Polynomial::zero(ctx);
    for (long i = 0; i <= mp; ++i) {
        Polynomial pi = p.coeff_of(pvar, (uint32_t)i).embedded(ctx);
        if (pi.is_zero_poly()) continue;
        rho += pi * B.pow((unsigned long)(mp - 1 >= i ? mp - 1 - i : 0)) *
               Z.pow((unsigned long)i);
    }
    // relation: rho^d + sum c_i B^{(mp-1)(d-i)} rho^i = 0, monic of degree mp*d in z
    Polynomial rel = rho.pow((unsigned long)d);
    for (long i = 0; i < d; ++i) {
        Polynomial ci = by_cert.monic.coeff_of(tv, (uint32_t)i).embedded(ctx);
        if (ci.is_zero_poly()) continue;
        rel += ci * B.pow((unsigned long)((mp - 1) * (d - i))) * rho.pow((unsigned long)i);
    }
    // eliminate B against b's certificate
    Polynomial bc = b_cert.monic;
    auto bctx = context_union(ctx, bc.context());
    Polynomial bren = substitute(bc.embedded(bctx), {{b_cert.cert_var,
                                                      Polynomial::variable(Bv, bctx)}});
    Polynomial monic = rel.degree_in(Bv) > 0 ? resultant(bren, rel.embedded(bctx), Bv)
                                             : rel.embedded(bctx);
    return IntegralityCertificate{bx, monic, tv, loc, "corint2(bx)"};
}

// ---------------------------------------------------------------------------
// Induction step (int2 + corint2): B integral over A[x], monic p with
// t*p(x) in sqrt(I*B). Produces b_0..b_m integral over A together with
// b_j*x, and a witness that <b> meets t^N + I*B.
// ---------------------------------------------------------------------------

struct ZmtStepResult {
    AlgebraPresentation owner;                     // extended presentation used
    std::vector<Polynomial> b;                     // the b-family (owner polys)
    std::vector<IntegralityCertificate> b_certs;   // over the base
    std::vector<IntegralityCertificate> bx_certs;  // for b_j * x
    int t_power = 0;                               // t^k - iota in <b>*B
    Polynomial iota;                               // in I*B
    CrucialWitness crucial;
    std::vector<std::pair<std::string, Polynomial>> intro;  // adjoined variables
};

// owner: presentation containing t as the variable `tname`; x as variable
// `xname`; t_rel: monic in tv with coefficients in (base, xname).
inline ZmtStepResult zmt_step(const AlgebraPresentation& owner,
                              const std::vector<std::string>& base_vars,
                              const std::string& xname, const std::string& tname,
                              const Polynomial& t_rel, const std::string& tv,
                              const IdealPresentation& I, const Polynomial& p,
                              const std::string& pvar) {
    ZmtStepResult out;
    Polynomial x = Polynomial::variable(xname, owner.vars());
    Polynomial t = Polynomial::variable(tname, owner.vars());
    long mp = p.degree_in(pvar);
    bool p_is_x = (mp == 1) && p == Polynomial::variable(pvar, p.context());

    // working presentation: adjoin y = p(x) as a variable when p != X
    AlgebraPresentation W = owner;
    std::string yname = xname;
    Polynomial t_rel_y = t_rel;
    if (!p_is_x) {
        std::vector<std::string> names = *owner.vars();
        yname = fresh_var(*owner.vars(), "zy");
        names.push_back(yname);
        auto ectx = make_context(names);
        Polynomial px = substitute(p.embedded(context_union(p.context(), ectx)),
                                   {{pvar, x.embedded(ectx)}});
        auto rel = owner.relations().embedded(ectx).plus(
            {Polynomial::variable(yname, ectx) - px});
        W = AlgebraPresentation(ectx, rel);
        out.intro.push_back({yname, px.embedded(ectx)});
        // t's relation over base[y]: eliminate x against p(x) - y
        std::string chi = fresh_var(*ectx, "zchi");
        auto fctx = context_union(context_union(t_rel.context(), ectx),
                                  context_union(p.context(), make_context({chi})));
        Polynomial trel_chi = substitute(t_rel.embedded(fctx),
                                         {{xname, Polynomial::variable(chi, fctx)}});
        Polynomial pchi = substitute(p.embedded(fctx), {{pvar, Polynomial::variable(chi, fctx)}});
        Polynomial elim = pchi - Polynomial::variable(yname, fctx);
        t_rel_y = trel_chi.degree_in(chi) > 0 ? resultant(elim, trel_chi, chi) : trel_chi;
    }
    Polynomial y = Polynomial::variable(yname, W.vars());
    AlgebraElement ye(W, W.nf(y)), te(W, W.nf(t.embedded(W.vars())));

    // crucial lemma with R0 = base variables
    std::vector<Polynomial> r0;
    for (auto& v : base_vars) r0.push_back(Polynomial::variable(v, W.vars()));
    out.crucial = crucial_lemma(ye, te, t_rel_y.embedded(context_union(W.vars(),
                                                                       make_context({tv}))),
                                tv, I.embedded(W.vars()), r0);

    // adjoin variables for discovered closure elements
    std::vector<std::string> wnames;
    AlgebraPresentation E = W;
    {
        std::vector<std::string> names = *W.vars();
        std::vector<Polynomial> extra;
        for (std::size_t k = 0; k < out.crucial.discovered.size(); ++k) {
            std::string wn = fresh_var(*make_context(names), "zcl" + std::to_string(k));
            wnames.push_back(wn);
            names.push_back(wn);
        }
        auto ectx = make_context(names);
        std::vector<Polynomial> rel;
        for (auto& g : W.relations().generators) rel.push_back(g.embedded(ectx));
        for (std::size_t k = 0; k < wnames.size(); ++k) {
            Polynomial img = out.crucial.discovered[k].element.numerator().embedded(ectx);
            rel.push_back(Polynomial::variable(wnames[k], ectx) - img);
            out.intro.push_back({wnames[k], img});
        }
        E = AlgebraPresentation(ectx, IdealPresentation(ectx, rel));
    }
    out.owner = E;
    IdealPresentation IE = I.embedded(E.vars()).plus(E.relations());
    GroebnerBasis IE_gb = groebner(IE, MonomialOrder::degrevlex());

    std::vector<std::string> rw_vars = base_vars;  // base plus closure variables
    for (auto& w : wnames) rw_vars.push_back(w);
    std::vector<Polynomial> rw_gens;
    for (auto& v : rw_vars) rw_gens.push_back(Polynomial::variable(v, E.vars()));
    std::vector<Polynomial> rwy_gens = rw_gens;
    rwy_gens.push_back(Polynomial::variable(yname, E.vars()));

    // a*t in R0'[y]: formal expression p~(y)
    Polynomial tE = Polynomial::variable(tname, E.vars());
    Polynomial yE = Polynomial::variable(yname, E.vars());
    Polynomial a = out.crucial.a.embedded(E.vars());
    Polynomial at = E.nf(a * tE);
    auto wit = subalg_member(at, rwy_gens, E);
    if (!wit.is_member)
        throw SubalgebraWitnessMissing("zmt_step: a*t has no expression in R0'[y]");
    Polynomial ptilde;
    {
        std::map<std::string, Polynomial> bind;
        for (std::size_t i = 0; i < rwy_gens.size(); ++i)
            bind[wit.tags[i]] = rwy_gens[i];
        ptilde = substitute(wit.expression.embedded(context_union(wit.tag_context, E.vars())), bind);
    }

    // Lying Over for a*t*y over I on the module basis 1, t, ..., t^{n-1}
    long nt = t_rel_y.degree_in(tv);
    std::vector<AlgebraElement> mg;
    {
        Polynomial acc = Polynomial::constant(Rational(1), E.vars());
        for (long i = 0; i < std::max(nt, 1L); ++i) {
            mg.push_back(AlgebraElement(E, acc));
            acc = E.nf(acc * tE);
        }
    }
    Polynomial aty = E.nf(at * yE);
    Polynomial Qt;  // the polynomial Q~ with Q~(y) = 0, formal in yname
    if (aty.is_zero_poly()) {
        Qt = yE;  // a*t*y = 0: take Q~ = Y itself
    } else {
        auto lo = lying_over_cert(AlgebraElement(E, aty), I.embedded(E.vars()), mg, rwy_gens);
        // Q~(Y) = M((p~(Y) * Y)^e); coefficients of M live in I*span(base, W, y)
        Polynomial arg = (ptilde * yE).pow((unsigned long)lo.exponent);
        Qt = substitute(lo.cert.monic.embedded(context_union(lo.cert.monic.context(), E.vars())),
                        {{lo.cert.cert_var, arg}});
    }

    // Emmanuel on Q~ along y
    auto coeffs = Qt.coeff_list(yname);
    auto es = emmanuel(coeffs, AlgebraElement(E, yE), rw_vars);

    // certificates over the base: eliminate closure variables by resultants
    auto loc_base = CoefficientLocation::over_base_vars(base_vars, E.vars());
    auto descend = [&](IntegralityCertificate c, const AlgebraElement& elt) {
        Polynomial monic = c.monic;
        for (std::size_t k = 0; k < wnames.size(); ++k) {
            if (monic.degree_in(wnames[k]) <= 0) continue;
            Polynomial wc = out.crucial.discovered[k].monic;
            auto wctx = context_union(monic.context(), wc.context());
            Polynomial wren = substitute(wc.embedded(wctx),
                                         {{out.crucial.discovered[k].cert_var,
                                           Polynomial::variable(wnames[k], wctx)}});
            monic = resultant(wren, monic.embedded(wctx), wnames[k]);
        }
        IntegralityCertificate cert{elt, monic, tv, loc_base, c.provenance + " over A"};
        return tighten_cert(cert);
    };

    for (std::size_t j = 0; j < es.u.size(); ++j) {
        Polynomial bj = es.u[j];
        out.b.push_back(bj);
        AlgebraElement be(E, bj);
        out.b_certs.push_back(descend(es.u_certs[j], be));
        AlgebraElement bye(E, E.nf(bj * yE));
        IntegralityCertificate by_over_A = descend(es.ux_certs[j], bye);
        if (p_is_x) {
            out.bx_certs.push_back(by_over_A);
        } else {
            AlgebraElement bxe(E, E.nf(bj * x.embedded(E.vars())));
            auto raw = cert_bx_from_by(by_over_A, out.b_certs.back(), p, pvar, bxe, loc_base);
            out.bx_certs.push_back(tighten_cert(raw));
        }
    }

    // <b> meets t^N + I*B
    {
        std::vector<Polynomial> bg;
        for (auto& b : out.b)
            if (!b.is_zero_poly()) bg.push_back(b);
        IdealPresentation mix = IdealPresentation(E.vars(), bg).plus(I.embedded(E.vars()))
                                    .plus(E.relations());
        GroebnerBasis mgb = groebner(mix, MonomialOrder::degrevlex());
        Polynomial tk = Polynomial::constant(Rational(1), E.vars());
        bool found = false;
        for (int k = 0; k <= caps().exp_cap; ++k) {
            if (member(tk, mgb)) {
                // split the trace into the <b> part and the I part
                IdealPresentation split = IdealPresentation(E.vars(), bg)
                                              .plus(I.embedded(E.vars()))
                                              .plus(E.relations());
                auto tr = member_with_cofactors(tk, split);
                Polynomial iota = Polynomial::zero(E.vars());
                for (std::size_t c = bg.size(); c < bg.size() + I.generators.size(); ++c)
                    iota += tr.cofactors[c] * I.generators[c - bg.size()].embedded(E.vars());
                out.t_power = k;
                out.iota = E.nf(iota);
                found = true;
                break;
            }
            tk = E.nf(tk * tE);
        }
        if (!found)
            throw MembershipSearchExhausted("zmt_step: <b> does not meet t^N + I*B within cap");
    }
    return out;
}

// ---------------------------------------------------------------------------
// multivariate gluing: t, t*ylast integral over A[x_1..x_k] (relations with
// coefficients in those variables), s and each s*x_j integral over A. Then
// u = s^{d+1} t with u, u*x_j, u*ylast all integral over A.
// ---------------------------------------------------------------------------

struct GlueMultiResult {
    int N = 1;
    Polynomial u;  // owner poly
    IntegralityCertificate u_cert, uy_cert;          // u and u*ylast
    std::vector<IntegralityCertificate> ux_certs;    // u*x_j per x name
};

inline GlueMultiResult glue_multi(const AlgebraPresentation& owner, const Polynomial& t_poly,
                                  const Polynomial& ylast, const std::vector<std::string>& xnames,
                                  const Polynomial& s_poly, const Polynomial& t_rel,
                                  const Polynomial& ty_rel, const std::string& tv,
                                  const IntegralityCertificate& s_cert,
                                  const std::vector<IntegralityCertificate>& sx_certs,
                                  const std::vector<std::string>& base_vars) {
    long d = 0;
    for (auto& c : t_rel.coeff_list(tv)) {
        long td = 0;
        for (auto& xn : xnames) td += std::max(c.degree_in(xn), 0L);
        d = std::max(d, td);
    }
    for (auto& c : ty_rel.coeff_list(tv)) {
        long td = 0;
        for (auto& xn : xnames) td += std::max(c.degree_in(xn), 0L);
        d = std::max(d, td);
    }
    int N = (int)d + 1;

    // fresh sigma + one chi per x
    std::vector<std::string> names = *owner.vars();
    names.push_back(tv);
    std::string sigma = fresh_var(*make_context(names), "zsg");
    names.push_back(sigma);
    std::vector<std::string> chis;
    for (std::size_t j = 0; j < xnames.size(); ++j) {
        std::string c = fresh_var(*make_context(names), "zch" + std::to_string(j));
        chis.push_back(c);
        names.push_back(c);
    }
    auto ectx = make_context(names);

    // monomial x^alpha -> sigma^{d - |alpha|} prod chi_j^{alpha_j}
    auto scale = [&](const Polynomial& rel) {
        long nrel = rel.degree_in(tv);
        std::vector<Polynomial> cs((std::size_t)nrel + 1, Polynomial::zero(ectx));
        cs[(std::size_t)nrel] = Polynomial::constant(Rational(1), ectx);
        Polynomial sv = Polynomial::variable(sigma, ectx);
        for (long i = 0; i < nrel; ++i) {
            Polynomial ci = rel.coeff_of(tv, (uint32_t)i).embedded(ectx);
            long di = d * (nrel - i);
            Polynomial acc = Polynomial::zero(ectx);
            for (auto& [mono, coef] : ci.terms()) {
                Polynomial term = Polynomial::constant(coef, ectx);
                long degx = 0;
                Monomial rest = mono;
                for (std::size_t j = 0; j < xnames.size(); ++j) {
                    auto idx = ctx_index(*ectx, xnames[j]);
                    if (!idx) continue;
                    uint32_t e = mono[*idx];
                    if (e == 0) continue;
                    degx += e;
                    rest[*idx] = 0;
                    term = term * Polynomial::variable(chis[j], ectx).pow(e);
                }
                if (di < degx) throw ShapeError("glue_multi: x-degree exceeds bound");
                Polynomial restp(ectx);
                restp.add_term(rest, Rational(1));
                acc += term * restp * sv.pow((unsigned long)(di - degx));
            }
            cs[(std::size_t)i] = acc;
        }
        // eliminate the chi_j against sx-certs, then sigma against the s-cert
        Polynomial h = poly_from_coeffs(tv, cs);
        for (std::size_t j = 0; j < chis.size(); ++j) {
            if (h.degree_in(chis[j]) <= 0) continue;
            auto cctx = context_union(h.context(), sx_certs[j].monic.context());
            Polynomial cj = substitute(sx_certs[j].monic.embedded(cctx),
                                       {{sx_certs[j].cert_var,
                                         Polynomial::variable(chis[j], cctx)}});
            h = resultant(cj, h.embedded(cctx), chis[j]);
        }
        if (h.degree_in(sigma) > 0) {
            auto cctx = context_union(h.context(), s_cert.monic.context());
            Polynomial cs2 = substitute(s_cert.monic.embedded(cctx),
                                        {{s_cert.cert_var, Polynomial::variable(sigma, cctx)}});
            h = resultant(cs2, h.embedded(cctx), sigma);
        }
        return h;
    };

    Polynomial h_t = scale(t_rel);    // annihilates s^d t
    Polynomial h_ty = scale(ty_rel);  // annihilates s^d t ylast

    auto renamed = [&](const IntegralityCertificate& c) {
        if (c.cert_var == tv) return c.monic;
        auto cctx = context_union(c.monic.context(), make_context({tv}));
        return substitute(c.monic.embedded(cctx), {{c.cert_var, Polynomial::variable(tv, cctx)}});
    };

    auto loc = CoefficientLocation::over_base_vars(base_vars, owner.vars());
    GlueMultiResult out;
    out.N = N;
    Polynomial sN = owner.nf(s_poly.pow((unsigned long)N));
    out.u = owner.nf(sN * t_poly);
    auto mk = [&](const Polynomial& val, Polynomial monic, const char* what) {
        IntegralityCertificate c{AlgebraElement(owner, val), monic, tv, loc,
                                 std::string("glue_multi(") + what + ")"};
        return tighten_cert(c, 8, 4);
    };
    out.u_cert = mk(out.u, certops::product_monic(renamed(s_cert), h_t, tv), "u");
    out.uy_cert = mk(owner.nf(out.u * ylast),
                     certops::product_monic(renamed(s_cert), h_ty, tv), "u*ylast");
    for (std::size_t j = 0; j < xnames.size(); ++j) {
        Polynomial ux = owner.nf(out.u * Polynomial::variable(xnames[j], owner.vars()));
        out.ux_certs.push_back(
            mk(ux, certops::product_monic(h_t, renamed(sx_certs[j]), tv),
               ("u*" + xnames[j]).c_str()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// residual-finiteness search: a monic p (degree-bounded) in one generator with
// p(g) in I*B, found by a linear solve; used when a presentation change loses
// the user's monic.
// ---------------------------------------------------------------------------

inline std::optional<Polynomial> search_residual_monic(const AlgebraPresentation& B,
                                                       const std::vector<std::string>& base_vars,
                                                       const std::string& gen,
                                                       const IdealPresentation& I,
                                                       const std::string& pvar, int max_deg = 6) {
    const GroebnerBasis& gb = B.gb();
    Polynomial g = Polynomial::variable(gen, B.vars());
    std::vector<Polynomial> gpow{Polynomial::constant(Rational(1), B.vars())};
    for (int i = 1; i <= max_deg; ++i) gpow.push_back(B.nf(gpow.back() * g));
    auto amonos = monomial_basis(base_vars, 2, B.vars());
    auto bmonos = monomial_basis(*B.vars(), 2, B.vars());
    for (int dd = 1; dd <= max_deg; ++dd) {
        std::vector<Polynomial> cands;
        std::vector<std::pair<int, Polynomial>> info;  // power index or -1 for iota
        for (int i = 0; i < dd; ++i)
            for (auto& m : amonos) {
                cands.push_back(B.nf(m * gpow[(std::size_t)i]));
                info.push_back({i, m});
            }
        for (auto& ig : I.generators)
            for (auto& m : bmonos) {
                cands.push_back(B.nf(ig.embedded(B.vars()) * m));
                info.push_back({-1, Polynomial::zero(B.vars())});
            }
        if (cands.size() > (std::size_t)caps().solve_cap) break;
        auto sol = solve_combination(-gpow[(std::size_t)dd], cands, gb);
        if (!sol) continue;
        auto pctx = context_union(B.vars(), make_context({pvar}));
        Polynomial P = Polynomial::variable(pvar, pctx).pow((unsigned long)dd);
        for (std::size_t c = 0; c < cands.size(); ++c) {
            if (is_zero((*sol)[c]) || info[c].first < 0) continue;
            P += Polynomial::constant((*sol)[c], pctx) * info[c].second.embedded(pctx) *
                 Polynomial::variable(pvar, pctx).pow((unsigned long)info[c].first);
        }
        return P;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// main theorem: recursion on the number of generators following the written
// two-generator pattern: base case on the last generator over
// A[x_1..x_{n-1}], the induction step through the crucial lemma on the first,
// and the gluing lemma to combine.
// ---------------------------------------------------------------------------

inline ZmtResult zmt_main(const ZmtProblem& prob) {
    verify_zmt_problem(prob);
    const AlgebraPresentation& B = prob.B;
    std::string tv = cert_variable(B.vars());
    auto locA = CoefficientLocation::over_base_vars(prob.base_vars, B.vars());
    std::size_t n = prob.gen_vars.size();
    IdealPresentation IB = prob.I.embedded(B.vars()).plus(B.relations());
    GroebnerBasis IBgb = groebner(IB, MonomialOrder::degrevlex());
    Polynomial one = Polynomial::constant(Rational(1), B.vars());

    if (n == 0) {
        ZmtResult out{AlgebraElement(B, one),
                      cert_for_constant(B, one, tv, locA),
                      {},
                      true};
        return out;
    }
    if (n == 1) {
        auto rb = zmt_base(B, prob.base_vars, prob.gen_vars[0], prob.I, prob.residual_monics[0],
                           prob.pvar);
        bool in1 = member(B.nf(rb.s.numerator() - one), IBgb);
        return ZmtResult{rb.s, rb.s_cert, {rb.sg_cert}, in1};
    }

    // base case on the last generator over A' = A + the other generators
    std::vector<std::string> baseprime = prob.base_vars;
    std::vector<std::string> front(prob.gen_vars.begin(), prob.gen_vars.end() - 1);
    for (auto& v : front) baseprime.push_back(v);
    const std::string xlast = prob.gen_vars.back();
    auto rb = zmt_base(B, baseprime, xlast, prob.I, prob.residual_monics.back(), prob.pvar);

    // adjoin a variable for s0
    std::string sname = fresh_var(*B.vars(), "zs");
    std::vector<std::string> names1 = *B.vars();
    names1.push_back(sname);
    auto ctx1 = make_context(names1);
    AlgebraPresentation B1(
        ctx1, B.relations().embedded(ctx1).plus(
                  {Polynomial::variable(sname, ctx1) - rb.s.numerator().embedded(ctx1)}));
    // introduced-variable images for flattening results back into B
    std::vector<std::pair<std::string, Polynomial>> intro{{sname, rb.s.numerator()}};

    auto rename_to = [&](const IntegralityCertificate& c, const std::string& var) {
        if (c.cert_var == var) return c.monic;
        auto cctx = context_union(c.monic.context(), make_context({var}));
        return substitute(c.monic.embedded(cctx), {{c.cert_var, Polynomial::variable(var, cctx)}});
    };

    Polynomial s_final;            // in the working presentation
    IntegralityCertificate cu, cuy;
    std::vector<IntegralityCertificate> cux;
    AlgebraPresentation Wk = B1;   // presentation the glue results live in

    if (n == 2) {
        const std::string& x = prob.gen_vars[0];
        const Polynomial& p = prob.residual_monics[0];

        // N with t = s0^N and t*p(x) in sqrt(I * A[x, s0])
        auto sub = present_subalgebra(B1, [&] {
            std::vector<std::string> k = prob.base_vars;
            k.push_back(x);
            k.push_back(sname);
            return k;
        }(), {});
        Polynomial px_sub = substitute(p.embedded(context_union(p.context(), sub.algebra.vars())),
                                       {{prob.pvar, Polynomial::variable(x, sub.algebra.vars())}});
        IdealPresentation Isub = prob.I.embedded(sub.algebra.vars()).plus(sub.algebra.relations());
        int N = -1;
        Polynomial ssub = Polynomial::variable(sname, sub.algebra.vars());
        Polynomial tp = px_sub;
        for (int k = 1; k <= caps().exp_cap; ++k) {
            tp = sub.algebra.nf(tp * ssub);
            if (radical_member(tp, Isub).is_member) { N = k; break; }
        }
        if (N < 0) throw ExponentCapExceeded("zmt_main: no N with s^N p(x) in sqrt(I*A[x,s])");

        Polynomial t_rel = certops::power_monic(rename_to(rb.s_cert, tv), tv, (unsigned long)N);
        auto step = zmt_step(B1, prob.base_vars, x, sname, t_rel, tv, prob.I, p, prob.pvar);
        Wk = step.owner;
        for (auto& pr : step.intro) intro.push_back(pr);

        // unit witness on the b family: w in 1 + I*B with w, w*x integral over A
        std::vector<AlgebraElement> bs;
        for (auto& b : step.b)
            if (!b.is_zero_poly()) bs.push_back(AlgebraElement(Wk, b));
        auto unit = lying_over_unit(bs, prob.I.embedded(Wk.vars()), prob.base_vars);
        Polynomial w = Wk.nf(unit.w);
        auto locW = CoefficientLocation::over_base_vars(prob.base_vars, Wk.vars());
        auto cw = minimize_cert(AlgebraElement(Wk, w), locW, tv, 10, 4, "zmt w");
        auto cwx = minimize_cert(AlgebraElement(Wk, Wk.nf(w * Polynomial::variable(x, Wk.vars()))),
                                 locW, tv, 10, 4, "zmt w*x");
        if (!cw || !cwx) throw WitnessSearchExhausted("zmt_main: no small certificates for w, wx");

        // glue: t-side s0 (over A[x]), s-side w (over A)
        auto g = glue_multi(Wk, Polynomial::variable(sname, Wk.vars()),
                            Polynomial::variable(xlast, Wk.vars()), {x},
                            w, rename_to(rb.s_cert, tv), rename_to(rb.sg_cert, tv), tv, *cw,
                            {*cwx}, prob.base_vars);
        s_final = g.u;
        cu = g.u_cert;
        cuy = g.uy_cert;
        cux = g.ux_certs;
    } else {
        // n >= 3: recurse on the subalgebra A[front, s0, s0*xlast]
        std::vector<std::pair<std::string, Polynomial>> elts{
            {"zsA", rb.s.numerator()}, {"zsB", B.nf(rb.s.numerator() *
                                                    Polynomial::variable(xlast, B.vars()))}};
        std::vector<std::string> keep = prob.base_vars;
        for (auto& v : front) keep.push_back(v);
        auto subp = present_subalgebra(B, keep, elts);
        ZmtProblem sub;
        sub.B = subp.algebra;
        sub.base_vars = prob.base_vars;
        sub.gen_vars = front;
        sub.I = prob.I.embedded(subp.algebra.vars());
        sub.pvar = prob.pvar;
        for (std::size_t j = 0; j < front.size(); ++j) {
            // reuse the user's monic when it still lands in I*B', else search
            Polynomial pj = prob.residual_monics[j];
            Polynomial at = substitute(pj.embedded(context_union(pj.context(), sub.B.vars())),
                                       {{prob.pvar, Polynomial::variable(front[j], sub.B.vars())}});
            IdealPresentation IBp = sub.I.plus(sub.B.relations());
            if (member(sub.B.nf(at), groebner(IBp, MonomialOrder::degrevlex()))) {
                sub.residual_monics.push_back(pj);
            } else {
                auto found = search_residual_monic(sub.B, sub.base_vars, front[j], sub.I, prob.pvar);
                if (!found)
                    throw WitnessSearchExhausted("zmt_main: no residual monic for " + front[j]);
                sub.residual_monics.push_back(*found);
            }
        }
        ZmtResult rec = zmt_main(sub);

        // map the recursive result into B and glue against s0
        std::map<std::string, Polynomial> back;
        for (auto& [nm, img] : subp.images) back[nm] = img;
        auto into_B = [&](const Polynomial& q) {
            Polynomial r = q.embedded(context_union(q.context(), B.vars()));
            std::map<std::string, Polynomial> bind;
            for (auto& [nm, img] : back)
                if (r.depends_on(nm)) bind[nm] = img.embedded(B.vars());
            if (!bind.empty()) r = substitute(r, bind);
            return B.nf(r.embedded(B.vars()));
        };
        Polynomial uprime = into_B(rec.s.numerator());
        // rebind the recursive certificates into B (coefficients are base-only)
        auto rebind = [&](const IntegralityCertificate& c, const Polynomial& val) {
            return IntegralityCertificate{AlgebraElement(B, val),
                                          c.monic, c.cert_var,
                                          CoefficientLocation::over_base_vars(prob.base_vars,
                                                                              B.vars()),
                                          c.provenance};
        };
        IntegralityCertificate cu_rec = rebind(rec.s_cert, uprime);
        std::vector<IntegralityCertificate> cux_rec;
        for (std::size_t j = 0; j < front.size(); ++j)
            cux_rec.push_back(rebind(
                rec.sx_certs[j],
                B.nf(uprime * Polynomial::variable(front[j], B.vars()))));

        Wk = B;
        auto g = glue_multi(B, rb.s.numerator(), Polynomial::variable(xlast, B.vars()), front,
                            uprime, rename_to(rb.s_cert, tv), rename_to(rb.sg_cert, tv), tv,
                            cu_rec, cux_rec, prob.base_vars);
        s_final = g.u;
        cu = g.u_cert;
        cuy = g.uy_cert;
        cux = g.ux_certs;
        intro.clear();
    }

    // flatten back into B
    auto flatten = [&](Polynomial q) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::map<std::string, Polynomial> bind;
            for (auto it = intro.rbegin(); it != intro.rend(); ++it)
                if (q.depends_on(it->first)) bind[it->first] = it->second.embedded(
                    context_union(q.context(), it->second.context()));
            if (!bind.empty()) {
                q = substitute(q.embedded(context_union(q.context(), B.vars())), bind);
                changed = true;
            }
        }
        return B.nf(q.embedded(B.vars()));
    };

    Polynomial sB = flatten(s_final);
    ZmtResult out;
    out.s = AlgebraElement(B, sB);
    out.s_cert = IntegralityCertificate{out.s, cu.monic, cu.cert_var, locA, cu.provenance};
    // order: certificates for s*x_j in generator order (front..., xlast)
    for (std::size_t j = 0; j + 1 < n; ++j) {
        Polynomial v = B.nf(sB * Polynomial::variable(prob.gen_vars[j], B.vars()));
        out.sx_certs.push_back(IntegralityCertificate{AlgebraElement(B, v), cux[j].monic,
                                                      cux[j].cert_var, locA, cux[j].provenance});
    }
    {
        Polynomial v = B.nf(sB * Polynomial::variable(xlast, B.vars()));
        out.sx_certs.push_back(IntegralityCertificate{AlgebraElement(B, v), cuy.monic,
                                                      cuy.cert_var, locA, cuy.provenance});
    }
    out.s_in_one_plus_IB = member(B.nf(sB - one), IBgb);
    return out;
}

} // namespace zmtforge
