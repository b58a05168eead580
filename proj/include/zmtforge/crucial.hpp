#pragma once

#include <string>
#include <vector>

#include "integrality.hpp"
#include "subresultant.hpp"

namespace zmtforge {

// ---------------------------------------------------------------------------
// Strong transcendence: x strongly transcendent over C in D means any
// relation u*(c_0 + ... + c_k x^k) = 0 forces u*c_j = 0 for all j.
// ---------------------------------------------------------------------------

struct StrongTranscendenceReport {
    bool holds = false;
    std::optional<std::size_t> failing_index;  // first j with u*c_j != 0
};

inline StrongTranscendenceReport strong_transcendence_check(
    const AlgebraElement& u, const std::vector<Polynomial>& coeffs, const AlgebraElement& x) {
    const AlgebraPresentation& owner = u.owner();
    Polynomial rel = Polynomial::zero(owner.vars());
    Polynomial xp = Polynomial::constant(Rational(1), owner.vars());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        rel = owner.nf(rel + coeffs[j].embedded(owner.vars()) * xp);
        xp = owner.nf(xp * x.numerator());
    }
    if (!owner.is_zero(owner.nf(u.numerator() * rel)))
        throw HypothesisNotSatisfied("strong_transcendence_check: u*(sum c_j x^j) != 0");
    StrongTranscendenceReport out;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (!owner.is_zero(owner.nf(u.numerator() * coeffs[j].embedded(owner.vars())))) {
            out.failing_index = j;
            return out;
        }
    }
    out.holds = true;
    return out;
}

// ---------------------------------------------------------------------------
// Crucial lemma: S = R[x,t], R integrally closed in S (calling contract),
// t integral over R[x] of degree n, t*x in sqrt(I*S). Produces m, y with
// a = t^m - y, y in I*S, and the conductor evidence a*t^i in R0[x] for i < n
// — the element-wise criterion for a in J = (R[x] : S).
// ---------------------------------------------------------------------------

struct CrucialWitness {
    int m = 1;
    Polynomial y;  // in I*S
    Polynomial a;  // nf(t^m - y)
    std::vector<Polynomial> conductor_gens;            // R0' generators plus x
    std::vector<SubalgWitness> conductor_evidence;     // for a*t^i, i < n
    Polynomial P, Q;                                   // chain inputs (polys in tv)
    std::vector<Polynomial> principals;                // subresultant principal coeffs
    std::vector<std::string> branch_log;
    std::vector<IntegralityCertificate> discovered;    // closure elements found
};

namespace detail_crucial {

// Stack several "target_i == sum_k c_k cand_{k,i}" constraints into one
// solve_combination call by tagging each block with a fresh marker variable.
inline std::optional<std::vector<Rational>> solve_stacked(
    const std::vector<Polynomial>& targets, const std::vector<std::vector<Polynomial>>& cands) {
    if (targets.empty()) return std::vector<Rational>{};
    CtxPtr ctx = Polynomial::empty_ctx();
    for (auto& t : targets) ctx = context_union(ctx, t.context());
    for (auto& row : cands)
        for (auto& c : row) ctx = context_union(ctx, c.context());
    std::vector<std::string> markers;
    std::vector<std::string> names = *ctx;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        std::string mk = fresh_var(*make_context(names), "zmk" + std::to_string(i));
        markers.push_back(mk);
        names.push_back(mk);
    }
    auto ectx = make_context(names);
    Polynomial target = Polynomial::zero(ectx);
    for (std::size_t i = 0; i < targets.size(); ++i)
        target += Polynomial::variable(markers[i], ectx) * targets[i].embedded(ectx);
    std::size_t ncand = cands.empty() ? 0 : cands[0].size();
    std::vector<Polynomial> combined(ncand, Polynomial::zero(ectx));
    for (std::size_t i = 0; i < cands.size(); ++i)
        for (std::size_t k = 0; k < ncand; ++k)
            combined[k] += Polynomial::variable(markers[i], ectx) * cands[i][k].embedded(ectx);
    GroebnerBasis trivial_gb;
    trivial_gb.order = MonomialOrder::degrevlex();
    trivial_gb.source = IdealPresentation(ectx, {});
    return solve_combination(target, combined, trivial_gb);
}

// tag-variable reducer for the subalgebra generated by `gens`
struct TagReducer {
    GroebnerBasis gb;
    MonomialOrder ord;
    CtxPtr ectx;
    std::vector<std::string> tags;
    std::vector<std::string> owner_names;

    Polynomial reduce(const Polynomial& p) const {
        return normal_form(p.embedded(ectx), gb.basis, ord).remainder;
    }
    // part of a reduced value that still uses owner variables
    Polynomial mixed_part(const Polynomial& reduced) const {
        Polynomial m(reduced.context());
        for (auto& [mono, c] : reduced.terms()) {
            bool uses_owner = false;
            for (auto& v : owner_names) {
                auto idx = ctx_index(*reduced.context(), v);
                if (idx && mono[*idx] > 0) { uses_owner = true; break; }
            }
            if (uses_owner) m.add_term(mono, c);
        }
        return m;
    }
};

inline TagReducer make_tag_reducer(const AlgebraPresentation& owner,
                                   const std::vector<Polynomial>& gens) {
    TagReducer tr;
    tr.owner_names = *owner.vars();
    std::vector<std::string> names = *owner.vars();
    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::string t = fresh_var(*make_context(names), "zt" + std::to_string(j));
        tr.tags.push_back(t);
        names.push_back(t);
    }
    tr.ectx = make_context(names);
    std::vector<Polynomial> rel;
    for (auto& g : owner.relations().generators) rel.push_back(g.embedded(tr.ectx));
    for (std::size_t j = 0; j < gens.size(); ++j)
        rel.push_back(Polynomial::variable(tr.tags[j], tr.ectx) - gens[j].embedded(tr.ectx));
    std::vector<std::size_t> elim;
    for (auto& v : *owner.vars()) elim.push_back(*ctx_index(*tr.ectx, v));
    tr.ord = MonomialOrder::block_elim(elim);
    tr.gb = groebner(IdealPresentation(tr.ectx, std::move(rel)), tr.ord);
    return tr;
}

} // namespace detail_crucial

inline CrucialWitness crucial_lemma(const AlgebraElement& x, const AlgebraElement& t,
                                    const Polynomial& integral_rel, const std::string& tv,
                                    const IdealPresentation& I,
                                    const std::vector<Polynomial>& r0_gens) {
    const AlgebraPresentation& owner = t.owner();
    long n = integral_rel.degree_in(tv);
    if (n < 1) throw ShapeError("crucial_lemma: integral relation has degree < 1");
    CrucialWitness out;
    out.P = integral_rel.embedded(context_union(owner.vars(), make_context({tv})));

    IdealPresentation IS = I.embedded(owner.vars()).plus(owner.relations());
    GroebnerBasis IS_gb = groebner(IS, MonomialOrder::degrevlex());

    Polynomial tx = owner.nf(t.numerator() * x.numerator());
    // hypothesis: t*x in sqrt(I*S)
    auto rad = radical_member(tx, IS);
    if (!rad.is_member) throw HypothesisNotSatisfied("crucial_lemma: t*x not in sqrt(I*S)");
    int e = rad.exponent.value_or(caps().exp_cap);

    // conductor generator list: R0 generators plus x
    std::vector<Polynomial> cond = r0_gens;
    cond.push_back(owner.nf(x.numerator()));

    // short-circuit: t already in I*S
    if (member(owner.nf(t.numerator()), IS_gb)) {
        out.m = 1;
        out.y = owner.nf(t.numerator());
        out.a = Polynomial::zero(owner.vars());
        out.conductor_gens = cond;
        out.branch_log.push_back("t in I*S: a = 0");
        for (long i = 0; i < n; ++i) {
            SubalgWitness w;
            w.is_member = true;
            w.tags = {};
            w.tag_context = Polynomial::empty_ctx();
            w.expression = Polynomial::zero(w.tag_context);
            out.conductor_evidence.push_back(w);
        }
        return out;
    }

    // Q(x, T): either directly from the expression of (tx)^e in I*S, or via
    // the Lying Over certificate of tx on the module basis 1, t, .., t^{n-1}
    Polynomial txe = Polynomial::constant(Rational(1), owner.vars());
    for (int k = 0; k < e; ++k) txe = owner.nf(txe * tx);
    auto tctx = context_union(owner.vars(), make_context({tv}));
    Polynomial T = Polynomial::variable(tv, tctx);
    bool direct_q = member(txe, IS_gb);
    if (direct_q) {
        auto tr = member_with_cofactors(txe, IS);
        Polynomial r = Polynomial::zero(owner.vars());
        for (std::size_t k = 0; k < I.generators.size(); ++k)
            r += tr.cofactors[k] * I.generators[k].embedded(owner.vars());
        out.Q = (x.numerator().embedded(tctx) * T).pow((unsigned long)e) - owner.nf(r).embedded(tctx);
        out.branch_log.push_back("Q direct from (tx)^" + std::to_string(e) + " in I*S");
    } else {
        std::vector<AlgebraElement> mg;
        Polynomial tp = Polynomial::constant(Rational(1), owner.vars());
        for (long i = 0; i < n; ++i) {
            mg.push_back(AlgebraElement(owner, tp));
            tp = owner.nf(tp * t.numerator());
        }
        auto lo = lying_over_cert(AlgebraElement(owner, tx), I, mg, cond);
        e = lo.exponent;
        Polynomial xt_pow = (x.numerator().embedded(tctx) * T).pow((unsigned long)e);
        out.Q = substitute(lo.cert.monic.embedded(context_union(lo.cert.monic.context(), tctx)),
                           {{lo.cert.cert_var, xt_pow}});
        out.branch_log.push_back("Q via LyingOver certificate, exponent " + std::to_string(e));
    }

    // subresultant walk: establish principal coefficients zero in the
    // localization (saturation by t and any inverted leads), or invert the
    // first non-vanishing one and try to extract a closure element
    auto chain = subresultant_chain(out.P, out.Q, tv, /*with_cofactors=*/false);
    out.principals = chain.principal;
    {
        IdealPresentation V = owner.relations();
        Polynomial inverted = owner.nf(t.numerator());
        int branches = 0;
        for (long j = 0; j < n; ++j) {
            Polynomial sj = owner.nf(chain.principal[(std::size_t)j]);
            if (sj.is_zero_poly()) {
                out.branch_log.push_back("s_" + std::to_string(j) + " = 0 in S");
                continue;
            }
            if (++branches > caps().branch_cap) throw BranchBlowup("crucial_lemma: branch cap");
            IdealPresentation sat = saturate(V, inverted);
            if (member(sj, sat)) {
                out.branch_log.push_back("s_" + std::to_string(j) + " = 0 after saturation");
                continue;
            }
            out.branch_log.push_back("s_" + std::to_string(j) + " inverted (dynamical branch)");
            inverted = owner.nf(inverted * sj);
            if (j == 1) {
                // Sr_1(t) = 0 gives t*s_1(x) in R0[x]: the comp lemma applies.
                // Formalize when x and the R0 generators are plain variables.
                auto xv = x.numerator().used_vars();
                bool x_is_var = x.numerator().term_count() == 1 && xv.size() == 1 &&
                                x.numerator() == Polynomial::variable(xv[0], owner.vars());
                std::vector<std::string> r0_names;
                bool r0_vars = true;
                for (auto& g : r0_gens) {
                    auto gv = g.used_vars();
                    if (g.term_count() == 1 && gv.size() == 1 &&
                        g == Polynomial::variable(gv[0], g.context())) {
                        r0_names.push_back(gv[0]);
                    } else {
                        r0_vars = false;
                        break;
                    }
                }
                if (x_is_var && r0_vars) {
                    std::string pvar = fresh_var(*tctx, "zX");
                    auto fctx = context_union(tctx, make_context({pvar}));
                    auto formal = [&](const Polynomial& p) {
                        return substitute(p.embedded(fctx),
                                          {{xv[0], Polynomial::variable(pvar, fctx)}});
                    };
                    try {
                        auto sc = shift_cert(t, formal(sj), pvar, x.numerator(),
                                             formal(integral_rel), tv, r0_names);
                        out.discovered.push_back(sc.cert);
                        cond.push_back(owner.nf(sc.cert.element.numerator()));
                        out.branch_log.push_back("comp lemma closure element adjoined");
                    } catch (const EngineError& err) {
                        out.branch_log.push_back(std::string("closure extraction failed: ") +
                                                 err.what());
                    }
                }
                break;
            }
            if (j > 1) { out.branch_log.push_back("chain walk stopped at level " +
                                                  std::to_string(j)); break; }
        }
    }

    // witness search: find m and y in I*S with (t^m - y) * t^i in R0'[x]
    auto tagr = detail_crucial::make_tag_reducer(owner, cond);
    std::vector<Polynomial> tpow{Polynomial::constant(Rational(1), owner.vars())};
    for (long i = 1; i < n; ++i) tpow.push_back(owner.nf(tpow.back() * t.numerator()));

    for (int ydeg = 0; ydeg <= 2; ++ydeg) {
        std::vector<Polynomial> ycands;
        auto monos = monomial_basis(*owner.vars(), ydeg, owner.vars());
        for (auto& ig : I.generators)
            for (auto& mo : monos) ycands.push_back(owner.nf(ig.embedded(owner.vars()) * mo));
        if (ycands.size() * (std::size_t)n > (std::size_t)caps().solve_cap) break;

        Polynomial tm = Polynomial::constant(Rational(1), owner.vars());
        for (int m = 1; m <= caps().exp_cap; ++m) {
            tm = owner.nf(tm * t.numerator());
            std::vector<Polynomial> targets;
            std::vector<std::vector<Polynomial>> cands;
            for (long i = 0; i < n; ++i) {
                targets.push_back(
                    tagr.mixed_part(tagr.reduce(owner.nf(tm * tpow[(std::size_t)i]))));
                std::vector<Polynomial> row;
                for (auto& yk : ycands)
                    row.push_back(
                        tagr.mixed_part(tagr.reduce(owner.nf(yk * tpow[(std::size_t)i]))));
                cands.push_back(std::move(row));
            }
            auto sol = detail_crucial::solve_stacked(targets, cands);
            if (!sol) continue;
            Polynomial y = Polynomial::zero(owner.vars());
            for (std::size_t k = 0; k < ycands.size(); ++k)
                if (!is_zero((*sol)[k]))
                    y += Polynomial::constant((*sol)[k], owner.vars()) * ycands[k];
            y = owner.nf(y);
            Polynomial a = owner.nf(tm - y);
            // independent re-check of the conductor criterion
            std::vector<SubalgWitness> evidence;
            bool all_ok = true;
            for (long i = 0; i < n; ++i) {
                auto w = subalg_member(owner.nf(a * tpow[(std::size_t)i]), cond, owner);
                if (!w.is_member) { all_ok = false; break; }
                evidence.push_back(std::move(w));
            }
            if (!all_ok) continue;
            if (!member(y, IS_gb)) continue;
            out.m = m;
            out.y = y;
            out.a = a;
            out.conductor_gens = cond;
            out.conductor_evidence = std::move(evidence);
            out.branch_log.push_back("witness at m = " + std::to_string(m) +
                                     ", y-degree " + std::to_string(ydeg));
            return out;
        }
    }
    throw ExponentCapExceeded("crucial_lemma: no conductor witness within caps");
}

} // namespace zmtforge
