#pragma once

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace zmtforge {

struct IdealPresentation {
    CtxPtr context = Polynomial::empty_ctx();
    std::vector<Polynomial> generators;  // nonzero, all embedded in context

    IdealPresentation() = default;
    IdealPresentation(CtxPtr ctx, std::vector<Polynomial> gens) : context(std::move(ctx)) {
        for (auto& g : gens) {
            if (g.is_zero_poly()) continue;
            generators.push_back(g.embedded(context));
        }
    }

    static IdealPresentation span(std::vector<Polynomial> gens) {
        CtxPtr ctx = Polynomial::empty_ctx();
        for (auto& g : gens) ctx = context_union(ctx, g.context());
        return IdealPresentation(ctx, std::move(gens));
    }

    IdealPresentation embedded(const CtxPtr& target) const {
        return IdealPresentation(context_union(target, context), generators);
    }

    IdealPresentation plus(const IdealPresentation& other) const {
        auto ctx = context_union(context, other.context);
        std::vector<Polynomial> gens = generators;
        gens.insert(gens.end(), other.generators.begin(), other.generators.end());
        return IdealPresentation(ctx, std::move(gens));
    }

    IdealPresentation plus(const std::vector<Polynomial>& more) const {
        std::vector<Polynomial> gens = generators;
        gens.insert(gens.end(), more.begin(), more.end());
        return IdealPresentation::span(std::move(gens)).embedded(context);
    }
};

// fresh variable name not present in ctx
inline std::string fresh_var(const VarContext& ctx, const std::string& stem) {
    std::string name = stem;
    int suffix = 0;
    while (ctx_index(ctx, name)) name = stem + std::to_string(++suffix);
    return name;
}

struct NFResult {
    Polynomial remainder;
    std::vector<Polynomial> quotients;  // parallel to the divisor list if requested
};

// Deterministic full reduction of p by a divisor list: head term reduced by
// the first divisor whose lead divides it, irreducible heads move to the
// remainder.
inline NFResult normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                            const MonomialOrder& ord, bool want_quotients = false) {
    CtxPtr ctx = p.context();
    for (auto& g : basis) ctx = context_union(ctx, g.context());
    Polynomial h = p.embedded(ctx);
    std::vector<Polynomial> divs;
    std::vector<std::pair<Monomial, Rational>> leads;
    divs.reserve(basis.size());
    for (auto& g : basis) {
        divs.push_back(g.embedded(ctx));
        leads.push_back(divs.back().lead(ord));
    }
    NFResult out;
    out.remainder = Polynomial::zero(ctx);
    if (want_quotients) out.quotients.assign(basis.size(), Polynomial::zero(ctx));
    while (!h.is_zero_poly()) {
        auto [hm, hc] = h.lead(ord);
        bool reduced = false;
        for (std::size_t i = 0; i < divs.size(); ++i) {
            if (!mono_divides(leads[i].first, hm)) continue;
            Monomial qm = mono_div(hm, leads[i].first);
            Rational qc = hc / leads[i].second;
            Polynomial t(ctx);
            t.add_term(qm, qc);
            h -= t * divs[i];
            if (want_quotients) out.quotients[i] += t;
            reduced = true;
            break;
        }
        if (!reduced) {
            Polynomial t(ctx);
            t.add_term(hm, hc);
            out.remainder += t;
            h -= t;
        }
    }
    return out;
}

struct GroebnerBasis {
    MonomialOrder order;
    std::vector<Polynomial> basis;  // interreduced, monic, lead-ascending
    IdealPresentation source;
    // with_trace: basis[i] == sum_k reps[i][k] * source.generators[k]
    std::vector<std::vector<Polynomial>> reps;
    bool has_trace = false;

    bool is_trivial() const {
        return basis.size() == 1 && basis[0].is_constant_poly();
    }
};

namespace detail {

struct WorkPoly {
    Polynomial p;
    Monomial lead_m;
    Rational lead_c;
    long sugar = 0;
    std::vector<Polynomial> rep;
};

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    long deg;
    long sugar;
};

} // namespace detail

// Buchberger with normal-strategy pair selection and sugar tie-breaking;
// deterministic for a fixed order and generator list. The result is the
// unique reduced basis.
inline GroebnerBasis groebner(const IdealPresentation& ideal, const MonomialOrder& ord,
                              bool with_trace = false) {
    GroebnerBasis out;
    out.order = ord;
    out.source = ideal;
    out.has_trace = with_trace;
    const CtxPtr& ctx = ideal.context;
    const std::size_t ngen = ideal.generators.size();

    std::vector<detail::WorkPoly> G;
    auto rep_unit = [&](std::size_t k) {
        std::vector<Polynomial> r(ngen, Polynomial::zero(ctx));
        r[k] = Polynomial::constant(Rational(1), ctx);
        return r;
    };

    auto nf_with_rep = [&](Polynomial h, std::vector<Polynomial> rep, long sugar)
        -> std::optional<detail::WorkPoly> {
        // reduce h fully against G, updating the representation
        Polynomial rem = Polynomial::zero(ctx);
        while (!h.is_zero_poly()) {
            auto [hm, hc] = h.lead(ord);
            bool reduced = false;
            for (auto& g : G) {
                if (!mono_divides(g.lead_m, hm)) continue;
                Monomial qm = mono_div(hm, g.lead_m);
                Rational qc = hc / g.lead_c;
                Polynomial t(ctx);
                t.add_term(qm, qc);
                h -= t * g.p;
                sugar = std::max(sugar, (long)qm.total_degree() + g.sugar);
                if (with_trace)
                    for (std::size_t k = 0; k < ngen; ++k) rep[k] -= t * g.rep[k];
                reduced = true;
                break;
            }
            if (!reduced) {
                Polynomial t(ctx);
                t.add_term(hm, hc);
                rem += t;
                h -= t;
            }
        }
        if (rem.is_zero_poly()) return std::nullopt;
        detail::WorkPoly w;
        w.p = rem;
        auto [m, c] = rem.lead(ord);
        w.lead_m = m;
        w.lead_c = c;
        w.sugar = std::max(sugar, rem.total_degree());
        w.rep = std::move(rep);
        return w;
    };

    std::deque<detail::Pair> pairs;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (mono_coprime(G[i].lead_m, G[j].lead_m)) continue;  // product criterion
            detail::Pair pr;
            pr.i = i;
            pr.j = j;
            pr.lcm = mono_lcm(G[i].lead_m, G[j].lead_m);
            pr.deg = pr.lcm.total_degree();
            pr.sugar = std::max(G[i].sugar + (pr.deg - G[i].lead_m.total_degree()),
                                G[j].sugar + (pr.deg - G[j].lead_m.total_degree()));
            pairs.push_back(pr);
        }
    };

    for (std::size_t k = 0; k < ngen; ++k) {
        auto w = nf_with_rep(ideal.generators[k],
                             with_trace ? rep_unit(k) : std::vector<Polynomial>{},
                             ideal.generators[k].total_degree());
        if (w) {
            G.push_back(std::move(*w));
            push_pairs(G.size() - 1);
        }
    }

    while (!pairs.empty()) {
        auto best = pairs.begin();
        for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
            if (std::tie(it->deg, it->sugar, it->i, it->j) <
                std::tie(best->deg, best->sugar, best->i, best->j))
                best = it;
        }
        detail::Pair pr = *best;
        pairs.erase(best);

        auto& fi = G[pr.i];
        auto& fj = G[pr.j];
        Monomial mi = mono_div(pr.lcm, fi.lead_m);
        Monomial mj = mono_div(pr.lcm, fj.lead_m);
        Polynomial ti(ctx), tj(ctx);
        ti.add_term(mi, Rational(1) / fi.lead_c);
        tj.add_term(mj, Rational(1) / fj.lead_c);
        Polynomial s = ti * fi.p - tj * fj.p;
        std::vector<Polynomial> rep;
        if (with_trace) {
            rep.assign(ngen, Polynomial::zero(ctx));
            for (std::size_t k = 0; k < ngen; ++k) rep[k] = ti * fi.rep[k] - tj * fj.rep[k];
        }
        long sugar = std::max(fi.sugar + mi.total_degree(), fj.sugar + mj.total_degree());
        auto w = nf_with_rep(std::move(s), std::move(rep), sugar);
        if (w) {
            G.push_back(std::move(*w));
            push_pairs(G.size() - 1);
        }
    }

    // interreduce to the unique reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < G.size(); ++i) {
            std::vector<std::size_t> others;
            for (std::size_t j = 0; j < G.size(); ++j)
                if (j != i) others.push_back(j);
            // reduce G[i] fully by the others
            Polynomial h = G[i].p;
            Polynomial rem = Polynomial::zero(ctx);
            std::vector<Polynomial> rep = G[i].rep;
            bool touched = false;
            while (!h.is_zero_poly()) {
                auto [hm, hc] = h.lead(ord);
                bool reduced = false;
                for (auto j : others) {
                    if (!mono_divides(G[j].lead_m, hm)) continue;
                    Monomial qm = mono_div(hm, G[j].lead_m);
                    Rational qc = hc / G[j].lead_c;
                    Polynomial t(ctx);
                    t.add_term(qm, qc);
                    h -= t * G[j].p;
                    if (with_trace)
                        for (std::size_t k = 0; k < ngen; ++k) rep[k] -= t * G[j].rep[k];
                    reduced = true;
                    touched = true;
                    break;
                }
                if (!reduced) {
                    Polynomial t(ctx);
                    t.add_term(hm, hc);
                    rem += t;
                    h -= t;
                }
            }
            if (rem.is_zero_poly()) {
                G.erase(G.begin() + (long)i);
                changed = true;
                break;
            }
            if (touched) {
                G[i].p = rem;
                auto [m, c] = rem.lead(ord);
                G[i].lead_m = m;
                G[i].lead_c = c;
                G[i].rep = std::move(rep);
                changed = true;
            }
        }
    }

    // monic scaling, canonical ordering by leading monomial
    for (auto& g : G) {
        Rational inv = Rational(1) / g.lead_c;
        g.p = inv * g.p;
        if (with_trace)
            for (auto& r : g.rep) r = Polynomial::constant(inv, ctx) * r;
        g.lead_c = Rational(1);
    }
    std::sort(G.begin(), G.end(), [&](const detail::WorkPoly& a, const detail::WorkPoly& b) {
        return ord.less(a.lead_m, b.lead_m);
    });
    for (auto& g : G) {
        out.basis.push_back(g.p);
        if (with_trace) out.reps.push_back(g.rep);
    }
    return out;
}

inline bool member(const Polynomial& p, const GroebnerBasis& gb) {
    return normal_form(p.embedded(gb.source.context), gb.basis, gb.order).remainder.is_zero_poly();
}

inline bool member(const Polynomial& p, const IdealPresentation& ideal,
                   const MonomialOrder& ord = MonomialOrder::degrevlex()) {
    if (p.is_zero_poly()) return true;
    if (ideal.generators.empty()) return false;
    return member(p, groebner(ideal, ord));
}

struct MembershipTrace {
    bool is_member = false;
    std::vector<Polynomial> cofactors;  // p = sum cofactors[k]*gen_k when member
};

// Membership with cofactors relative to the original generator list.
inline MembershipTrace member_with_cofactors(const Polynomial& p, const IdealPresentation& ideal,
                                             const MonomialOrder& ord = MonomialOrder::degrevlex()) {
    MembershipTrace out;
    if (p.is_zero_poly()) {
        out.is_member = true;
        out.cofactors.assign(ideal.generators.size(), Polynomial::zero(ideal.context));
        return out;
    }
    if (ideal.generators.empty()) return out;
    GroebnerBasis gb = groebner(ideal, ord, /*with_trace=*/true);
    NFResult nf = normal_form(p.embedded(ideal.context), gb.basis, ord, /*want_quotients=*/true);
    if (!nf.remainder.is_zero_poly()) return out;
    out.is_member = true;
    out.cofactors.assign(ideal.generators.size(), Polynomial::zero(ideal.context));
    for (std::size_t j = 0; j < gb.basis.size(); ++j) {
        if (nf.quotients[j].is_zero_poly()) continue;
        for (std::size_t k = 0; k < ideal.generators.size(); ++k)
            out.cofactors[k] += nf.quotients[j] * gb.reps[j][k];
    }
    return out;
}

} // namespace zmtforge
