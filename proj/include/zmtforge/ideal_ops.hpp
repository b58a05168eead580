#pragma once

#include <optional>

#include "division.hpp"
#include "groebner.hpp"

namespace zmtforge {

// Membership in the radical via Rabinowitsch; on success also searches the
// smallest exponent k <= exp_cap with p^k in the ideal.
struct RadicalResult {
    bool is_member = false;
    std::optional<int> exponent;  // nullopt: member, but exponent search hit the cap
};

inline RadicalResult radical_member(const Polynomial& p, const IdealPresentation& ideal) {
    RadicalResult out;
    if (p.is_zero_poly()) {
        out.is_member = true;
        out.exponent = 1;
        return out;
    }
    auto ctx = context_union(ideal.context, p.context());
    std::string t = fresh_var(*ctx, "zrab");
    auto ectx = context_union(ctx, make_context({t}));
    Polynomial tv = Polynomial::variable(t, ectx);
    std::vector<Polynomial> gens;
    for (auto& g : ideal.generators) gens.push_back(g.embedded(ectx));
    gens.push_back(Polynomial::constant(Rational(1), ectx) - tv * p.embedded(ectx));
    GroebnerBasis gb = groebner(IdealPresentation(ectx, std::move(gens)), MonomialOrder::degrevlex());
    if (!gb.is_trivial()) return out;
    out.is_member = true;

    GroebnerBasis base = groebner(ideal.embedded(ctx), MonomialOrder::degrevlex());
    Polynomial q = Polynomial::constant(Rational(1), ctx);
    for (int k = 1; k <= caps().exp_cap; ++k) {
        q = normal_form(q * p.embedded(ctx), base.basis, base.order).remainder;
        if (q.is_zero_poly()) {
            out.exponent = k;
            return out;
        }
    }
    return out;  // member, exponent unknown
}

// (ideal : f^inf) via elimination of the Rabinowitsch variable.
inline IdealPresentation saturate(const IdealPresentation& ideal, const Polynomial& f) {
    if (f.is_zero_poly()) throw ShapeError("saturate by zero");
    auto ctx = context_union(ideal.context, f.context());
    std::string t = fresh_var(*ctx, "zsat");
    auto ectx = context_union(ctx, make_context({t}));
    Polynomial tv = Polynomial::variable(t, ectx);
    std::vector<Polynomial> gens;
    for (auto& g : ideal.generators) gens.push_back(g.embedded(ectx));
    gens.push_back(Polynomial::constant(Rational(1), ectx) - tv * f.embedded(ectx));
    auto tpos = ctx_index(*ectx, t);
    MonomialOrder ord = MonomialOrder::block_elim({*tpos});
    GroebnerBasis gb = groebner(IdealPresentation(ectx, std::move(gens)), ord);
    std::vector<Polynomial> kept;
    for (auto& g : gb.basis)
        if (!g.depends_on(t)) kept.push_back(g.embedded(ctx));
    return IdealPresentation(ctx, std::move(kept));
}

// generators of ideal  ∩  Q[context \ drop]
inline IdealPresentation eliminate(const IdealPresentation& ideal,
                                   const std::vector<std::string>& drop) {
    std::vector<std::size_t> pos;
    for (auto& v : drop) {
        auto idx = ctx_index(*ideal.context, v);
        if (idx) pos.push_back(*idx);
    }
    if (pos.empty()) return ideal;
    MonomialOrder ord = MonomialOrder::block_elim(pos);
    GroebnerBasis gb = groebner(ideal, ord);
    std::vector<std::string> remaining;
    for (auto& v : *ideal.context)
        if (std::find(drop.begin(), drop.end(), v) == drop.end()) remaining.push_back(v);
    auto rctx = make_context(remaining);
    std::vector<Polynomial> kept;
    for (auto& g : gb.basis) {
        bool uses_dropped = false;
        for (auto& v : drop)
            if (g.depends_on(v)) { uses_dropped = true; break; }
        if (!uses_dropped) kept.push_back(g.embedded(rctx));
    }
    return IdealPresentation(rctx, std::move(kept));
}

inline IdealPresentation intersect(const IdealPresentation& a, const IdealPresentation& b) {
    auto ctx = context_union(a.context, b.context);
    std::string t = fresh_var(*ctx, "zmix");
    auto ectx = context_union(ctx, make_context({t}));
    Polynomial tv = Polynomial::variable(t, ectx);
    Polynomial one_minus = Polynomial::constant(Rational(1), ectx) - tv;
    std::vector<Polynomial> gens;
    for (auto& g : a.generators) gens.push_back(tv * g.embedded(ectx));
    for (auto& g : b.generators) gens.push_back(one_minus * g.embedded(ectx));
    IdealPresentation mixed(ectx, std::move(gens));
    auto elim = eliminate(mixed, {t});
    return elim.embedded(ctx);
}

// (ideal : u) for a single element, via intersection with <u> and exact division.
inline IdealPresentation colon(const IdealPresentation& ideal, const Polynomial& u) {
    if (u.is_zero_poly()) throw ShapeError("colon by zero");
    auto ctx = context_union(ideal.context, u.context());
    IdealPresentation uid(ctx, {u});
    IdealPresentation inter = intersect(ideal.embedded(ctx), uid);
    std::vector<Polynomial> quots;
    for (auto& g : inter.generators) quots.push_back(exact_divide(g, u.embedded(ctx)));
    return IdealPresentation(ctx, std::move(quots));
}

// all k-fold products of the generators
inline IdealPresentation ideal_power(const IdealPresentation& ideal, int k) {
    if (k <= 0)
        return IdealPresentation(ideal.context,
                                 {Polynomial::constant(Rational(1), ideal.context)});
    std::vector<Polynomial> cur = ideal.generators;
    for (int i = 1; i < k; ++i) {
        std::vector<Polynomial> next;
        for (auto& a : cur)
            for (auto& g : ideal.generators) next.push_back(a * g);
        cur = std::move(next);
    }
    return IdealPresentation(ideal.context, std::move(cur));
}

inline bool ideal_contains(const IdealPresentation& big, const IdealPresentation& small_,
                           const MonomialOrder& ord = MonomialOrder::degrevlex()) {
    if (small_.generators.empty()) return true;
    GroebnerBasis gb = groebner(big.embedded(context_union(big.context, small_.context)), ord);
    for (auto& g : small_.generators)
        if (!member(g, gb)) return false;
    return true;
}

inline bool ideal_equal(const IdealPresentation& a, const IdealPresentation& b) {
    return ideal_contains(a, b) && ideal_contains(b, a);
}

} // namespace zmtforge
