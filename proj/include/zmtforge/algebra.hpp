#pragma once

#include <mutex>
#include <optional>
#include <utility>

#include "ideal_ops.hpp"

namespace zmtforge {

// How a presented Q-algebra is localized. Point-ideal localization (invert
// everything outside <listed vars> residually) is never materialized; all
// questions about it reduce to colon/saturation tests below.
struct Localization {
    enum class Kind { None, PointIdeal, Monoid } kind = Kind::None;
    std::vector<std::string> point_vars;      // PointIdeal: maximal ideal generators
    std::vector<Polynomial> monoid_elements;  // Monoid: inverted elements

    static Localization none() { return {}; }
    static Localization point_ideal(std::vector<std::string> vars) {
        Localization l;
        l.kind = Kind::PointIdeal;
        l.point_vars = std::move(vars);
        return l;
    }
    static Localization monoid(std::vector<Polynomial> elems) {
        Localization l;
        l.kind = Kind::Monoid;
        l.monoid_elements = std::move(elems);
        return l;
    }
};

// A finitely presented localized Q-algebra: Q[vars]/relations, localized per
// `local`. Values are immutable; the Groebner cache initializes once and is
// safe for concurrent readers.
class AlgebraPresentation {
public:
    AlgebraPresentation() : state_(std::make_shared<State>()) {}

    AlgebraPresentation(CtxPtr vars, IdealPresentation relations,
                        Localization local = Localization::none())
        : state_(std::make_shared<State>()) {
        state_->vars = std::move(vars);
        state_->relations = relations.embedded(state_->vars);
        state_->local = std::move(local);
    }

    static AlgebraPresentation polynomial_ring(std::vector<std::string> names) {
        auto ctx = make_context(std::move(names));
        return AlgebraPresentation(ctx, IdealPresentation(ctx, {}));
    }

    const CtxPtr& vars() const { return state_->vars; }
    const IdealPresentation& relations() const { return state_->relations; }
    const Localization& local() const { return state_->local; }

    bool same_presentation(const AlgebraPresentation& o) const { return state_ == o.state_; }

    const GroebnerBasis& gb() const {
        std::call_once(state_->once, [&] {
            state_->gb = std::make_shared<GroebnerBasis>(
                groebner(state_->relations, MonomialOrder::degrevlex()));
        });
        return *state_->gb;
    }

    Polynomial nf(const Polynomial& p) const {
        if (state_->relations.generators.empty()) return p.embedded(state_->vars);
        return normal_form(p.embedded(state_->vars), gb().basis, gb().order).remainder;
    }

    // ideal of the localization's "denominator-permitting" data
    IdealPresentation point_ideal() const {
        std::vector<Polynomial> gens;
        for (auto& v : state_->local.point_vars)
            gens.push_back(Polynomial::variable(v, state_->vars));
        return IdealPresentation(state_->vars, std::move(gens));
    }

    Polynomial monoid_product() const {
        Polynomial prod = Polynomial::constant(Rational(1), state_->vars);
        for (auto& f : state_->local.monoid_elements) prod *= f.embedded(state_->vars);
        return prod;
    }

    // p == 0 in the localized algebra
    bool is_zero(const Polynomial& p) const {
        Polynomial r = nf(p);
        if (r.is_zero_poly()) return true;
        switch (state_->local.kind) {
            case Localization::Kind::None:
                return false;
            case Localization::Kind::Monoid:
                return member(r, saturate(state_->relations, monoid_product()));
            case Localization::Kind::PointIdeal: {
                IdealPresentation q = colon(state_->relations, r).plus(point_ideal());
                return groebner(q, MonomialOrder::degrevlex()).is_trivial();
            }
        }
        return false;
    }

    // p ∈ ideal·B_loc  (ideal given by generators over the same vars)
    bool in_ideal(const Polynomial& p, const IdealPresentation& ideal) const {
        IdealPresentation full = ideal.embedded(state_->vars).plus(state_->relations);
        Polynomial r = nf(p);
        if (member(r, full)) return true;
        switch (state_->local.kind) {
            case Localization::Kind::None:
                return false;
            case Localization::Kind::Monoid:
                return member(r, saturate(full, monoid_product()));
            case Localization::Kind::PointIdeal: {
                IdealPresentation q = colon(full, r).plus(point_ideal());
                return groebner(q, MonomialOrder::degrevlex()).is_trivial();
            }
        }
        return false;
    }

    // p a unit of the localized algebra
    bool is_unit(const Polynomial& p) const {
        Polynomial r = nf(p);
        if (r.is_zero_poly()) return false;
        switch (state_->local.kind) {
            case Localization::Kind::None:
                return groebner(state_->relations.plus({r}), MonomialOrder::degrevlex())
                    .is_trivial();
            case Localization::Kind::Monoid:
                return groebner(saturate(state_->relations.plus({r}), monoid_product()),
                                MonomialOrder::degrevlex())
                    .is_trivial();
            case Localization::Kind::PointIdeal:
                return groebner(state_->relations.plus({r}).plus(point_ideal()),
                                MonomialOrder::degrevlex())
                    .is_trivial();
        }
        return false;
    }

private:
    struct State {
        CtxPtr vars = Polynomial::empty_ctx();
        IdealPresentation relations;
        Localization local;
        std::once_flag once;
        std::shared_ptr<GroebnerBasis> gb;
    };
    std::shared_ptr<State> state_;
};

// u ∈ ideal·B_{1+monoid_ideal}, exponent-free:
//   1 ∈ ((ideal + relations) : u) + monoid_ideal
// covers membership questions in localizations at 1 + M_B even when the
// presentation itself is unlocalized.
inline bool local_member(const Polynomial& u, const IdealPresentation& ideal,
                         const IdealPresentation& monoid_ideal,
                         const AlgebraPresentation& owner) {
    IdealPresentation full = ideal.embedded(owner.vars()).plus(owner.relations());
    Polynomial r = owner.nf(u);
    if (r.is_zero_poly()) return true;
    if (member(r, full)) return true;
    IdealPresentation q = colon(full, r).plus(monoid_ideal.embedded(owner.vars()));
    return groebner(q, MonomialOrder::degrevlex()).is_trivial();
}

// Element of a presented algebra: numerator / denominator with the
// denominator a unit of the localization.
class AlgebraElement {
public:
    AlgebraElement() = default;

    AlgebraElement(AlgebraPresentation owner, Polynomial num)
        : owner_(std::move(owner)), num_(num.embedded(owner_.vars())),
          den_(Polynomial::constant(Rational(1), owner_.vars())) {}

    // checked constructor: verifies the denominator is a unit
    AlgebraElement(AlgebraPresentation owner, Polynomial num, Polynomial den)
        : owner_(std::move(owner)), num_(num.embedded(owner_.vars())),
          den_(den.embedded(owner_.vars())) {
        if (!owner_.is_unit(den_))
            throw ShapeError("AlgebraElement denominator is not a unit: " + to_string(den_));
    }

    static AlgebraElement unchecked(AlgebraPresentation owner, Polynomial num, Polynomial den) {
        AlgebraElement e;
        e.owner_ = std::move(owner);
        e.num_ = num.embedded(e.owner_.vars());
        e.den_ = den.embedded(e.owner_.vars());
        return e;
    }

    const AlgebraPresentation& owner() const { return owner_; }
    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool has_trivial_denominator() const {
        return den_.is_constant_poly() && is_one(den_.constant_value());
    }

    bool is_zero() const { return owner_.is_zero(num_); }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
        a.check_owner(b);
        return unchecked(a.owner_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
        a.check_owner(b);
        return unchecked(a.owner_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
        a.check_owner(b);
        return unchecked(a.owner_, a.num_ * b.num_, a.den_ * b.den_);
    }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        a.check_owner(b);
        return a.owner_.is_zero(a.num_ * b.den_ - b.num_ * a.den_);
    }

private:
    void check_owner(const AlgebraElement& o) const {
        if (!owner_.same_presentation(o.owner_))
            throw ShapeError("AlgebraElement owners differ");
    }
    AlgebraPresentation owner_;
    Polynomial num_, den_;
};

// ----- subalgebra membership -----

struct SubalgWitness {
    bool is_member = false;
    Polynomial expression;          // polynomial in the tag variables
    std::vector<std::string> tags;  // tag names, parallel to the generator list
    CtxPtr tag_context;
};

// u ∈ Q-subalgebra generated by gens inside owner (no localization). Realized
// by tag variables, relations + <tag_j - gen_j>, a block order eliminating the
// owner variables, and a normal-form purity check. The witness reproduces u
// modulo relations when the generators are substituted back.
inline SubalgWitness subalg_member(const Polynomial& u, const std::vector<Polynomial>& gens,
                                   const AlgebraPresentation& owner) {
    const CtxPtr& base = owner.vars();
    std::vector<std::string> tags;
    std::vector<std::string> names = *base;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::string t = fresh_var(*make_context(names), "zt" + std::to_string(j));
        tags.push_back(t);
        names.push_back(t);
    }
    auto ectx = make_context(names);
    std::vector<Polynomial> rel;
    for (auto& g : owner.relations().generators) rel.push_back(g.embedded(ectx));
    for (std::size_t j = 0; j < gens.size(); ++j)
        rel.push_back(Polynomial::variable(tags[j], ectx) - gens[j].embedded(ectx));
    std::vector<std::size_t> elim_pos;
    for (auto& v : *base) elim_pos.push_back(*ctx_index(*ectx, v));
    MonomialOrder ord = MonomialOrder::block_elim(elim_pos);
    GroebnerBasis gb = groebner(IdealPresentation(ectx, std::move(rel)), ord);
    Polynomial r = normal_form(u.embedded(ectx), gb.basis, ord).remainder;
    SubalgWitness w;
    w.tags = tags;
    w.tag_context = make_context(tags);
    for (auto& v : *base)
        if (r.depends_on(v)) return w;  // not a member
    w.is_member = true;
    w.expression = r.embedded(w.tag_context);
    return w;
}

// substitute generators back into a subalgebra witness
inline Polynomial subalg_witness_value(const SubalgWitness& w, const std::vector<Polynomial>& gens,
                                       const CtxPtr& target_ctx) {
    std::map<std::string, Polynomial> bind;
    for (std::size_t j = 0; j < w.tags.size(); ++j) bind[w.tags[j]] = gens[j].embedded(target_ctx);
    auto ctx = context_union(w.tag_context, target_ctx);
    return substitute(w.expression.embedded(ctx), bind).embedded(target_ctx);
}

} // namespace zmtforge
