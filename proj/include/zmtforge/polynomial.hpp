#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "monomial.hpp"
#include "rational.hpp"

namespace zmtforge {

// Variable context: sorted, deduplicated list of names. Contexts are unified
// by name, alphabetically stable, so serialized results are reproducible.
using VarContext = std::vector<std::string>;
using CtxPtr = std::shared_ptr<const VarContext>;

inline CtxPtr make_context(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return std::make_shared<const VarContext>(std::move(names));
}

inline CtxPtr context_union(const CtxPtr& a, const CtxPtr& b) {
    if (a == b) return a;
    if (*a == *b) return a;
    std::vector<std::string> u;
    u.reserve(a->size() + b->size());
    std::set_union(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(u));
    if (u == *a) return a;
    if (u == *b) return b;
    return std::make_shared<const VarContext>(std::move(u));
}

inline std::optional<std::size_t> ctx_index(const VarContext& ctx, const std::string& name) {
    auto it = std::lower_bound(ctx.begin(), ctx.end(), name);
    if (it != ctx.end() && *it == name) return std::size_t(it - ctx.begin());
    return std::nullopt;
}

// Sparse multivariate polynomial over Q. No zero coefficients are stored, so
// the term map is a canonical form for a given context.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() : ctx_(empty_ctx()) {}
    explicit Polynomial(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    static Polynomial zero(CtxPtr ctx) { return Polynomial(std::move(ctx)); }

    static Polynomial constant(const Rational& c, CtxPtr ctx) {
        Polynomial p(std::move(ctx));
        if (!is_zero(c)) p.terms_[Monomial(p.ctx_->size())] = c;
        return p;
    }

    static Polynomial constant(const Rational& c) { return constant(c, empty_ctx()); }

    static Polynomial variable(const std::string& name, CtxPtr ctx) {
        auto idx = ctx_index(*ctx, name);
        if (!idx) throw UnknownVariable("variable not in context: " + name);
        Polynomial p(std::move(ctx));
        Monomial m(p.ctx_->size());
        m[*idx] = 1;
        p.terms_[m] = Rational(1);
        return p;
    }

    static Polynomial variable(const std::string& name) {
        return variable(name, make_context({name}));
    }

    const CtxPtr& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero_poly() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant_poly() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        auto it = terms_.find(Monomial(ctx_->size()));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    long total_degree() const {
        long d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    // Re-express in another context; the target must contain every variable
    // this polynomial actually uses (unused context slots are dropped).
    Polynomial embedded(const CtxPtr& target) const {
        if (target == ctx_ || *target == *ctx_) {
            Polynomial p = *this;
            p.ctx_ = target;
            return p;
        }
        std::vector<std::optional<std::size_t>> pos(ctx_->size());
        for (std::size_t i = 0; i < ctx_->size(); ++i) pos[i] = ctx_index(*target, (*ctx_)[i]);
        Polynomial p(target);
        for (auto& [m, c] : terms_) {
            Monomial mm(target->size());
            for (std::size_t i = 0; i < ctx_->size(); ++i) {
                if (m[i] == 0) continue;
                if (!pos[i])
                    throw UnknownVariable("embed: target context misses " + (*ctx_)[i]);
                mm[*pos[i]] = m[i];
            }
            p.add_term(mm, c);
        }
        return p;
    }

    // Drop unused variables (used when returning elimination results).
    Polynomial restricted(const CtxPtr& target) const { return embedded(target); }

    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r(a.ctx_);
        for (auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        auto ctx = context_union(a.ctx_, b.ctx_);
        Polynomial x = a.embedded(ctx), y = b.embedded(ctx);
        for (auto& [m, c] : y.terms_) x.add_term(m, c);
        return x;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        auto ctx = context_union(a.ctx_, b.ctx_);
        Polynomial x = a.embedded(ctx), y = b.embedded(ctx);
        for (auto& [m, c] : y.terms_) x.add_term(m, -c);
        return x;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        auto ctx = context_union(a.ctx_, b.ctx_);
        Polynomial x = a.embedded(ctx), y = b.embedded(ctx);
        long da = x.total_degree(), db = y.total_degree();
        if (da >= 0 && db >= 0 && da + db > caps().degree_cap)
            throw DegreeCapExceeded("product degree " + std::to_string(da + db));
        Polynomial r(ctx);
        for (auto& [ma, ca] : x.terms_)
            for (auto& [mb, cb] : y.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& a) {
        Polynomial r(a.ctx_);
        if (is_zero(c)) return r;
        for (auto& [m, q] : a.terms_) r.terms_.emplace(m, c * q);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(unsigned long e) const {
        long d = total_degree();
        if (d > 0 && d * (long)e > caps().degree_cap)
            throw DegreeCapExceeded("power degree " + std::to_string(d * (long)e));
        Polynomial r = constant(Rational(1), ctx_);
        Polynomial base = *this;
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (*a.ctx_ == *b.ctx_) return a.terms_ == b.terms_;
        auto ctx = context_union(a.ctx_, b.ctx_);
        return a.embedded(ctx).terms_ == b.embedded(ctx).terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // ----- univariate views -----

    long degree_in(std::size_t var_pos) const {
        long d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, (long)m[var_pos]);
        return d;
    }

    long degree_in(const std::string& name) const {
        auto idx = ctx_index(*ctx_, name);
        if (!idx) return terms_.empty() ? -1 : 0;
        return degree_in(*idx);
    }

    // coefficient of var^k, a polynomial in the same context with var erased
    Polynomial coeff_of(std::size_t var_pos, uint32_t k) const {
        Polynomial r(ctx_);
        for (auto& [m, c] : terms_) {
            if (m[var_pos] != k) continue;
            Monomial mm = m;
            mm[var_pos] = 0;
            r.add_term(mm, c);
        }
        return r;
    }

    Polynomial coeff_of(const std::string& name, uint32_t k) const {
        auto idx = ctx_index(*ctx_, name);
        if (!idx) throw UnknownVariable("coeff_of: " + name);
        return coeff_of(*idx, k);
    }

    std::vector<Polynomial> coeff_list(const std::string& name) const {
        auto idx = ctx_index(*ctx_, name);
        if (!idx) throw UnknownVariable("coeff_list: " + name);
        long d = degree_in(*idx);
        std::vector<Polynomial> cs;
        for (long k = 0; k <= std::max(d, 0L); ++k) cs.push_back(coeff_of(*idx, (uint32_t)k));
        return cs;
    }

    bool depends_on(const std::string& name) const {
        auto idx = ctx_index(*ctx_, name);
        if (!idx) return false;
        for (auto& [m, c] : terms_)
            if (m[*idx] > 0) return true;
        return false;
    }

    std::vector<std::string> used_vars() const {
        std::vector<std::string> vs;
        for (std::size_t i = 0; i < ctx_->size(); ++i) {
            for (auto& [m, c] : terms_) {
                if (m[i] > 0) { vs.push_back((*ctx_)[i]); break; }
            }
        }
        return vs;
    }

    // leading term with respect to an order
    std::pair<Monomial, Rational> lead(const MonomialOrder& ord) const {
        if (terms_.empty()) throw ShapeError("lead of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (ord.less(best->first, it->first)) best = it;
        return {best->first, best->second};
    }

    Polynomial monic_scaled(const MonomialOrder& ord) const {
        if (terms_.empty()) return *this;
        auto [m, c] = lead(ord);
        return (Rational(1) / c) * (*this);
    }

    static CtxPtr empty_ctx() {
        static CtxPtr e = std::make_shared<const VarContext>();
        return e;
    }

private:
    CtxPtr ctx_;
    TermMap terms_;
};

// Sum_k coeffs[k] * var^k
inline Polynomial poly_from_coeffs(const std::string& var, const std::vector<Polynomial>& coeffs) {
    CtxPtr ctx = make_context({var});
    for (auto& c : coeffs) ctx = context_union(ctx, c.context());
    Polynomial x = Polynomial::variable(var, ctx);
    Polynomial r = Polynomial::zero(ctx);
    Polynomial xp = Polynomial::constant(Rational(1), ctx);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        r += coeffs[k].embedded(ctx) * xp;
        if (k + 1 < coeffs.size()) xp = xp * x;
    }
    return r;
}

// Simultaneous substitution; respects + and *. Binding names must occur in the
// context of p. Variables without a binding are kept.
inline Polynomial substitute(const Polynomial& p,
                             const std::map<std::string, Polynomial>& bindings) {
    const auto& ctx = *p.context();
    for (auto& [name, val] : bindings)
        if (!ctx_index(ctx, name)) throw UnknownVariable("substitute: " + name);

    CtxPtr target = Polynomial::empty_ctx();
    std::vector<std::string> kept;
    for (auto& v : ctx)
        if (!bindings.count(v)) kept.push_back(v);
    target = make_context(kept);
    for (auto& [name, val] : bindings) target = context_union(target, val.context());

    // per-variable power cache
    std::vector<std::vector<Polynomial>> powers(ctx.size());
    auto var_power = [&](std::size_t i, uint32_t e) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) {
            cache.push_back(Polynomial::constant(Rational(1), target));
            auto it = bindings.find(ctx[i]);
            if (it != bindings.end())
                cache.push_back(it->second.embedded(target));
            else
                cache.push_back(Polynomial::variable(ctx[i], target));
        }
        while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
        return cache[e];
    };

    Polynomial r = Polynomial::zero(target);
    for (auto& [m, c] : p.terms()) {
        Polynomial term = Polynomial::constant(c, target);
        for (std::size_t i = 0; i < ctx.size(); ++i)
            if (m[i] > 0) term = term * var_power(i, m[i]);
        r += term;
    }
    return r;
}

inline Polynomial derivative(const Polynomial& p, const std::string& var) {
    auto idx = ctx_index(*p.context(), var);
    if (!idx) return Polynomial::zero(p.context());
    Polynomial r(p.context());
    for (auto& [m, c] : p.terms()) {
        if (m[*idx] == 0) continue;
        Monomial mm = m;
        mm[*idx] -= 1;
        r.add_term(mm, c * Rational((long)m[*idx]));
    }
    return r;
}

inline Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point) {
    const auto& ctx = *p.context();
    std::vector<Rational> vals(ctx.size());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        auto it = point.find(ctx[i]);
        if (it == point.end()) {
            if (p.depends_on(ctx[i])) throw UnknownVariable("evaluate: missing " + ctx[i]);
            vals[i] = 0;
        } else {
            vals[i] = it->second;
        }
    }
    Rational acc(0);
    for (auto& [m, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < ctx.size(); ++i)
            if (m[i] > 0) t *= rat_pow(vals[i], m[i]);
        acc += t;
    }
    return acc;
}

// ----- printing -----

// Canonical text form: terms in descending degrevlex, integer or num/den
// coefficients, explicit '*' between factors and '^' for powers. Parsing and
// printing round-trip exactly.
inline std::string to_string(const Polynomial& p) {
    if (p.is_zero_poly()) return "0";
    const auto& ctx = *p.context();
    MonomialOrder ord = MonomialOrder::degrevlex();
    std::vector<const std::pair<const Monomial, Rational>*> ts;
    for (auto& t : p.terms()) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(),
              [&](auto* a, auto* b) { return ord.less(b->first, a->first); });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        Rational c = t->second;
        bool neg = sgn(c) < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Rational a = abs(c);
        std::vector<std::string> factors;
        if (a != 1 || t->first.is_constant()) factors.push_back(rat_to_string(a));
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            if (t->first[i] == 0) continue;
            if (t->first[i] == 1)
                factors.push_back(ctx[i]);
            else
                factors.push_back(ctx[i] + "^" + std::to_string(t->first[i]));
        }
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (k) os << "*";
            os << factors[k];
        }
    }
    return os.str();
}

// ----- parsing -----

namespace detail {

struct PolyParser {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1, col = 1;
    CtxPtr ctx;

    PolyParser(const std::string& s, CtxPtr c) : src(s), ctx(std::move(c)) {}

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

    void advance() {
        if (src[pos] == '\n') { ++line; col = 1; } else { ++col; }
        ++pos;
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace((unsigned char)src[pos])) advance();
    }

    bool peek_is(char c) {
        skip_ws();
        return pos < src.size() && src[pos] == c;
    }

    bool eat(char c) {
        if (peek_is(c)) { advance(); return true; }
        return false;
    }

    Polynomial parse() {
        Polynomial r = parse_expr();
        skip_ws();
        if (pos != src.size()) fail("unexpected trailing input");
        return r;
    }

    Polynomial parse_expr() {
        skip_ws();
        bool neg = false;
        while (true) {
            if (eat('-')) { neg = !neg; continue; }
            if (eat('+')) continue;
            break;
        }
        Polynomial r = parse_term();
        if (neg) r = -r;
        while (true) {
            skip_ws();
            if (eat('+')) {
                r += parse_term();
            } else if (eat('-')) {
                r -= parse_term();
            } else {
                break;
            }
        }
        return r;
    }

    Polynomial parse_term() {
        Polynomial r = parse_power();
        while (true) {
            skip_ws();
            if (eat('*')) {
                skip_ws();
                r = r * parse_power();
            } else {
                break;
            }
        }
        return r;
    }

    Polynomial parse_power() {
        Polynomial base = parse_atom();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            if (pos >= src.size() || !std::isdigit((unsigned char)src[pos]))
                fail("expected exponent");
            unsigned long e = 0;
            while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
                e = e * 10 + (unsigned long)(src[pos] - '0');
                if (e > 100000) fail("exponent too large");
                advance();
            }
            return base.pow(e);
        }
        return base;
    }

    Polynomial parse_atom() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of input");
        char c = src[pos];
        if (c == '(') {
            advance();
            Polynomial r = parse_expr();
            skip_ws();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == '-') {  // unary minus inside a factor
            advance();
            return -parse_atom();
        }
        if (std::isdigit((unsigned char)c)) {
            std::string num;
            while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
                num += src[pos];
                advance();
            }
            // optional /den for rational constants
            std::size_t save = pos;
            int sl = line, sc = col;
            skip_ws();
            if (pos < src.size() && src[pos] == '/') {
                advance();
                skip_ws();
                std::string den;
                while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
                    den += src[pos];
                    advance();
                }
                if (den.empty()) fail("expected denominator");
                return Polynomial::constant(rat_from_string(num + "/" + den), ctx);
            }
            pos = save; line = sl; col = sc;
            return Polynomial::constant(rat_from_string(num), ctx);
        }
        if (std::isalpha((unsigned char)c)) {
            std::string name;
            while (pos < src.size() &&
                   (std::isalnum((unsigned char)src[pos]) || src[pos] == '_')) {
                name += src[pos];
                advance();
            }
            if (!ctx_index(*ctx, name))
                throw ParseError("unknown variable '" + name + "'", line, col);
            return Polynomial::variable(name, ctx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace detail

inline Polynomial parse_polynomial(const std::string& text, const CtxPtr& ctx) {
    detail::PolyParser p(text, ctx);
    return p.parse();
}

} // namespace zmtforge
