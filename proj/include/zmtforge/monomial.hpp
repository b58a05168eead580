#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace zmtforge {

// Exponent vector, indexed by variable position in the ambient context.
// Length always equals the context's variable count.
struct Monomial {
    std::vector<uint32_t> e;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e(nvars, 0) {}

    std::size_t size() const { return e.size(); }
    uint32_t operator[](std::size_t i) const { return e[i]; }
    uint32_t& operator[](std::size_t i) { return e[i]; }

    long total_degree() const {
        long d = 0;
        for (auto x : e) d += x;
        return d;
    }

    bool is_constant() const {
        return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    // storage order only; semantic comparisons go through MonomialOrder
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    // a | b
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.e[i] > b.e[i]) throw ShapeError("monomial division not exact");
        r.e[i] = b.e[i] - a.e[i];
    }
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.e[i] > 0 && b.e[i] > 0) return false;
    return true;
}

// Total multiplicative orders on monomials. Position 0 is the biggest
// variable. Block orders compare the designated block first (degrevlex on the
// block), then the remaining positions; they eliminate the block variables.
struct MonomialOrder {
    enum class Kind { Degrevlex, Lex, Block } kind = Kind::Degrevlex;
    std::vector<std::size_t> block;  // positions of the eliminated block, ascending

    static MonomialOrder degrevlex() { return {Kind::Degrevlex, {}}; }
    static MonomialOrder lex() { return {Kind::Lex, {}}; }
    static MonomialOrder block_elim(std::vector<std::size_t> positions) {
        std::sort(positions.begin(), positions.end());
        return {Kind::Block, std::move(positions)};
    }

    // degrevlex on a position subset: higher total degree wins, ties broken by
    // the smallest exponent-from-the-right rule.
    static int cmp_drl(const Monomial& a, const Monomial& b,
                       const std::vector<std::size_t>& pos) {
        long da = 0, db = 0;
        for (auto i : pos) { da += a.e[i]; db += b.e[i]; }
        if (da != db) return da < db ? -1 : 1;
        for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
            if (a.e[*it] != b.e[*it]) return a.e[*it] > b.e[*it] ? -1 : 1;
        }
        return 0;
    }

    // returns -1, 0, 1 for a < b, a == b, a > b
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case Kind::Lex: {
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
                return 0;
            }
            case Kind::Degrevlex: {
                long da = a.total_degree(), db = b.total_degree();
                if (da != db) return da < db ? -1 : 1;
                for (std::size_t i = a.size(); i-- > 0;)
                    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
                return 0;
            }
            case Kind::Block: {
                if (int c = cmp_drl(a, b, block)) return c;
                std::vector<std::size_t> rest;
                rest.reserve(a.size());
                std::size_t bi = 0;
                for (std::size_t i = 0; i < a.size(); ++i) {
                    if (bi < block.size() && block[bi] == i) { ++bi; continue; }
                    rest.push_back(i);
                }
                return cmp_drl(a, b, rest);
            }
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
};

} // namespace zmtforge
