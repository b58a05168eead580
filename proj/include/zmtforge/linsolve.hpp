#pragma once

#include <map>
#include <optional>
#include <vector>

#include "groebner.hpp"

namespace zmtforge {

// Solve target == sum_i c_i * candidates_i modulo a Groebner basis, for
// rational unknowns c_i. Everything is reduced to normal form first, so the
// problem becomes exact linear algebra over Q on the monomial support.
inline std::optional<std::vector<Rational>> solve_combination(
    const Polynomial& target, const std::vector<Polynomial>& candidates,
    const GroebnerBasis& gb) {
    CtxPtr ctx = target.context();
    for (auto& c : candidates) ctx = context_union(ctx, c.context());
    ctx = context_union(ctx, gb.source.context);

    auto reduce = [&](const Polynomial& p) {
        if (gb.basis.empty()) return p.embedded(ctx);
        return normal_form(p.embedded(ctx), gb.basis, gb.order).remainder;
    };

    Polynomial t = reduce(target);
    std::vector<Polynomial> cs;
    cs.reserve(candidates.size());
    for (auto& c : candidates) cs.push_back(reduce(c));

    std::map<Monomial, std::size_t> row_of;
    auto row_index = [&](const Monomial& m) {
        auto [it, fresh] = row_of.emplace(m, row_of.size());
        return it->second;
    };
    for (auto& [m, c] : t.terms()) row_index(m);
    for (auto& p : cs)
        for (auto& [m, c] : p.terms()) row_index(m);

    const std::size_t rows = row_of.size(), cols = cs.size();
    if (rows == 0) return std::vector<Rational>(cols, Rational(0));

    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1, Rational(0)));
    for (std::size_t j = 0; j < cols; ++j)
        for (auto& [m, c] : cs[j].terms()) a[row_of[m]][j] = c;
    for (auto& [m, c] : t.terms()) a[row_of[m]][cols] = c;

    // Gaussian elimination to reduced row echelon on the augmented matrix
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && is_zero(a[piv][col])) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        Rational inv = Rational(1) / a[r][col];
        for (std::size_t j = col; j <= cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(a[i][col])) continue;
            Rational f = a[i][col];
            for (std::size_t j = col; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col_of_row.push_back(col);
        ++r;
    }
    // consistency: no row 0 = nonzero
    for (std::size_t i = r; i < rows; ++i)
        if (!is_zero(a[i][cols])) return std::nullopt;

    std::vector<Rational> sol(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) sol[pivot_col_of_row[i]] = a[i][cols];
    return sol;
}

// All monomials in `vars` (as polynomials over ctx) of total degree <= deg.
inline std::vector<Polynomial> monomial_basis(const std::vector<std::string>& vars, int deg,
                                              const CtxPtr& ctx) {
    std::vector<Polynomial> out;
    out.push_back(Polynomial::constant(Rational(1), ctx));
    std::vector<Polynomial> xs;
    for (auto& v : vars) xs.push_back(Polynomial::variable(v, ctx));
    std::vector<std::vector<uint32_t>> stack{{std::vector<uint32_t>(vars.size(), 0)}};
    // iterate exponent tuples in graded lexicographic order
    std::vector<uint32_t> e(vars.size(), 0);
    long n = (long)vars.size();
    if (n == 0) return out;
    while (true) {
        // advance to next tuple with total degree <= deg
        long i = n - 1;
        while (true) {
            ++e[(std::size_t)i];
            long total = 0;
            for (auto x : e) total += x;
            if (total <= deg) break;
            e[(std::size_t)i] = 0;
            --i;
            if (i < 0) return out;
        }
        Polynomial m = Polynomial::constant(Rational(1), ctx);
        for (std::size_t k = 0; k < vars.size(); ++k)
            if (e[k]) m = m * xs[k].pow(e[k]);
        out.push_back(m);
    }
}

// Small dense rational matrix inverse; returns nullopt when singular.
inline std::optional<std::vector<std::vector<Rational>>> rational_inverse(
    std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && is_zero(m[piv][col])) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[col], m[piv]);
        std::swap(inv[col], inv[piv]);
        Rational d = Rational(1) / m[col][col];
        for (std::size_t j = 0; j < n; ++j) { m[col][j] *= d; inv[col][j] *= d; }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || is_zero(m[i][col])) continue;
            Rational f = m[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace zmtforge
