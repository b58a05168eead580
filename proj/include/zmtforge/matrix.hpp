#pragma once

#include <vector>

#include "division.hpp"
#include "polynomial.hpp"

namespace zmtforge {

// Dense matrix of polynomials, row-major.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols, CtxPtr ctx)
        : rows_(rows), cols_(cols), ctx_(std::move(ctx)),
          entries_(rows * cols, Polynomial::zero(ctx_)) {}

    static PolyMatrix identity(std::size_t n, CtxPtr ctx) {
        PolyMatrix m(n, n, ctx);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = Polynomial::constant(Rational(1), m.ctx_);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const CtxPtr& context() const { return ctx_; }

    Polynomial& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    void set(std::size_t i, std::size_t j, const Polynomial& p) {
        auto u = context_union(ctx_, p.context());
        if (*u != *ctx_) {
            for (auto& e : entries_) e = e.embedded(u);
            ctx_ = u;
        }
        at(i, j) = p.embedded(ctx_);
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw ShapeError("matrix product shape");
        auto ctx = context_union(a.ctx_, b.ctx_);
        PolyMatrix r(a.rows_, b.cols_, ctx);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Polynomial aik = a.at(i, k).embedded(ctx);
                if (aik.is_zero_poly()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Polynomial bkj = b.at(k, j).embedded(ctx);
                    if (bkj.is_zero_poly()) continue;
                    r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum shape");
        auto ctx = context_union(a.ctx_, b.ctx_);
        PolyMatrix r(a.rows_, a.cols_, ctx);
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            r.entries_[i] = a.entries_[i].embedded(ctx) + b.entries_[i].embedded(ctx);
        return r;
    }

    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix diff shape");
        auto ctx = context_union(a.ctx_, b.ctx_);
        PolyMatrix r(a.rows_, a.cols_, ctx);
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            r.entries_[i] = a.entries_[i].embedded(ctx) - b.entries_[i].embedded(ctx);
        return r;
    }

    friend PolyMatrix operator*(const Polynomial& c, const PolyMatrix& a) {
        auto ctx = context_union(a.ctx_, c.context());
        PolyMatrix r(a.rows_, a.cols_, ctx);
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            r.entries_[i] = c.embedded(ctx) * a.entries_[i].embedded(ctx);
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    CtxPtr ctx_ = Polynomial::empty_ctx();
    std::vector<Polynomial> entries_;
};

// Fraction-free determinant (Bareiss). All intermediate divisions are exact
// in Q[vars].
inline Polynomial det_ff(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("det of non-square matrix");
    std::size_t n = m.rows();
    auto ctx = m.context();
    if (n == 0) return Polynomial::constant(Rational(1), ctx);
    std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n, Polynomial::zero(ctx)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    int sign = 1;
    Polynomial prev = Polynomial::constant(Rational(1), ctx);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero_poly()) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k].is_zero_poly()) ++piv;
            if (piv == n) return Polynomial::zero(ctx);
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = exact_divide(num, prev);
            }
            a[i][k] = Polynomial::zero(ctx);
        }
        prev = a[k][k];
    }
    Polynomial d = a[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

// Characteristic polynomial det(var*I - m), monic of degree = size, computed
// by the Faddeev-LeVerrier recurrence (integer divisions are exact over a
// Q-algebra).
inline Polynomial char_poly(const PolyMatrix& m, const std::string& var) {
    if (m.rows() != m.cols()) throw ShapeError("char_poly of non-square matrix");
    std::size_t n = m.rows();
    auto base_ctx = m.context();
    if (ctx_index(*base_ctx, var))
        throw ShapeError("char_poly: variable " + var + " already occurs in entries");
    auto ctx = context_union(base_ctx, make_context({var}));
    Polynomial t = Polynomial::variable(var, ctx);
    if (n == 0) return Polynomial::constant(Rational(1), ctx);

    auto trace = [&](const PolyMatrix& x) {
        Polynomial s = Polynomial::zero(base_ctx);
        for (std::size_t i = 0; i < x.rows(); ++i) s += x.at(i, i);
        return s;
    };

    std::vector<Polynomial> c(n + 1, Polynomial::zero(base_ctx));
    c[n] = Polynomial::constant(Rational(1), base_ctx);
    PolyMatrix mk = m;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            PolyMatrix adj = mk;
            for (std::size_t i = 0; i < n; ++i) adj.at(i, i) += c[n - k + 1];
            mk = m * adj;
        }
        c[n - k] = Rational(-1, (long)k) * trace(mk);
    }
    Polynomial p = Polynomial::zero(ctx);
    for (std::size_t k = 0; k <= n; ++k) p += c[k].embedded(ctx) * t.pow(k);
    return p;
}

} // namespace zmtforge
