#pragma once

#include <vector>

#include "algebra.hpp"
#include "division.hpp"
#include "matrix.hpp"

namespace zmtforge {

// Universal splitting algebra of a monic polynomial f of degree n over a
// presented base: base[r_1..r_n] modulo the Cauchy modules (iterated divided
// differences of f), a free base-module of rank n! on the standard monomials
// r_1^{e_1}...r_n^{e_n}, e_i <= n-i.
class SplittingAlgebra {
public:
    SplittingAlgebra(AlgebraPresentation base, Polynomial f, std::string var)
        : base_(std::move(base)), input_(std::move(f)), var_(std::move(var)) {
        n_ = input_.degree_in(var_);
        if (n_ < 1) throw ShapeError("splitting algebra needs degree >= 1");
        Polynomial lc = input_.coeff_of(var_, (uint32_t)n_);
        if (!(lc.is_constant_poly() && is_one(lc.constant_value())))
            throw ShapeError("splitting algebra input must be monic");

        std::vector<std::string> names = *base_.vars();
        for (long i = 0; i < n_; ++i) {
            std::string r = fresh_var(*make_context(names), "zr" + std::to_string(i + 1));
            roots_.push_back(r);
            names.push_back(r);
        }
        ctx_ = make_context(names);

        // Cauchy modules: c_0 = f(r_1), c_i = (c_{i-1}(..,r_i) - c_{i-1}(..,r_{i+1}))/(r_i - r_{i+1})
        Polynomial prev = substitute(input_.embedded(context_union(ctx_, input_.context())),
                                     {{var_, Polynomial::variable(roots_[0], ctx_)}});
        cauchy_.push_back(prev);
        for (long i = 1; i < n_; ++i) {
            Polynomial swapped = substitute(
                prev, {{roots_[(std::size_t)i - 1], Polynomial::variable(roots_[(std::size_t)i], ctx_)}});
            Polynomial num = prev - swapped;
            Polynomial den = Polynomial::variable(roots_[(std::size_t)i - 1], ctx_) -
                             Polynomial::variable(roots_[(std::size_t)i], ctx_);
            prev = exact_divide(num, den);
            cauchy_.push_back(prev);
        }

        presentation_ = AlgebraPresentation(
            ctx_, base_.relations().embedded(ctx_).plus(cauchy_), base_.local());
    }

    const AlgebraPresentation& presentation() const { return presentation_; }
    const std::vector<std::string>& root_names() const { return roots_; }
    const CtxPtr& context() const { return ctx_; }
    long degree() const { return n_; }
    const std::vector<Polynomial>& rewrite_rules() const { return cauchy_; }

    Polynomial root(std::size_t i) const { return Polynomial::variable(roots_[i], ctx_); }

    // canonical form on the rank-n! standard basis: reduce by c_{n-1},...,c_0,
    // each monic in its main root variable
    Polynomial normal_form(const Polynomial& p) const {
        auto ectx = context_union(ctx_, p.context());
        Polynomial r = p.embedded(ectx);
        for (long i = n_; i-- > 0;) {
            r = pseudo_divide(r, cauchy_[(std::size_t)i].embedded(ectx),
                              roots_[(std::size_t)i]).remainder;
        }
        return base_relations_reduce(r);
    }

    // standard monomial exponent tuples (e_1..e_n), e_i <= n-i, graded order
    std::vector<std::vector<uint32_t>> standard_exponents() const {
        std::vector<std::vector<uint32_t>> out;
        std::vector<uint32_t> e((std::size_t)n_, 0);
        while (true) {
            out.push_back(e);
            long i = n_ - 1;
            while (i >= 0) {
                if (e[(std::size_t)i] < (uint32_t)(n_ - i - 1)) {
                    ++e[(std::size_t)i];
                    for (long j = i + 1; j < n_; ++j) e[(std::size_t)j] = 0;
                    break;
                }
                --i;
            }
            if (i < 0) break;
        }
        return out;
    }

    std::size_t rank() const { return standard_exponents().size(); }

    Polynomial basis_monomial(const std::vector<uint32_t>& e) const {
        Polynomial m = Polynomial::constant(Rational(1), ctx_);
        for (long i = 0; i < n_; ++i)
            if (e[(std::size_t)i])
                m = m * root((std::size_t)i).pow(e[(std::size_t)i]);
        return m;
    }

    // coefficient of a standard basis monomial in an already-reduced value
    Polynomial basis_coefficient(const Polynomial& reduced, const std::vector<uint32_t>& e) const {
        Polynomial c = reduced;
        for (long i = 0; i < n_; ++i) c = c.coeff_of(roots_[(std::size_t)i], e[(std::size_t)i]);
        return c;
    }

    // column-convention multiplication matrix of an element on the standard basis
    PolyMatrix mult_matrix(const Polynomial& elt) const {
        auto basis = standard_exponents();
        PolyMatrix m(basis.size(), basis.size(), ctx_);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Polynomial v = normal_form(elt * basis_monomial(basis[j]));
            for (std::size_t i = 0; i < basis.size(); ++i)
                m.at(i, j) = basis_coefficient(v, basis[i]);
        }
        return m;
    }

private:
    Polynomial base_relations_reduce(const Polynomial& p) const {
        if (base_.relations().generators.empty()) return p;
        // reduce base-variable content by the base relations
        return zmtforge::normal_form(p, base_.gb().basis, base_.gb().order).remainder;
    }

    AlgebraPresentation base_;
    Polynomial input_;
    std::string var_;
    long n_ = 0;
    std::vector<std::string> roots_;
    std::vector<Polynomial> cauchy_;
    CtxPtr ctx_;
    AlgebraPresentation presentation_;
};

} // namespace zmtforge
