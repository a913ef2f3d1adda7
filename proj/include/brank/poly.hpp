// SPDX-License-Identifier: MIT
#pragma once

#include "brank/scalar.hpp"
#include "brank/tensor.hpp"
#include "brank/words.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace brank {

/// Product of variables x_w with exponents; factors sorted by decreasing word.
class Monomial {
public:
    using Factor = std::pair<Word, unsigned>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);
    static Monomial variable(const Word& w) { return Monomial({{w, 1}}); }

    [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }
    [[nodiscard]] unsigned degree() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend Monomial operator*(const Monomial& a, const Monomial& b);

private:
    std::vector<Factor> factors_;
};

/// Graded, then lexicographic with variables ordered by their n-ary key.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse polynomial in the variables x_w with rational coefficients.
class SparsePoly {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    explicit SparsePoly(unsigned alphabet = 2) : n_(alphabet) {}
    static SparsePoly constant(const Rational& c, unsigned alphabet);
    static SparsePoly variable(const Word& w);

    [[nodiscard]] unsigned alphabet() const { return n_; }
    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const;
    [[nodiscard]] bool is_homogeneous() const;

    void add_term(const Monomial& m, const Rational& c);

    /// Digit-string words, e.g. "x_11*x_22 - x_12*x_21"; leading term first.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const SparsePoly&, const SparsePoly&) = default;
    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const Rational& c, const SparsePoly& a);
    friend SparsePoly operator-(const SparsePoly& a);

private:
    unsigned n_;
    Terms terms_;
};

/// Substitutes coord(T, w) for every x_w.
Rational eval_poly(const SparsePoly& f, const QTensor& t);
double eval_poly(const SparsePoly& f, const FTensor& t);

/// Algebra homomorphism x_w -> x_{sigma w}.
SparsePoly subs_act_poly(const SubsElement& sigma, const SparsePoly& f);

}  // namespace brank
