#pragma once

#include <span>
#include <vector>

#include "pqn/rational.hpp"

namespace pqn {

/// One canonical term: coeff * x1^k1*...*xm^km * exp(w1*x1 + ... + wm*xm),
/// with integer (possibly negative) exponents and rational exponential weights.
struct Term {
    Rational coeff;
    std::vector<int> powers;
    std::vector<Rational> expw;
};

/// Exact scalar field on an m-dimensional chart: a finite sum of Terms with
/// pairwise distinct (powers, expw) keys, kept sorted lexicographically on
/// (expw, powers). The zero expression is the empty sum. Distinct keys index
/// linearly independent functions, so equality and zero testing are exact.
///
/// Values are immutable; every operation returns a new canonical expression.
class ScalarExpr {
public:
    explicit ScalarExpr(std::size_t dim) : dim_(dim) {}

    static ScalarExpr zero(std::size_t dim) { return ScalarExpr(dim); }
    static ScalarExpr constant(std::size_t dim, Rational c);
    static ScalarExpr coordinate(std::size_t dim, std::size_t i);
    /// Single monomial term, canonicalized.
    static ScalarExpr monomial(std::size_t dim, Rational coeff, std::vector<int> powers,
                               std::vector<Rational> expw);

    std::size_t dim() const { return dim_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The coefficient of the constant-key term (0 if absent).
    Rational constant_value() const;

    ScalarExpr operator-() const;
    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
    ScalarExpr& operator+=(const ScalarExpr& b) { return *this = *this + b; }
    ScalarExpr& operator-=(const ScalarExpr& b) { return *this = *this - b; }
    ScalarExpr& operator*=(const ScalarExpr& b) { return *this = *this * b; }
    friend ScalarExpr operator*(const Rational& c, const ScalarExpr& a);

    /// Integer power. k < 0 only for a single-term base (Laurent inverse);
    /// a negative power of a multi-term expression leaves the class.
    ScalarExpr pow(int k) const;

    ScalarExpr derivative(std::size_t coord) const;

    /// Exact composition x_i -> images[i]. Coordinates appearing in an exp
    /// weight must map to rational-linear forms; coordinates with negative
    /// exponents must map to single terms.
    ScalarExpr substitute(const std::vector<ScalarExpr>& images) const;

    double eval(std::span<const double> point) const;

    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }

    /// Builds the canonical form from an arbitrary term list (sorts, merges,
    /// drops zeros).
    static ScalarExpr from_terms(std::size_t dim, std::vector<Term> raw);
    /// Adopts a term list that is already sorted, merged, and zero-free.
    static ScalarExpr adopt_canonical(std::size_t dim, std::vector<Term> terms);

private:
    std::size_t dim_;
    std::vector<Term> terms_;
};

/// Compares (expw, powers) keys; ignores coefficients.
int compare_term_keys(const Term& a, const Term& b);

}  // namespace pqn
