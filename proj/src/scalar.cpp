#include "pqn/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pqn/errors.hpp"

namespace pqn {

int compare_term_keys(const Term& a, const Term& b) {
    // lexicographic on (expw, powers), higher leading entries first, so the
    // printed form leads with q1/p1 terms
    for (std::size_t i = 0; i < a.expw.size(); ++i) {
        int c = cmp(a.expw[i], b.expw[i]);
        if (c != 0) return -c;
    }
    for (std::size_t i = 0; i < a.powers.size(); ++i) {
        if (a.powers[i] != b.powers[i]) return a.powers[i] < b.powers[i] ? 1 : -1;
    }
    return 0;
}

ScalarExpr ScalarExpr::from_terms(std::size_t dim, std::vector<Term> raw) {
    for (const auto& t : raw)
        if (t.powers.size() != dim || t.expw.size() != dim)
            throw DomainError("term dimension mismatch");
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return compare_term_keys(a, b) < 0; });
    ScalarExpr out(dim);
    for (auto& t : raw) {
        if (!out.terms_.empty() && compare_term_keys(out.terms_.back(), t) == 0) {
            out.terms_.back().coeff += t.coeff;
            if (out.terms_.back().coeff == 0) out.terms_.pop_back();
        } else if (t.coeff != 0) {
            out.terms_.push_back(std::move(t));
        }
    }
    return out;
}

ScalarExpr ScalarExpr::constant(std::size_t dim, Rational c) {
    ScalarExpr e(dim);
    if (c != 0)
        e.terms_.push_back(Term{std::move(c), std::vector<int>(dim, 0),
                                std::vector<Rational>(dim, Rational(0))});
    return e;
}

ScalarExpr ScalarExpr::coordinate(std::size_t dim, std::size_t i) {
    if (i >= dim) throw DomainError("coordinate index out of range");
    std::vector<int> powers(dim, 0);
    powers[i] = 1;
    ScalarExpr e(dim);
    e.terms_.push_back(Term{Rational(1), std::move(powers), std::vector<Rational>(dim, Rational(0))});
    return e;
}

ScalarExpr ScalarExpr::monomial(std::size_t dim, Rational coeff, std::vector<int> powers,
                                std::vector<Rational> expw) {
    std::vector<Term> raw;
    raw.push_back(Term{std::move(coeff), std::move(powers), std::move(expw)});
    return from_terms(dim, std::move(raw));
}

bool ScalarExpr::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Term& t = terms_[0];
    return std::all_of(t.powers.begin(), t.powers.end(), [](int k) { return k == 0; }) &&
           std::all_of(t.expw.begin(), t.expw.end(), [](const Rational& w) { return w == 0; });
}

Rational ScalarExpr::constant_value() const {
    for (const auto& t : terms_) {
        bool constant_key =
            std::all_of(t.powers.begin(), t.powers.end(), [](int k) { return k == 0; }) &&
            std::all_of(t.expw.begin(), t.expw.end(), [](const Rational& w) { return w == 0; });
        if (constant_key) return t.coeff;
    }
    return Rational(0);
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr out(dim_);
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.dim_ != b.dim_) throw DomainError("chart dimension mismatch in +");
    // Merge of two canonical (sorted) term lists.
    ScalarExpr out(a.dim_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = compare_term_keys(a.terms_[i], b.terms_[j]);
        if (c < 0) {
            out.terms_.push_back(a.terms_[i++]);
        } else if (c > 0) {
            out.terms_.push_back(b.terms_[j++]);
        } else {
            Term t = a.terms_[i++];
            t.coeff += b.terms_[j++].coeff;
            if (t.coeff != 0) out.terms_.push_back(std::move(t));
        }
    }
    for (; i < a.terms_.size(); ++i) out.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) out.terms_.push_back(b.terms_[j]);
    return out;
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) { return a + (-b); }

namespace {

// One term times a canonical expression. Shifting every key by the same
// offset preserves the lexicographic order, so the result is already
// canonical and products reduce to merges.
ScalarExpr term_times(const Term& t, const ScalarExpr& e) {
    std::vector<Term> out;
    out.reserve(e.terms().size());
    for (const auto& s : e.terms()) {
        Term r;
        r.coeff = t.coeff * s.coeff;
        r.powers.resize(t.powers.size());
        r.expw.resize(t.expw.size());
        for (std::size_t k = 0; k < t.powers.size(); ++k) {
            r.powers[k] = t.powers[k] + s.powers[k];
            r.expw[k] = t.expw[k] + s.expw[k];
        }
        out.push_back(std::move(r));
    }
    // coefficients are nonzero products of nonzero rationals; keys are
    // distinct shifts of distinct keys, so this is a valid canonical form
    return ScalarExpr::adopt_canonical(e.dim(), std::move(out));
}

}  // namespace

ScalarExpr ScalarExpr::adopt_canonical(std::size_t dim, std::vector<Term> terms) {
    ScalarExpr out(dim);
    out.terms_ = std::move(terms);
    return out;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.dim_ != b.dim_) throw DomainError("chart dimension mismatch in *");
    if (a.terms_.empty() || b.terms_.empty()) return ScalarExpr::zero(a.dim_);
    const ScalarExpr& outer = a.terms_.size() <= b.terms_.size() ? a : b;
    const ScalarExpr& inner = a.terms_.size() <= b.terms_.size() ? b : a;
    std::vector<ScalarExpr> parts;
    parts.reserve(outer.terms_.size());
    for (const auto& t : outer.terms_) parts.push_back(term_times(t, inner));
    // balanced pairwise merging keeps the total comparison count near
    // s*t*log(s) instead of the s*t*log(s*t) of a flat sort
    while (parts.size() > 1) {
        std::vector<ScalarExpr> next;
        next.reserve((parts.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
        if (parts.size() % 2 == 1) next.push_back(parts.back());
        parts = std::move(next);
    }
    return parts[0];
}

ScalarExpr operator*(const Rational& c, const ScalarExpr& a) {
    if (c == 0) return ScalarExpr::zero(a.dim_);
    ScalarExpr out(a.dim_);
    out.terms_ = a.terms_;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
}

ScalarExpr ScalarExpr::pow(int k) const {
    if (k == 0) return constant(dim_, Rational(1));
    if (k < 0) {
        if (terms_.size() != 1)
            throw DomainError("negative power of a multi-term expression leaves the class");
        const Term& t = terms_[0];
        Term inv;
        inv.coeff = 1 / t.coeff;
        inv.powers.resize(dim_);
        inv.expw.resize(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            inv.powers[i] = -t.powers[i];
            inv.expw[i] = -t.expw[i];
        }
        ScalarExpr base(dim_);
        base.terms_.push_back(std::move(inv));
        return base.pow(-k);
    }
    ScalarExpr result = constant(dim_, Rational(1));
    ScalarExpr base = *this;
    int e = k;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

ScalarExpr ScalarExpr::derivative(std::size_t coord) const {
    if (coord >= dim_) throw DomainError("unknown coordinate in derivative");
    std::vector<Term> raw;
    for (const auto& t : terms_) {
        if (t.powers[coord] != 0) {
            Term d = t;
            d.coeff *= t.powers[coord];
            d.powers[coord] -= 1;
            raw.push_back(std::move(d));
        }
        if (t.expw[coord] != 0) {
            Term d = t;
            d.coeff *= t.expw[coord];
            raw.push_back(std::move(d));
        }
    }
    return from_terms(dim_, std::move(raw));
}

namespace {

// Reads a rational-linear form sum(c_j x_j): one term per coordinate, first
// power, no exponential part. Returns false if the expression is not linear.
bool linear_coefficients(const ScalarExpr& e, std::vector<Rational>& coeffs) {
    coeffs.assign(e.dim(), Rational(0));
    for (const auto& t : e.terms()) {
        for (const auto& w : t.expw)
            if (w != 0) return false;
        int degree = 0;
        std::size_t var = 0;
        for (std::size_t j = 0; j < t.powers.size(); ++j) {
            if (t.powers[j] == 0) continue;
            if (t.powers[j] != 1) return false;
            degree += 1;
            var = j;
        }
        if (degree != 1) return false;
        coeffs[var] += t.coeff;
    }
    return true;
}

}  // namespace

ScalarExpr ScalarExpr::substitute(const std::vector<ScalarExpr>& images) const {
    if (images.size() != dim_) throw DomainError("substitution map dimension mismatch");
    for (const auto& im : images)
        if (im.dim() != dim_) throw DomainError("substitution image dimension mismatch");

    std::vector<std::vector<Rational>> linear(dim_);
    std::vector<bool> have_linear(dim_, false);

    ScalarExpr result = zero(dim_);
    for (const auto& t : terms_) {
        ScalarExpr factor = constant(dim_, t.coeff);
        std::vector<Rational> expw(dim_, Rational(0));
        for (std::size_t i = 0; i < dim_; ++i) {
            if (t.powers[i] != 0) factor = factor * images[i].pow(t.powers[i]);
            if (t.expw[i] != 0) {
                if (!have_linear[i]) {
                    if (!linear_coefficients(images[i], linear[i]))
                        throw DomainError(
                            "substitution into an exponential needs a rational-linear image");
                    have_linear[i] = true;
                }
                for (std::size_t j = 0; j < dim_; ++j) expw[j] += t.expw[i] * linear[i][j];
            }
        }
        ScalarExpr expfactor(dim_);
        expfactor.terms_.push_back(
            Term{Rational(1), std::vector<int>(dim_, 0), std::move(expw)});
        result = result + factor * expfactor;
    }
    return result;
}

double ScalarExpr::eval(std::span<const double> point) const {
    if (point.size() != dim_) throw DomainError("evaluation point dimension mismatch");
    double sum = 0.0;
    for (const auto& t : terms_) {
        double v = t.coeff.get_d();
        for (std::size_t i = 0; i < dim_; ++i) {
            int k = t.powers[i];
            if (k == 0) continue;
            double x = point[i];
            if (x == 0.0 && k < 0)
                throw EvalError("pole: negative power of zero coordinate " + std::to_string(i));
            double p = 1.0;
            for (int j = 0; j < std::abs(k); ++j) p *= x;
            v *= (k > 0) ? p : 1.0 / p;
        }
        double warg = 0.0;
        bool has_exp = false;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (t.expw[i] != 0) {
                warg += t.expw[i].get_d() * point[i];
                has_exp = true;
            }
        }
        if (has_exp) v *= std::exp(warg);
        sum += v;
    }
    return sum;
}

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (compare_term_keys(a.terms_[i], b.terms_[i]) != 0) return false;
        if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
}

}  // namespace pqn
