#include "pqn/parse.hpp"

#include <cctype>
#include <sstream>

#include "pqn/errors.hpp"
#include "pqn/tensor.hpp"

namespace pqn {

namespace {

class Parser {
public:
    Parser(const std::string& src, const Chart& chart) : src_(src), chart_(chart) {}

    ScalarExpr run() {
        ScalarExpr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& src_;
    const Chart& chart_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
    }

    ScalarExpr expr() {
        ScalarExpr e = term();
        while (true) {
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    ScalarExpr term() {
        ScalarExpr e = factor();
        while (accept('*')) e = e * factor();
        return e;
    }

    ScalarExpr factor() {
        ScalarExpr a = atom();
        if (accept('^')) {
            long k = integer();
            if (pos_ < src_.size() && src_[pos_] == '/') fail("non-integer exponent");
            return a.pow(static_cast<int>(k));
        }
        return a;
    }

    ScalarExpr atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            ScalarExpr e = expr();
            expect(')', "to close parenthesis");
            return e;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return ScalarExpr::constant(chart_.dim(), rational(false));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            std::string id = identifier();
            if (id == "exp" && peek() == '(') {
                ++pos_;
                std::vector<Rational> w = linform();
                expect(')', "to close exp(...)");
                return ScalarExpr::monomial(chart_.dim(), Rational(1),
                                            std::vector<int>(chart_.dim(), 0), std::move(w));
            }
            auto idx = chart_.index(id);
            if (!idx) {
                pos_ = start;
                fail("unknown coordinate name '" + id + "'");
            }
            return ScalarExpr::coordinate(chart_.dim(), *idx);
        }
        fail("expected rational, coordinate, exp(...), parenthesis, or '-'");
    }

    // Rational-linear form in coordinates; anything else is rejected so that
    // the class stays closed under products and derivatives.
    std::vector<Rational> linform() {
        std::vector<Rational> w(chart_.dim(), Rational(0));
        bool first = true;
        while (true) {
            int sgn = 1;
            if (!first) {
                if (accept('+')) {
                    sgn = 1;
                } else if (accept('-')) {
                    sgn = -1;
                } else {
                    return w;
                }
            }
            Rational c(1);
            char ch = peek();
            if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-') {
                c = rational(true);
                expect('*', "between rational and coordinate in exp argument");
            } else if (!std::isalpha(static_cast<unsigned char>(ch))) {
                fail("non-linear argument to exp");
            }
            std::size_t start = pos_;
            std::string id = identifier();
            auto idx = chart_.index(id);
            if (!idx) {
                pos_ = start;
                fail("unknown coordinate name '" + id + "' in exp argument");
            }
            char next = peek();
            if (next == '*' || next == '^')
                fail("non-linear argument to exp");
            w[*idx] += sgn * c;
            first = false;
        }
    }

    std::string identifier() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isalpha(static_cast<unsigned char>(src_[pos_])))
            fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        return src_.substr(start, pos_ - start);
    }

    long integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < src_.size() && src_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail("expected integer");
        long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_] - '0');
            if (v > 1000000) fail("integer literal out of range");
            ++pos_;
        }
        return neg ? -v : v;
    }

    std::string digits() {
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail("expected number");
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return src_.substr(start, pos_ - start);
    }

    Rational rational(bool allow_sign) {
        skip_ws();
        bool neg = false;
        if (allow_sign && pos_ < src_.size() && src_[pos_] == '-') {
            neg = true;
            ++pos_;
            skip_ws();
        }
        mpz_class num(digits());
        mpz_class den(1);
        if (pos_ < src_.size() && src_[pos_] == '/') {
            ++pos_;
            den = mpz_class(digits());
            if (den == 0) fail("denominator must be positive");
        }
        Rational r(neg ? -num : num, den);
        r.canonicalize();
        return r;
    }
};

void print_linform(std::ostringstream& out, const std::vector<Rational>& w, const Chart& chart) {
    bool first = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) continue;
        Rational a = abs(w[i]);
        if (first) {
            // A leading negative weight needs the rational*ident form, since
            // the grammar has no unary minus inside exp arguments.
            if (w[i] < 0) {
                out << to_string(w[i]) << "*" << chart.name(i);
            } else if (is_one(a)) {
                out << chart.name(i);
            } else {
                out << to_string(a) << "*" << chart.name(i);
            }
            first = false;
        } else {
            out << (w[i] < 0 ? " - " : " + ");
            if (!is_one(a)) out << to_string(a) << "*";
            out << chart.name(i);
        }
    }
}

// |coeff| and the monomial factors of one term, joined with '*'.
void print_term(std::ostringstream& out, const Term& t, const Chart& chart) {
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < t.powers.size(); ++i) {
        if (t.powers[i] == 0) continue;
        std::string f = chart.name(i);
        if (t.powers[i] != 1) f += "^" + std::to_string(t.powers[i]);
        factors.push_back(std::move(f));
    }
    bool has_exp = false;
    for (const auto& w : t.expw)
        if (w != 0) has_exp = true;
    if (has_exp) {
        std::ostringstream ex;
        ex << "exp(";
        print_linform(ex, t.expw, chart);
        ex << ")";
        factors.push_back(ex.str());
    }

    Rational a = abs(t.coeff);
    bool wrote = false;
    if (!is_one(a) || factors.empty()) {
        out << to_string(a);
        wrote = true;
    }
    for (const auto& f : factors) {
        if (wrote) out << "*";
        out << f;
        wrote = true;
    }
}

}  // namespace

ScalarExpr parse_expr(const std::string& text, const Chart& chart) {
    return Parser(text, chart).run();
}

std::string to_string(const ScalarExpr& e, const Chart& chart) {
    if (e.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : e.terms()) {
        if (first) {
            if (t.coeff < 0) out << "-";
            first = false;
        } else {
            out << (t.coeff < 0 ? " - " : " + ");
        }
        print_term(out, t, chart);
    }
    return out.str();
}

std::string to_string(const DifferentialForm& a) {
    if (a.degree() == 0) return to_string(a.as_function(), a.chart());
    if (a.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, c] : a.components()) {
        if (!first) out << " + ";
        first = false;
        out << "(" << to_string(c, a.chart()) << ")*";
        for (std::size_t t = 0; t < idx.size(); ++t) {
            if (t > 0) out << "^";
            out << "d" << a.chart().name(static_cast<std::size_t>(idx[t]));
        }
    }
    return out.str();
}

std::string to_string(const VectorField& X) {
    if (X.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < X.chart().dim(); ++i) {
        if (X.component(i).is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << to_string(X.component(i), X.chart()) << ")*d/d" << X.chart().name(i);
    }
    return out.str();
}

}  // namespace pqn
