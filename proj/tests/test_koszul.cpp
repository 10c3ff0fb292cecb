#include <doctest.h>

#include <random>

#include "pqn/koszul.hpp"
#include "pqn/models.hpp"
#include "pqn/parse.hpp"

using namespace pqn;

namespace {

const Chart c2 = Chart::phase_space(2);  // R^4
const BivectorField pi2 = canonical_bivector(c2);

ScalarExpr e2(const std::string& s) { return parse_expr(s, c2); }
DifferentialForm fn(const ScalarExpr& f) { return DifferentialForm::function(c2, f); }

ScalarExpr random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> idx(0, 3);
    std::uniform_int_distribution<int> power(0, 2);
    std::uniform_int_distribution<int> weight(-1, 1);
    ScalarExpr out = ScalarExpr::zero(4);
    for (int t = 0; t < 3; ++t) {
        int c = coeff(rng);
        if (c == 0) c = 2;
        std::vector<int> powers(4, 0);
        powers[idx(rng)] = power(rng);
        std::vector<Rational> w(4, Rational(0));
        if (t % 2 == 0) w[idx(rng)] = weight(rng);
        out = out + ScalarExpr::monomial(4, Rational(c), powers, w);
    }
    return out;
}

DifferentialForm random_form(std::mt19937& rng, int degree) {
    std::uniform_int_distribution<int> idx(0, 3);
    DifferentialForm out(c2, degree);
    for (int t = 0; t < 2; ++t) {
        std::vector<int> tuple;
        for (int s = 0; s < degree; ++s) tuple.push_back(idx(rng));
        out.add_signed(tuple, random_scalar(rng));
    }
    return out;
}

int sign_pow(int k) { return ((k % 2) + 2) % 2 == 0 ? 1 : -1; }

}  // namespace

TEST_CASE("poisson bracket of functions") {
    CHECK(poisson_bracket_fn(pi2, e2("p1"), e2("q1")) == e2("1"));
    CHECK(poisson_bracket_fn(pi2, e2("q1"), e2("q2")).is_zero());

    // {g, f} = exp(q2) + exp(-q1) for the open-chain pair on two particles
    ScalarExpr f = e2("exp(q2) - exp(-1*q1)");
    ScalarExpr g = e2("p1 + p2");
    CHECK(poisson_bracket_fn(pi2, g, f) == e2("exp(q2) + exp(-1*q1)"));
    CHECK((poisson_bracket_fn(pi2, g, f) + poisson_bracket_fn(pi2, f, g)).is_zero());

    // Leibniz in the second slot
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarExpr a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((poisson_bracket_fn(pi2, a, b * c) - poisson_bracket_fn(pi2, a, b) * c -
               b * poisson_bracket_fn(pi2, a, c))
                  .is_zero());
    }
}

TEST_CASE("bracket of exact 1-forms is the differential of the bracket") {
    ScalarExpr f = e2("exp(q2) - exp(-1*q1)");
    ScalarExpr g = e2("p1 + p2");
    DifferentialForm lhs = koszul_bracket(pi2, differential(c2, f), differential(c2, g));
    CHECK(lhs == differential(c2, poisson_bracket_fn(pi2, f, g)));
    // equal to -d{g,f} = -d(exp(q2) + exp(-q1))
    CHECK(lhs == -differential(c2, e2("exp(q2) + exp(-1*q1)")));

    std::mt19937 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        ScalarExpr a = random_scalar(rng), b = random_scalar(rng);
        CHECK(koszul_bracket(pi2, differential(c2, a), differential(c2, b)) ==
              differential(c2, poisson_bracket_fn(pi2, a, b)));
    }
}

TEST_CASE("base cases and degree bookkeeping") {
    ScalarExpr f = e2("q1^2");
    ScalarExpr g = e2("p1");
    // [alpha, f] = <df, sharp alpha>
    DifferentialForm alpha = differential(c2, g);
    CHECK(koszul_bracket(pi2, alpha, fn(f)).as_function() ==
          pairing(differential(c2, f), sharp_map(pi2, alpha)));
    // functions commute
    CHECK(koszul_bracket(pi2, fn(f), fn(g)).is_zero());
    CHECK(koszul_bracket(pi2, fn(f), fn(g)).degree() == 0);
}

TEST_CASE("graded antisymmetry on random forms") {
    std::mt19937 rng(2);
    for (int qa = 0; qa <= 2; ++qa)
        for (int qb = 0; qb <= 2; ++qb)
            for (int trial = 0; trial < 4; ++trial) {
                DifferentialForm a = random_form(rng, qa);
                DifferentialForm b = random_form(rng, qb);
                // [a, b] = -(-1)^{(qa-1)(qb-1)} [b, a]
                DifferentialForm expected = koszul_bracket(pi2, b, a);
                if (sign_pow((qa - 1) * (qb - 1)) > 0) expected = -expected;
                CHECK(koszul_bracket(pi2, a, b) == expected);
            }
}

TEST_CASE("derivation law in the right slot") {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 6; ++trial) {
        DifferentialForm a = random_form(rng, 1 + trial % 2);
        DifferentialForm b = random_form(rng, 1);
        DifferentialForm c = random_form(rng, 1);
        int q = a.degree();
        DifferentialForm lhs = koszul_bracket(pi2, a, wedge(b, c));
        DifferentialForm rhs = wedge(koszul_bracket(pi2, a, b), c) +
                               (sign_pow(q - 1) > 0 ? wedge(b, koszul_bracket(pi2, a, c))
                                                    : -wedge(b, koszul_bracket(pi2, a, c)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("graded jacobi identity on forms of degree <= 2") {
    std::mt19937 rng(6);
    for (int trial = 0; trial < 25; ++trial) {
        int q1 = trial % 3, q2 = (trial / 3) % 3, q3 = (trial / 9) % 3;
        DifferentialForm a = random_form(rng, q1);
        DifferentialForm b = random_form(rng, q2);
        DifferentialForm c = random_form(rng, q3);
        // brackets of two functions come back as zero 0-forms, so double
        // brackets involving them can carry a shifted (still zero) degree;
        // normalize before summing
        int degree = std::max(q1 + q2 + q3 - 2, 0);
        auto norm = [&](DifferentialForm t) {
            return t.is_zero() ? DifferentialForm(c2, degree) : t;
        };
        DifferentialForm t1 = norm(koszul_bracket(pi2, a, koszul_bracket(pi2, b, c)));
        DifferentialForm t2 = norm(koszul_bracket(pi2, b, koszul_bracket(pi2, c, a)));
        DifferentialForm t3 = norm(koszul_bracket(pi2, c, koszul_bracket(pi2, a, b)));
        DifferentialForm sum =
            (sign_pow((q1 - 1) * (q3 - 1)) > 0 ? t1 : -t1) +
            (sign_pow((q2 - 1) * (q1 - 1)) > 0 ? t2 : -t2) +
            (sign_pow((q3 - 1) * (q2 - 1)) > 0 ? t3 : -t3);
        CHECK(sum.is_zero());
    }
}

TEST_CASE("squared bracket of a decomposable 2-form") {
    // [a^d, a^d] = 2 a ^ [d, a] ^ d for 1-forms
    std::mt19937 rng(8);
    for (int trial = 0; trial < 6; ++trial) {
        DifferentialForm a = random_form(rng, 1);
        DifferentialForm d = random_form(rng, 1);
        DifferentialForm omega = wedge(a, d);
        CHECK(koszul_bracket(pi2, omega, omega) ==
              rat(2) * wedge(a, wedge(koszul_bracket(pi2, d, a), d)));
    }
}

TEST_CASE("d is a derivation of the bracket") {
    // The identity map is compatible with every Poisson tensor, so the plain
    // differential must distribute over the bracket with the graded sign.
    std::mt19937 rng(10);
    for (int trial = 0; trial < 6; ++trial) {
        int qa = 1 + trial % 2;
        DifferentialForm a = random_form(rng, qa);
        DifferentialForm b = random_form(rng, 1);
        DifferentialForm lhs = exterior_derivative(koszul_bracket(pi2, a, b));
        DifferentialForm rhs =
            koszul_bracket(pi2, exterior_derivative(a), b) +
            (sign_pow(qa - 1) > 0 ? koszul_bracket(pi2, a, exterior_derivative(b))
                                  : -koszul_bracket(pi2, a, exterior_derivative(b)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("d_N is a derivation of the bracket when the pair is compatible") {
    ModelDescriptor open_chain = das_okubo_toda(2);
    std::mt19937 rng(12);
    for (int trial = 0; trial < 6; ++trial) {
        int qa = trial % 2, qb = 1;
        DifferentialForm a = random_form(rng, qa);
        DifferentialForm b = random_form(rng, qb);
        DifferentialForm lhs = d_n_form(open_chain.N, koszul_bracket(pi2, a, b));
        DifferentialForm right = d_n_form(open_chain.N, b);
        DifferentialForm rhs =
            koszul_bracket(pi2, d_n_form(open_chain.N, a), b) +
            (sign_pow(qa - 1) > 0 ? koszul_bracket(pi2, a, right)
                                  : -koszul_bracket(pi2, a, right));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("commuting 2-forms of the chain deformations") {
    for (int n = 2; n <= 3; ++n) {
        StandardTwoForms forms = standard_two_forms(n);
        BivectorField pi = canonical_bivector(Chart::phase_space(n));
        CHECK(koszul_bracket(pi, forms.omega1, forms.omega2).is_zero());
        CHECK((forms.omega_ts - forms.omega1 - forms.omega2).is_zero());
    }
}
