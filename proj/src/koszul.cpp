#include "pqn/koszul.hpp"

#include "pqn/errors.hpp"

namespace pqn {

namespace {

int sign_pow(long k) { return (((k % 2) + 2) % 2 == 0) ? 1 : -1; }

DifferentialForm bracket_one_one(const BivectorField& pi, const DifferentialForm& a,
                                 const DifferentialForm& b) {
    VectorField sa = sharp_map(pi, a);
    VectorField sb = sharp_map(pi, b);
    return lie_derivative(sa, b) - lie_derivative(sb, a) -
           differential(a.chart(), pairing(b, sa));
}

}  // namespace

ScalarExpr poisson_bracket_fn(const BivectorField& pi, const ScalarExpr& f, const ScalarExpr& g) {
    return pairing(differential(pi.chart(), g), sharp_map(pi, differential(pi.chart(), f)));
}

DifferentialForm koszul_bracket(const BivectorField& pi, const DifferentialForm& a,
                                const DifferentialForm& b) {
    if (a.chart() != pi.chart() || b.chart() != pi.chart())
        throw DomainError("chart mismatch in Koszul bracket");
    const Chart& chart = pi.chart();
    const int q = a.degree(), qp = b.degree();

    if (qp >= 2) {
        // Split each component f dx_{j1} ^ rest and reduce with the
        // derivation law; rest keeps unit coefficient and degree qp-1.
        DifferentialForm out(chart, q + qp - 1);
        const int sgn = sign_pow(q - 1);
        for (const auto& [idx, c] : b.components()) {
            DifferentialForm head(chart, 1);
            head.add_component({idx[0]}, c);
            DifferentialForm rest(chart, qp - 1);
            rest.add_component(std::vector<int>(idx.begin() + 1, idx.end()),
                               ScalarExpr::constant(chart.dim(), Rational(1)));
            DifferentialForm left = wedge(koszul_bracket(pi, a, head), rest);
            DifferentialForm right = wedge(head, koszul_bracket(pi, a, rest));
            out = out + (sgn > 0 ? left + right : left - right);
        }
        return out;
    }
    if (q >= 2) {
        // Graded antisymmetry moves the large slot to the right.
        DifferentialForm flipped = koszul_bracket(pi, b, a);
        return sign_pow((q - 1) * (qp - 1)) > 0 ? -flipped : flipped;
    }
    if (q == 1 && qp == 1) return bracket_one_one(pi, a, b);
    if (q == 1 && qp == 0)
        return DifferentialForm::function(
            chart, pairing(differential(chart, b.as_function()), sharp_map(pi, a)));
    if (q == 0 && qp == 1) return -koszul_bracket(pi, b, a);
    return DifferentialForm(chart, 0);  // two functions: degree -1, kept as zero
}

}  // namespace pqn
