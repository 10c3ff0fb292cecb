#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pqn/chart.hpp"
#include "pqn/scalar.hpp"

namespace pqn {

class VectorField {
public:
    VectorField(Chart chart, std::vector<ScalarExpr> components);
    static VectorField zero(const Chart& chart);
    static VectorField coordinate(const Chart& chart, std::size_t i);

    const Chart& chart() const { return chart_; }
    const ScalarExpr& component(std::size_t i) const { return comps_[i]; }
    const std::vector<ScalarExpr>& components() const { return comps_; }
    bool is_zero() const;

    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    VectorField operator-() const;
    friend VectorField operator*(const ScalarExpr& f, const VectorField& X);
    friend bool operator==(const VectorField& a, const VectorField& b);

private:
    Chart chart_;
    std::vector<ScalarExpr> comps_;
};

/// Degree-q antisymmetric covariant tensor with components keyed by strictly
/// increasing index tuples; zero components are omitted. Degree 0 holds a
/// single scalar at the empty tuple.
class DifferentialForm {
public:
    DifferentialForm(Chart chart, int degree);
    static DifferentialForm function(const Chart& chart, ScalarExpr f);
    static DifferentialForm coordinate_differential(const Chart& chart, std::size_t i);

    const Chart& chart() const { return chart_; }
    int degree() const { return degree_; }
    const std::map<std::vector<int>, ScalarExpr>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    /// Component at a strictly increasing tuple (zero if absent).
    ScalarExpr component(const std::vector<int>& idx) const;
    /// Component at an arbitrary tuple, with the antisymmetry sign; zero on a
    /// repeated index.
    ScalarExpr signed_component(std::vector<int> idx) const;
    /// Adds c at a strictly increasing tuple, dropping the entry if it cancels.
    void add_component(const std::vector<int>& idx, const ScalarExpr& c);
    /// Adds c at an arbitrary tuple, sorting and applying the sign.
    void add_signed(std::vector<int> idx, ScalarExpr c);

    /// The scalar of a degree-0 form.
    ScalarExpr as_function() const;

    friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
    friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
    DifferentialForm operator-() const;
    friend DifferentialForm operator*(const ScalarExpr& f, const DifferentialForm& a);
    friend DifferentialForm operator*(const Rational& c, const DifferentialForm& a);
    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);
    friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) {
        return !(a == b);
    }

private:
    Chart chart_;
    int degree_;
    std::map<std::vector<int>, ScalarExpr> comps_;
};

/// Antisymmetric (2,0) tensor stored on increasing pairs i < j.
class BivectorField {
public:
    explicit BivectorField(Chart chart);

    const Chart& chart() const { return chart_; }
    const std::map<std::pair<int, int>, ScalarExpr>& components() const { return comps_; }
    /// pi^{ij} for arbitrary i, j (antisymmetric, zero on the diagonal).
    ScalarExpr entry(int i, int j) const;
    void add_entry(int i, int j, const ScalarExpr& c);

private:
    Chart chart_;
    std::map<std::pair<int, int>, ScalarExpr> comps_;
};

/// (1,1) tensor field as an m x m matrix with (N X)^i = sum_j N^i_j X^j.
class EndomorphismField {
public:
    explicit EndomorphismField(Chart chart);  // zero matrix
    static EndomorphismField identity(const Chart& chart);

    const Chart& chart() const { return chart_; }
    const ScalarExpr& entry(std::size_t i, std::size_t j) const { return mat_[i][j]; }
    void set_entry(std::size_t i, std::size_t j, ScalarExpr e);
    void add_entry(std::size_t i, std::size_t j, const ScalarExpr& e);

    VectorField apply(const VectorField& X) const;
    /// N* on a 1-form: (N* a)_j = sum_i a_i N^i_j.
    DifferentialForm transpose_apply(const DifferentialForm& alpha) const;
    EndomorphismField compose(const EndomorphismField& other) const;  // this after other
    EndomorphismField power(int k) const;
    ScalarExpr trace() const;

    friend EndomorphismField operator+(const EndomorphismField& a, const EndomorphismField& b);
    friend EndomorphismField operator-(const EndomorphismField& a, const EndomorphismField& b);
    friend bool operator==(const EndomorphismField& a, const EndomorphismField& b);
    friend bool operator!=(const EndomorphismField& a, const EndomorphismField& b) {
        return !(a == b);
    }

private:
    Chart chart_;
    std::vector<std::vector<ScalarExpr>> mat_;
};

/// T^k_{ij} antisymmetric in (i, j), stored on increasing pairs.
class VectorValuedTwoForm {
public:
    explicit VectorValuedTwoForm(Chart chart);

    const Chart& chart() const { return chart_; }
    /// Value on coordinate fields (i, j) as a vector field (any i, j).
    VectorField value(int i, int j) const;
    void set_value(int i, int j, VectorField v);
    bool is_zero() const;
    const std::map<std::pair<int, int>, std::vector<ScalarExpr>>& components() const {
        return comps_;
    }

private:
    Chart chart_;
    std::map<std::pair<int, int>, std::vector<ScalarExpr>> comps_;
};

/// Diffeomorphism between same-dimension charts given by forward expressions
/// (target coordinates in source coordinates) and their inverse. The round
/// trips are verified symbolically at construction.
class CoordinateMap {
public:
    CoordinateMap(Chart source, Chart target, std::vector<ScalarExpr> forward,
                  std::vector<ScalarExpr> inverse);

    const Chart& source() const { return source_; }
    const Chart& target() const { return target_; }
    const std::vector<ScalarExpr>& forward() const { return forward_; }
    const std::vector<ScalarExpr>& inverse() const { return inverse_; }

private:
    Chart source_, target_;
    std::vector<ScalarExpr> forward_, inverse_;
};

}  // namespace pqn
