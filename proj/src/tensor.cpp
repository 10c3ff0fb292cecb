#include "pqn/tensor.hpp"

#include <algorithm>

#include "pqn/errors.hpp"

namespace pqn {

namespace {

void require_same_chart(const Chart& a, const Chart& b, const char* where) {
    if (a != b) throw DomainError(std::string("chart mismatch in ") + where);
}

// Sorts idx ascending; returns 0 on a repeated index, else the permutation sign.
int sort_with_sign(std::vector<int>& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && idx[j - 1] > idx[j]) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
            --j;
        }
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i - 1] == idx[i]) return 0;
    return sign;
}

}  // namespace

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(Chart chart, std::vector<ScalarExpr> components)
    : chart_(std::move(chart)), comps_(std::move(components)) {
    if (comps_.size() != chart_.dim())
        throw DomainError("vector field component count must match chart dimension");
    for (const auto& c : comps_)
        if (c.dim() != chart_.dim()) throw DomainError("vector field component dimension mismatch");
}

VectorField VectorField::zero(const Chart& chart) {
    return VectorField(chart,
                       std::vector<ScalarExpr>(chart.dim(), ScalarExpr::zero(chart.dim())));
}

VectorField VectorField::coordinate(const Chart& chart, std::size_t i) {
    auto comps = std::vector<ScalarExpr>(chart.dim(), ScalarExpr::zero(chart.dim()));
    comps[i] = ScalarExpr::constant(chart.dim(), Rational(1));
    return VectorField(chart, std::move(comps));
}

bool VectorField::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(),
                       [](const ScalarExpr& c) { return c.is_zero(); });
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    require_same_chart(a.chart_, b.chart_, "vector field +");
    std::vector<ScalarExpr> out;
    out.reserve(a.comps_.size());
    for (std::size_t i = 0; i < a.comps_.size(); ++i) out.push_back(a.comps_[i] + b.comps_[i]);
    return VectorField(a.chart_, std::move(out));
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField VectorField::operator-() const {
    std::vector<ScalarExpr> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(-c);
    return VectorField(chart_, std::move(out));
}

VectorField operator*(const ScalarExpr& f, const VectorField& X) {
    std::vector<ScalarExpr> out;
    out.reserve(X.comps_.size());
    for (const auto& c : X.comps_) out.push_back(f * c);
    return VectorField(X.chart_, std::move(out));
}

bool operator==(const VectorField& a, const VectorField& b) {
    return a.chart_ == b.chart_ && a.comps_ == b.comps_;
}

// ----------------------------------------------------------- DifferentialForm

DifferentialForm::DifferentialForm(Chart chart, int degree)
    : chart_(std::move(chart)), degree_(degree) {
    if (degree_ < 0) throw DomainError("form degree must be >= 0");
}

DifferentialForm DifferentialForm::function(const Chart& chart, ScalarExpr f) {
    DifferentialForm out(chart, 0);
    if (!f.is_zero()) out.comps_.emplace(std::vector<int>{}, std::move(f));
    return out;
}

DifferentialForm DifferentialForm::coordinate_differential(const Chart& chart, std::size_t i) {
    DifferentialForm out(chart, 1);
    out.comps_.emplace(std::vector<int>{static_cast<int>(i)},
                       ScalarExpr::constant(chart.dim(), Rational(1)));
    return out;
}

ScalarExpr DifferentialForm::component(const std::vector<int>& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? ScalarExpr::zero(chart_.dim()) : it->second;
}

ScalarExpr DifferentialForm::signed_component(std::vector<int> idx) const {
    int sign = sort_with_sign(idx);
    if (sign == 0) return ScalarExpr::zero(chart_.dim());
    ScalarExpr c = component(idx);
    return sign > 0 ? c : -c;
}

void DifferentialForm::add_component(const std::vector<int>& idx, const ScalarExpr& c) {
    if (static_cast<int>(idx.size()) != degree_)
        throw DomainError("component tuple length must equal form degree");
    if (c.is_zero()) return;
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
        comps_.emplace(idx, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

void DifferentialForm::add_signed(std::vector<int> idx, ScalarExpr c) {
    int sign = sort_with_sign(idx);
    if (sign == 0 || c.is_zero()) return;
    add_component(idx, sign > 0 ? c : -c);
}

ScalarExpr DifferentialForm::as_function() const {
    if (degree_ != 0) throw DomainError("as_function on a form of positive degree");
    auto it = comps_.find(std::vector<int>{});
    return it == comps_.end() ? ScalarExpr::zero(chart_.dim()) : it->second;
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
    require_same_chart(a.chart_, b.chart_, "form +");
    if (a.degree_ != b.degree_) throw DomainError("degree mismatch in form +");
    DifferentialForm out = a;
    for (const auto& [idx, c] : b.comps_) out.add_component(idx, c);
    return out;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
    return a + (-b);
}

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm out(chart_, degree_);
    for (const auto& [idx, c] : comps_) out.comps_.emplace(idx, -c);
    return out;
}

DifferentialForm operator*(const ScalarExpr& f, const DifferentialForm& a) {
    DifferentialForm out(a.chart_, a.degree_);
    if (f.is_zero()) return out;
    for (const auto& [idx, c] : a.comps_) {
        ScalarExpr prod = f * c;
        if (!prod.is_zero()) out.comps_.emplace(idx, std::move(prod));
    }
    return out;
}

DifferentialForm operator*(const Rational& c, const DifferentialForm& a) {
    return ScalarExpr::constant(a.chart().dim(), c) * a;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

// ------------------------------------------------------------- BivectorField

BivectorField::BivectorField(Chart chart) : chart_(std::move(chart)) {}

ScalarExpr BivectorField::entry(int i, int j) const {
    if (i == j) return ScalarExpr::zero(chart_.dim());
    bool flip = i > j;
    auto it = comps_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == comps_.end()) return ScalarExpr::zero(chart_.dim());
    return flip ? -it->second : it->second;
}

void BivectorField::add_entry(int i, int j, const ScalarExpr& c) {
    if (i == j || c.is_zero()) {
        if (i == j && !c.is_zero()) throw DomainError("diagonal bivector entry must be zero");
        return;
    }
    auto key = i < j ? std::make_pair(i, j) : std::make_pair(j, i);
    ScalarExpr v = i < j ? c : -c;
    auto it = comps_.find(key);
    if (it == comps_.end()) {
        comps_.emplace(key, std::move(v));
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

// -------------------------------------------------------- EndomorphismField

EndomorphismField::EndomorphismField(Chart chart) : chart_(std::move(chart)) {
    mat_.assign(chart_.dim(),
                std::vector<ScalarExpr>(chart_.dim(), ScalarExpr::zero(chart_.dim())));
}

EndomorphismField EndomorphismField::identity(const Chart& chart) {
    EndomorphismField out(chart);
    for (std::size_t i = 0; i < chart.dim(); ++i)
        out.mat_[i][i] = ScalarExpr::constant(chart.dim(), Rational(1));
    return out;
}

void EndomorphismField::set_entry(std::size_t i, std::size_t j, ScalarExpr e) {
    if (e.dim() != chart_.dim()) throw DomainError("endomorphism entry dimension mismatch");
    mat_[i][j] = std::move(e);
}

void EndomorphismField::add_entry(std::size_t i, std::size_t j, const ScalarExpr& e) {
    mat_[i][j] = mat_[i][j] + e;
}

VectorField EndomorphismField::apply(const VectorField& X) const {
    require_same_chart(chart_, X.chart(), "endomorphism apply");
    std::vector<ScalarExpr> out(chart_.dim(), ScalarExpr::zero(chart_.dim()));
    for (std::size_t i = 0; i < chart_.dim(); ++i)
        for (std::size_t j = 0; j < chart_.dim(); ++j)
            if (!mat_[i][j].is_zero() && !X.component(j).is_zero())
                out[i] = out[i] + mat_[i][j] * X.component(j);
    return VectorField(chart_, std::move(out));
}

DifferentialForm EndomorphismField::transpose_apply(const DifferentialForm& alpha) const {
    require_same_chart(chart_, alpha.chart(), "endomorphism transpose apply");
    if (alpha.degree() != 1) throw DomainError("transpose apply expects a 1-form");
    DifferentialForm out(chart_, 1);
    for (std::size_t j = 0; j < chart_.dim(); ++j) {
        ScalarExpr c = ScalarExpr::zero(chart_.dim());
        for (std::size_t i = 0; i < chart_.dim(); ++i) {
            ScalarExpr ai = alpha.component({static_cast<int>(i)});
            if (!ai.is_zero() && !mat_[i][j].is_zero()) c = c + ai * mat_[i][j];
        }
        out.add_component({static_cast<int>(j)}, c);
    }
    return out;
}

EndomorphismField EndomorphismField::compose(const EndomorphismField& other) const {
    require_same_chart(chart_, other.chart_, "endomorphism compose");
    EndomorphismField out(chart_);
    for (std::size_t i = 0; i < chart_.dim(); ++i)
        for (std::size_t j = 0; j < chart_.dim(); ++j) {
            ScalarExpr c = ScalarExpr::zero(chart_.dim());
            for (std::size_t k = 0; k < chart_.dim(); ++k)
                if (!mat_[i][k].is_zero() && !other.mat_[k][j].is_zero())
                    c = c + mat_[i][k] * other.mat_[k][j];
            out.mat_[i][j] = std::move(c);
        }
    return out;
}

EndomorphismField EndomorphismField::power(int k) const {
    if (k < 0) throw DomainError("endomorphism power expects k >= 0");
    EndomorphismField result = identity(chart_);
    for (int i = 0; i < k; ++i) result = result.compose(*this);
    return result;
}

ScalarExpr EndomorphismField::trace() const {
    ScalarExpr t = ScalarExpr::zero(chart_.dim());
    for (std::size_t i = 0; i < chart_.dim(); ++i) t = t + mat_[i][i];
    return t;
}

EndomorphismField operator+(const EndomorphismField& a, const EndomorphismField& b) {
    require_same_chart(a.chart_, b.chart_, "endomorphism +");
    EndomorphismField out(a.chart_);
    for (std::size_t i = 0; i < a.chart_.dim(); ++i)
        for (std::size_t j = 0; j < a.chart_.dim(); ++j)
            out.mat_[i][j] = a.mat_[i][j] + b.mat_[i][j];
    return out;
}

EndomorphismField operator-(const EndomorphismField& a, const EndomorphismField& b) {
    require_same_chart(a.chart_, b.chart_, "endomorphism -");
    EndomorphismField out(a.chart_);
    for (std::size_t i = 0; i < a.chart_.dim(); ++i)
        for (std::size_t j = 0; j < a.chart_.dim(); ++j)
            out.mat_[i][j] = a.mat_[i][j] - b.mat_[i][j];
    return out;
}

bool operator==(const EndomorphismField& a, const EndomorphismField& b) {
    return a.chart_ == b.chart_ && a.mat_ == b.mat_;
}

// ---------------------------------------------------- VectorValuedTwoForm

VectorValuedTwoForm::VectorValuedTwoForm(Chart chart) : chart_(std::move(chart)) {}

VectorField VectorValuedTwoForm::value(int i, int j) const {
    if (i == j) return VectorField::zero(chart_);
    bool flip = i > j;
    auto it = comps_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == comps_.end()) return VectorField::zero(chart_);
    VectorField v(chart_, it->second);
    return flip ? -v : v;
}

void VectorValuedTwoForm::set_value(int i, int j, VectorField v) {
    if (i == j) throw DomainError("two-form value needs i != j");
    if (i > j) {
        std::swap(i, j);
        v = -v;
    }
    if (v.is_zero()) {
        comps_.erase(std::make_pair(i, j));
    } else {
        comps_[std::make_pair(i, j)] = v.components();
    }
}

bool VectorValuedTwoForm::is_zero() const { return comps_.empty(); }

// ------------------------------------------------------------ CoordinateMap

CoordinateMap::CoordinateMap(Chart source, Chart target, std::vector<ScalarExpr> forward,
                             std::vector<ScalarExpr> inverse)
    : source_(std::move(source)),
      target_(std::move(target)),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)) {
    const std::size_t m = source_.dim();
    if (target_.dim() != m) throw DomainError("coordinate map needs equal chart dimensions");
    if (forward_.size() != m || inverse_.size() != m)
        throw DomainError("coordinate map needs one expression per coordinate");
    for (std::size_t i = 0; i < m; ++i) {
        if (forward_[i].substitute(inverse_) != ScalarExpr::coordinate(m, i))
            throw DomainError("forward(inverse) is not the identity on coordinate " +
                              target_.name(i));
        if (inverse_[i].substitute(forward_) != ScalarExpr::coordinate(m, i))
            throw DomainError("inverse(forward) is not the identity on coordinate " +
                              source_.name(i));
    }
}

}  // namespace pqn
