#include "varcalc/graded_operator.hpp"

#include <cassert>

namespace varcalc {

DiffPoly GradedOperator::at(const OperatorKey& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? DiffPoly(spec_) : it->second;
}

void GradedOperator::add_coeff(const OperatorKey& k, const DiffPoly& p) {
    if (p.is_zero()) return;
    if (!spec_) spec_ = p.spec();
    if (spec_) {
        if (k.grading.dims() != spec_->n_dims() || k.deriv.dims() != spec_->n_dims())
            throw SpecMismatchError("operator key multi-index has wrong dimension");
        if (k.row < 0 || k.col < 0 || static_cast<std::size_t>(k.row) >= spec_->n_fields() ||
            static_cast<std::size_t>(k.col) >= spec_->n_fields())
            throw SpecMismatchError("operator key field index out of range");
    }
    auto [it, inserted] = coeffs_.emplace(k, p);
    if (!inserted) {
        it->second = it->second + p;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

GradedOperator GradedOperator::operator+(const GradedOperator& o) const {
    GradedOperator r(require_same_spec(spec_, o.spec_));
    r.coeffs_ = coeffs_;
    for (const auto& [k, p] : o.coeffs_) r.add_coeff(k, p);
    return r;
}

GradedOperator GradedOperator::operator-(const GradedOperator& o) const { return *this + (-o); }

GradedOperator GradedOperator::operator-() const {
    GradedOperator r(spec_);
    for (const auto& [k, p] : coeffs_) r.coeffs_.emplace(k, -p);
    return r;
}

GradedOperator GradedOperator::operator*(const Rational& c) const {
    GradedOperator r(spec_);
    if (varcalc::is_zero(c)) return r;
    for (const auto& [k, p] : coeffs_) r.coeffs_.emplace(k, p * c);
    return r;
}

GradedOperator adjoint(const GradedOperator& op) {
    GradedOperator out(op.spec());
    for (const auto& [key, c] : op.coeffs()) {
        const MultiIndex& k = key.deriv;
        Rational sign((k.order() % 2 == 0) ? 1 : -1);
        for_each_leq(k, [&](const MultiIndex& l) {
            Integer bkl = multi_binomial(k, l);
            MultiIndex kl = k - l;
            for_each_leq(kl, [&](const MultiIndex& m) {
                Rational coeff = sign * Rational(bkl * multi_binomial(kl, m));
                DiffPoly p = total_derivative(c, kl - m) * coeff;
                out.add_coeff(OperatorKey{key.grading + l, key.col, key.row, m}, p);
            });
        });
    }
    return out;
}

GradedOperator skew_part(const GradedOperator& op) {
    return (op - adjoint(op)) * Rational(1, 2);
}

bool is_skew_adjoint(const GradedOperator& op) { return (op + adjoint(op)).is_zero(); }

std::vector<GradedDensity> apply_operator(const GradedOperator& op,
                                          const std::vector<GradedDensity>& q) {
    const auto& spec = op.spec();
    if (spec && q.size() != spec->n_fields())
        throw SpecMismatchError("apply_operator needs one density per field");
    std::vector<GradedDensity> out;
    out.reserve(q.size());
    for (std::size_t a = 0; a < q.size(); ++a) out.emplace_back(spec ? spec : q[a].spec());
    for (const auto& [key, c] : op.coeffs()) {
        for (const auto& [jq, f] : q[key.col].parts()) {
            out[key.row].add_part(key.grading + jq, c * total_derivative(f, key.deriv));
        }
    }
    return out;
}

GradedOperator operator_frechet(const GradedOperator& op, const std::vector<GradedDensity>& eta) {
    const auto& spec = op.spec();
    if (spec && eta.size() != spec->n_fields())
        throw SpecMismatchError("operator_frechet needs one density per field");
    GradedOperator out(spec);
    for (const auto& [key, c] : op.coeffs()) {
        for (const JetVar& v : c.variables()) {
            DiffPoly dc = partial_jet(c, v);
            for (const auto& [je, g] : eta[v.field].parts()) {
                out.add_coeff(OperatorKey{key.grading + je, key.row, key.col, key.deriv},
                              dc * total_derivative(g, v.deriv));
            }
        }
    }
    return out;
}

GradedOperator strip_grading(const GradedOperator& op) {
    GradedOperator out(op.spec());
    for (const auto& [key, c] : op.coeffs())
        if (key.grading.is_zero()) out.add_coeff(key, c);
    return out;
}

int max_deriv_order(const GradedOperator& op) {
    int n = 0;
    for (const auto& [key, c] : op.coeffs()) n = std::max(n, key.deriv.order());
    return n;
}

} // namespace varcalc
