#include "varcalc/graded_density.hpp"

namespace varcalc {

GradedDensity GradedDensity::part(const MultiIndex& grading, const DiffPoly& p) {
    GradedDensity d(p.spec());
    d.add_part(grading, p);
    return d;
}

DiffPoly GradedDensity::at(const MultiIndex& grading) const {
    auto it = parts_.find(grading);
    return it == parts_.end() ? DiffPoly(spec_) : it->second;
}

void GradedDensity::add_part(const MultiIndex& grading, const DiffPoly& p) {
    if (p.is_zero()) return;
    if (spec_ && grading.dims() != spec_->n_dims())
        throw SpecMismatchError("grading multi-index has wrong dimension");
    if (!spec_) spec_ = p.spec();
    auto [it, inserted] = parts_.emplace(grading, p);
    if (!inserted) {
        it->second = it->second + p;
        if (it->second.is_zero()) parts_.erase(it);
    }
}

GradedDensity GradedDensity::operator+(const GradedDensity& o) const {
    GradedDensity r(require_same_spec(spec_, o.spec_));
    r.parts_ = parts_;
    for (const auto& [j, p] : o.parts_) r.add_part(j, p);
    return r;
}

GradedDensity GradedDensity::operator-(const GradedDensity& o) const { return *this + (-o); }

GradedDensity GradedDensity::operator-() const {
    GradedDensity r(spec_);
    for (const auto& [j, p] : parts_) r.parts_.emplace(j, -p);
    return r;
}

GradedDensity GradedDensity::operator*(const Rational& c) const {
    GradedDensity r(spec_);
    if (varcalc::is_zero(c)) return r;
    for (const auto& [j, p] : parts_) r.parts_.emplace(j, p * c);
    return r;
}

GradedDensity GradedDensity::operator*(const DiffPoly& p) const {
    GradedDensity r(require_same_spec(spec_, p.spec()));
    for (const auto& [j, q] : parts_) r.add_part(j, q * p);
    return r;
}

GradedDensity GradedDensity::operator*(const GradedDensity& o) const {
    GradedDensity r(require_same_spec(spec_, o.spec_));
    for (const auto& [j1, p1] : parts_)
        for (const auto& [j2, p2] : o.parts_) r.add_part(j1 + j2, p1 * p2);
    return r;
}

GradedDensity grading_zero_nf(const GradedDensity& d) {
    if (!d.spec()) return d;
    GradedDensity r(d.spec());
    MultiIndex zero(d.spec()->n_dims());
    for (const auto& [j, p] : d.parts()) {
        Rational sign((j.order() % 2 == 0) ? 1 : -1);
        r.add_part(zero, total_derivative(p, j) * sign);
    }
    return r;
}

GradedDensity divergence(const GradedDensity& d, std::size_t coord) {
    GradedDensity r(d.spec());
    if (!d.spec()) return r;
    MultiIndex e = MultiIndex::unit(d.spec()->n_dims(), coord);
    for (const auto& [j, p] : d.parts()) {
        r.add_part(j + e, p);
        r.add_part(j, total_derivative(p, coord));
    }
    return r;
}

} // namespace varcalc
