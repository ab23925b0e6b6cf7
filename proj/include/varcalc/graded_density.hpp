#pragma once

#include <map>

#include "varcalc/diff_poly.hpp"

namespace varcalc {

/// theta-graded density: finite map J -> f^<J>, standing for
/// sum_J theta^(J) f^<J>. Local functionals are these modulo formal
/// divergences; grading_zero_nf picks the canonical representative.
class GradedDensity {
public:
    GradedDensity() = default;
    explicit GradedDensity(FieldSpecPtr spec) : spec_(std::move(spec)) {}

    static GradedDensity zero(FieldSpecPtr spec) { return GradedDensity(std::move(spec)); }
    /// theta^(J) * p as a one-part density.
    static GradedDensity part(const MultiIndex& grading, const DiffPoly& p);

    const FieldSpecPtr& spec() const { return spec_; }
    const std::map<MultiIndex, DiffPoly>& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    /// The coefficient at a grading (zero polynomial if absent).
    DiffPoly at(const MultiIndex& grading) const;

    void add_part(const MultiIndex& grading, const DiffPoly& p);

    GradedDensity operator+(const GradedDensity& o) const;
    GradedDensity operator-(const GradedDensity& o) const;
    GradedDensity operator-() const;
    GradedDensity operator*(const Rational& c) const;
    /// Coefficient multiplication; gradings are untouched.
    GradedDensity operator*(const DiffPoly& p) const;
    /// Graded product: gradings add, products of theta factors never stored.
    GradedDensity operator*(const GradedDensity& o) const;
    friend GradedDensity operator*(const DiffPoly& p, const GradedDensity& d) { return d * p; }

    bool operator==(const GradedDensity& o) const { return parts_ == o.parts_; }

private:
    FieldSpecPtr spec_;
    std::map<MultiIndex, DiffPoly> parts_;
};

/// Reduces every part to grading zero by the rewrite
/// theta^(J) X -> -theta^(J-e_j) D_j X, i.e. returns the one-part density
/// sum_J (-1)^|J| D_J f^<J>. Two densities are equivalent modulo formal
/// divergences iff their normal forms are equal.
GradedDensity grading_zero_nf(const GradedDensity& d);

/// Formal divergence D_i d = theta^(J+e_i) f + theta^(J) D_i f. Its normal
/// form is identically zero.
GradedDensity divergence(const GradedDensity& d, std::size_t coord);

} // namespace varcalc
