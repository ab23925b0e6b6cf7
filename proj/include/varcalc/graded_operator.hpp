#pragma once

#include <map>
#include <vector>

#include "varcalc/graded_density.hpp"

namespace varcalc {

/// Key of one operator coefficient I^<J>N_AB: theta-grading J, matrix row A,
/// matrix column B, derivative index N of the D_N it multiplies.
struct OperatorKey {
    MultiIndex grading;
    int row = 0;
    int col = 0;
    MultiIndex deriv;

    bool operator==(const OperatorKey&) const = default;
    auto operator<=>(const OperatorKey&) const = default;
};

/// Graded matrix differential operator
///   sum_J theta^(J) I^<J>N_AB D_N
/// with finitely many nonzero coefficients.
class GradedOperator {
public:
    GradedOperator() = default;
    explicit GradedOperator(FieldSpecPtr spec) : spec_(std::move(spec)) {}

    static GradedOperator zero(FieldSpecPtr spec) { return GradedOperator(std::move(spec)); }

    const FieldSpecPtr& spec() const { return spec_; }
    const std::map<OperatorKey, DiffPoly>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    DiffPoly at(const OperatorKey& k) const;

    void add_coeff(const OperatorKey& k, const DiffPoly& p);

    GradedOperator operator+(const GradedOperator& o) const;
    GradedOperator operator-(const GradedOperator& o) const;
    GradedOperator operator-() const;
    GradedOperator operator*(const Rational& c) const;

    bool operator==(const GradedOperator& o) const { return coeffs_ == o.coeffs_; }

private:
    FieldSpecPtr spec_;
    std::map<OperatorKey, DiffPoly> coeffs_;
};

/// Adjoint coefficients
///   I*^<J>M_AB = sum_K sum_{L <= min(K,J)} (-1)^|K| (K choose L)(K-L choose M)
///                D_{K-L-M} I^<J-L>K_BA,
/// satisfying int f I g = int g I* f modulo formal divergences.
GradedOperator adjoint(const GradedOperator& op);

/// (op - adjoint(op)) / 2; the result z satisfies adjoint(z) = -z exactly.
GradedOperator skew_part(const GradedOperator& op);

bool is_skew_adjoint(const GradedOperator& op);

/// Applies the operator to one density per field; gradings of operator
/// term and argument term add, D_N acts on the argument coefficients.
std::vector<GradedDensity> apply_operator(const GradedOperator& op,
                                          const std::vector<GradedDensity>& q);

/// Frechet derivative of the operator: only the coefficient functions are
/// differentiated, I'(eta) = sum (dI^<J>N_AB/dphi_C^(L)) D_L(eta_C) D_N.
GradedOperator operator_frechet(const GradedOperator& op,
                                const std::vector<GradedDensity>& eta);

/// Grading-zero coefficients only (theta set to 1); the classical operator.
GradedOperator strip_grading(const GradedOperator& op);

/// Largest |N| over the stored D_N indices.
int max_deriv_order(const GradedOperator& op);

} // namespace varcalc
