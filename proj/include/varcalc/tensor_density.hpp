#pragma once

#include <map>
#include <optional>
#include <vector>

#include "varcalc/graded_operator.hpp"

namespace varcalc {

/// Which generators a tensor's wedge slots hold. A TensorDensity is a pure
/// m-form or a pure m-vector; mixed tensors are out of scope.
enum class SlotKind { Form, Vector };

/// One wedge slot: delta phi_A^(K) (form) or (delta/delta phi_A)^(K)
/// (vector). The kind lives on the enclosing tensor.
struct WedgeSlot {
    int field = 0;
    MultiIndex deriv;

    bool operator==(const WedgeSlot&) const = default;
    auto operator<=>(const WedgeSlot&) const = default;
};

using WedgeMonomial = std::vector<WedgeSlot>; // kept sorted ascending, distinct

struct TensorKey {
    MultiIndex grading;
    WedgeMonomial slots;

    bool operator==(const TensorKey&) const = default;
    auto operator<=>(const TensorKey&) const = default;
};

/// theta-graded wedge density of fixed degree m: coefficients are DiffPoly,
/// wedge monomials are stored sorted with the permutation sign absorbed into
/// the coefficient; repeated slots vanish. Degree 0 coincides with
/// GradedDensity.
class TensorDensity {
public:
    TensorDensity() = default;
    TensorDensity(FieldSpecPtr spec, int degree, SlotKind kind);

    static TensorDensity zero(FieldSpecPtr spec, int degree, SlotKind kind);
    static TensorDensity from_density(const GradedDensity& d, SlotKind kind = SlotKind::Form);

    const FieldSpecPtr& spec() const { return spec_; }
    int degree() const { return degree_; }
    SlotKind kind() const { return kind_; }
    const std::map<TensorKey, DiffPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Inserts c * theta^(grading) * slots with the slots in the given order;
    /// sorts, absorbs the sign, drops repeated-slot monomials.
    void add_term(const MultiIndex& grading, WedgeMonomial slots, const DiffPoly& c);

    GradedDensity to_density() const; // degree 0 only

    TensorDensity operator+(const TensorDensity& o) const;
    TensorDensity operator-(const TensorDensity& o) const;
    TensorDensity operator-() const;
    TensorDensity operator*(const Rational& c) const;

    bool operator==(const TensorDensity& o) const {
        return degree_ == o.degree_ && terms_ == o.terms_;
    }

private:
    FieldSpecPtr spec_;
    int degree_ = 0;
    SlotKind kind_ = SlotKind::Form;
    std::map<TensorKey, DiffPoly> terms_;
};

/// Functional 1-vector in canonical form: all vector slots underived, one
/// characteristic polynomial per (grading, field). In one-to-one
/// correspondence with evolutionary vector fields.
class OneVectorCanonical {
public:
    OneVectorCanonical() = default;
    explicit OneVectorCanonical(FieldSpecPtr spec) : spec_(std::move(spec)) {}

    static OneVectorCanonical zero(FieldSpecPtr spec) { return OneVectorCanonical(std::move(spec)); }
    /// theta^(J) * xi * delta/delta phi_A.
    static OneVectorCanonical part(const MultiIndex& grading, int field, const DiffPoly& xi);

    const FieldSpecPtr& spec() const { return spec_; }
    const std::map<std::pair<MultiIndex, int>, DiffPoly>& characteristics() const { return chi_; }
    bool is_zero() const { return chi_.empty(); }
    DiffPoly at(const MultiIndex& grading, int field) const;

    void add_characteristic(const MultiIndex& grading, int field, const DiffPoly& p);

    OneVectorCanonical operator+(const OneVectorCanonical& o) const;
    OneVectorCanonical operator-(const OneVectorCanonical& o) const;
    OneVectorCanonical operator-() const;
    OneVectorCanonical operator*(const Rational& c) const;

    TensorDensity to_tensor() const;

    bool operator==(const OneVectorCanonical& o) const { return chi_ == o.chi_; }

private:
    FieldSpecPtr spec_;
    std::map<std::pair<MultiIndex, int>, DiffPoly> chi_;
};

/// Functional 1-form with every slot underived: coefficients alpha_A^<J>.
/// The canonical presentation of dF has coefficient (-1)^|Q| E^Q_A(f) at
/// grading Q.
class OneFormCanonical {
public:
    OneFormCanonical() = default;
    explicit OneFormCanonical(FieldSpecPtr spec) : spec_(std::move(spec)) {}

    const FieldSpecPtr& spec() const { return spec_; }
    const std::map<std::pair<MultiIndex, int>, DiffPoly>& coefficients() const { return coeff_; }
    bool is_zero() const { return coeff_.empty(); }
    DiffPoly at(const MultiIndex& grading, int field) const;

    void add_coefficient(const MultiIndex& grading, int field, const DiffPoly& p);

    TensorDensity to_tensor() const;

private:
    FieldSpecPtr spec_;
    std::map<std::pair<MultiIndex, int>, DiffPoly> coeff_;
};

/// dF: the first variation, a 1-form with coefficient df^<J>/dphi_A^(K) on
/// (J, delta phi_A^(K)).
TensorDensity differential_of_functional(const GradedDensity& f);

/// Exterior differential of an m-form: coefficients are differentiated with
/// respect to every jet variable and the new delta phi^(K) is wedged in
/// front. d of a degree-0 tensor equals differential_of_functional.
TensorDensity exterior_d(const TensorDensity& t);

/// Interior product of an evolutionary vector field (canonical 1-vector)
/// with an m-form: slot i is contracted with D_{K_i} xi_{A_i} and removed,
/// sign (-1)^(i+1), gradings add.
TensorDensity interior_product(const OneVectorCanonical& xi, const TensorDensity& alpha);

/// Mirrored contraction: canonical 1-form into an m-vector; the slot's
/// derivative index acts on the form coefficient.
TensorDensity interior_product(const OneFormCanonical& alpha, const TensorDensity& t);

/// alpha(xi_1,...,xi_m) = xi_m . ... xi_1 . alpha as a graded density.
GradedDensity pair_form_vectors(const TensorDensity& alpha,
                                const std::vector<OneVectorCanonical>& xs);

/// Value of an m-vector on m canonical 1-forms (forms[0] contracted first).
GradedDensity evaluate_on_forms(const TensorDensity& t,
                                const std::vector<OneFormCanonical>& forms);

/// Integration by parts moving every derivative off the vector slot:
/// theta^(J) b (d/dphi_A)^(L) contributes (-1)^|L| (L choose Q) D_{L-Q}(b)
/// at grading J+Q. Pairings against arbitrary 1-forms are preserved modulo
/// formal divergences.
OneVectorCanonical canonicalize_one_vector(const TensorDensity& t);

/// Same rewrite for 1-forms; on dF this yields the higher-Euler
/// presentation.
OneFormCanonical canonicalize_one_form(const TensorDensity& t);

/// Action of an evolutionary vector field on a local functional:
/// sum theta^(I+J) D_K xi_A^<J> df^<I>/dphi_A^(K).
GradedDensity evolutionary_action(const OneVectorCanonical& xi, const GradedDensity& f);

/// Commutator of evolutionary vector fields, as characteristics:
/// psi_A = sum (D_L xi_B dEta_A/dphi_B^(L) - D_L eta_B dXi_A/dphi_B^(L)).
OneVectorCanonical commutator(const OneVectorCanonical& xi, const OneVectorCanonical& eta);

/// Cartan formula L_xi alpha = xi . d alpha + d(xi . alpha).
TensorDensity lie_derivative(const OneVectorCanonical& xi, const TensorDensity& alpha);

/// Poisson bivector of a skew-adjoint operator:
/// 1/2 sum theta^(J) I^<J>N_AB (d/dphi_A) ^ (d/dphi_B)^(N).
TensorDensity bivector_from_operator(const GradedOperator& op);

/// Inverse presentation: integrate by parts until the first slot is
/// underived, read the coefficients off, return the skew part.
GradedOperator operator_from_bivector(const TensorDensity& t);

/// Normal form supported at grading zero; the rewrite
/// theta^(J) X -> -theta^(J-e_j) D_j X with D acting on the coefficient and
/// all slots (Leibniz). Equality of tensor_nf images is equality modulo
/// formal divergences.
TensorDensity tensor_nf(const TensorDensity& t);

/// Formal divergence of a tensor (theta raised plus Leibniz D_i); its
/// tensor_nf vanishes.
TensorDensity divergence(const TensorDensity& t, std::size_t coord);

} // namespace varcalc
