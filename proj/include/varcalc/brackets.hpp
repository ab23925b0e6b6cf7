#pragma once

#include "varcalc/tensor_density.hpp"

namespace varcalc {

enum class BracketMode { Graded, Classical };
enum class BracketMethod { Frechet, Euler };

/// Outcome of the Hamiltonianness decision procedure.
struct HamiltonianVerdict {
    BracketMode mode = BracketMode::Graded;
    bool is_hamiltonian = false;
    /// Graded mode: tensor_nf of [Psi,Psi]; zero iff Hamiltonian.
    /// Classical mode: the classical trivector, which the verdict tests for
    /// being a total divergence (zero in that quotient iff Hamiltonian).
    TensorDensity residual;
    /// The displayed intermediate trivector before normalization.
    TensorDensity residual_pre_nf;
    /// The skew-adjoint operator actually tested.
    GradedOperator operator_used;
    /// True when the input had to be replaced by its skew part.
    bool skew_part_taken = false;
};

/// Schouten-Nijenhuis bracket of canonical 1-vectors via the expansion
/// d xi . eta - d eta . xi; equals -commutator(xi, eta). Computed directly
/// from the characteristics, independently of commutator().
OneVectorCanonical sn_bracket_11(const OneVectorCanonical& xi, const OneVectorCanonical& eta);

/// [Psi,Psi]_SN for the bivector of a skew-adjoint operator, before
/// normalization: the trivector sum xi /\ I'(I xi) /\ xi with gradings
/// added. Signs follow the worked KdV-2 expansion.
TensorDensity sn_self_bracket_22_pre_nf(const GradedOperator& op);

/// tensor_nf of the above; zero iff the operator is Hamiltonian in the
/// graded sense.
TensorDensity sn_self_bracket_22(const GradedOperator& op);

/// Poisson bracket of two local functionals through a skew-adjoint
/// operator; Frechet route (brack1) or higher-Euler route (brack2). The two
/// agree modulo formal divergences.
GradedDensity poisson_bracket(const GradedOperator& op, const GradedDensity& f,
                              const GradedDensity& g,
                              BracketMethod method = BracketMethod::Frechet);

/// I dH as a canonical 1-vector: the operator applied to the higher-Euler
/// presentation of dH.
OneVectorCanonical hamiltonian_vector_field(const GradedOperator& op, const GradedDensity& h);

/// grading_zero_nf of {{F,G},H} + {{G,H},F} + {{H,F},G}.
GradedDensity jacobi_residual(const GradedOperator& op, const GradedDensity& f,
                              const GradedDensity& g, const GradedDensity& h,
                              BracketMethod method = BracketMethod::Frechet);

/// Decision procedure. Graded mode: [Psi,Psi]_SN normal form must vanish.
/// Classical mode: theta is stripped and the classical trivector is tested
/// for exactness with even and odd Euler operators.
HamiltonianVerdict is_hamiltonian(const GradedOperator& op, BracketMode mode);

/// Divergence test underlying the classical verdict: all variational
/// derivatives with respect to jet variables and odd wedge generators
/// vanish.
bool is_total_divergence_classical(const TensorDensity& t);

} // namespace varcalc
