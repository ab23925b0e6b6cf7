#pragma once

#include <compare>
#include <map>
#include <span>
#include <vector>

#include "varcalc/field_spec.hpp"
#include "varcalc/multi_index.hpp"
#include "varcalc/rational.hpp"

namespace varcalc {

/// A jet variable phi_A^(K): field index A plus derivative multi-index K.
/// Distinct jet variables are independent polynomial generators.
struct JetVar {
    int field = 0;
    MultiIndex deriv;

    bool operator==(const JetVar&) const = default;
    auto operator<=>(const JetVar&) const = default;
};

/// Power product of jet variables; factors sorted by generator, exponents
/// positive. Ordering is graded-lex over (field, deriv) so maps over
/// monomials iterate deterministically.
class Monomial {
public:
    using Factor = std::pair<JetVar, int>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors); // factors need not be sorted

    static Monomial one() { return Monomial(); }
    static Monomial var(const JetVar& v, int exp = 1);

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int degree() const;
    int exponent_of(const JetVar& v) const;

    Monomial operator*(const Monomial& o) const;
    /// Multiplies the exponent of v by delta (may be negative); drops the
    /// factor at zero. Caller must not drive an exponent negative.
    Monomial with_exponent_shift(const JetVar& v, int delta) const;

    bool operator==(const Monomial&) const = default;
    std::strong_ordering operator<=>(const Monomial& o) const;

private:
    std::vector<Factor> f_;
};

/// Differential polynomial: exact-rational linear combination of monomials
/// in jet variables. Canonical (no zero coefficients), so equality is map
/// equality. The zero polynomial is the empty map.
class DiffPoly {
public:
    DiffPoly() = default;
    explicit DiffPoly(FieldSpecPtr spec) : spec_(std::move(spec)) {}

    static DiffPoly zero(FieldSpecPtr spec) { return DiffPoly(std::move(spec)); }
    static DiffPoly constant(FieldSpecPtr spec, const Rational& c);
    static DiffPoly var(FieldSpecPtr spec, const JetVar& v);
    /// Convenience: the jet variable of `field` with derivative K.
    static DiffPoly var(FieldSpecPtr spec, int field, const MultiIndex& deriv);

    const FieldSpecPtr& spec() const { return spec_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int degree() const;
    /// Componentwise max of the derivative indices of field A's variables.
    MultiIndex max_deriv(int field) const;
    /// The distinct jet variables occurring in the polynomial.
    std::vector<JetVar> variables() const;

    void add_term(const Monomial& m, const Rational& c);

    DiffPoly operator+(const DiffPoly& o) const;
    DiffPoly operator-(const DiffPoly& o) const;
    DiffPoly operator-() const;
    DiffPoly operator*(const DiffPoly& o) const;
    DiffPoly operator*(const Rational& c) const;
    friend DiffPoly operator*(const Rational& c, const DiffPoly& p) { return p * c; }

    bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }

private:
    FieldSpecPtr spec_;
    std::map<Monomial, Rational> terms_;
};

/// Formal partial derivative with respect to the generator v.
DiffPoly partial_jet(const DiffPoly& p, const JetVar& v);

/// Single total derivative D_i: chain rule through every jet variable.
DiffPoly total_derivative(const DiffPoly& p, std::size_t coord);

/// Iterated total derivative D_J (coordinate order is immaterial).
DiffPoly total_derivative(const DiffPoly& p, const MultiIndex& j);

/// Frechet derivative f'(eta) = sum (df/dphi_A^(K)) D_K eta_A; one direction
/// polynomial per field.
DiffPoly frechet(const DiffPoly& p, std::span<const DiffPoly> eta);

/// Higher Eulerian operator
///   E^K_A(f) = sum_{J >= K} (J choose K) (-D)_{J-K} df/dphi_A^(J).
/// The convention is fixed by the identity
///   sum_{A,K} D_K(E^K_A(f) eta_A) = f'(eta), enforced by tests.
DiffPoly higher_euler(const DiffPoly& p, int field, const MultiIndex& k);

/// Lifts a polynomial to a larger spec that contains all of its fields
/// (matched by name). Used together with extend_spec.
DiffPoly lift(const DiffPoly& p, const FieldSpecPtr& bigger);

} // namespace varcalc
