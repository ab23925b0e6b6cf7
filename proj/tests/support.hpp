#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "varcalc/brackets.hpp"
#include "varcalc/dsl.hpp"

namespace varcalc::testing {

// Recorded seed for every randomized suite; comparisons are exact, so runs
// are bit-reproducible.
inline constexpr std::uint64_t kSeed = 20250809ULL;

class Rng {
public:
    explicit Rng(std::uint64_t seed = kSeed) : eng_(seed) {}

    // range is inclusive; avoids distribution objects so streams are
    // identical across standard libraries
    int range(int lo, int hi) { return lo + static_cast<int>(eng_() % (hi - lo + 1)); }
    bool chance(int percent) { return range(1, 100) <= percent; }

    Rational rational() {
        int num = range(-3, 3);
        if (num == 0) num = 1;
        int den = range(1, 3);
        return rat(num, den);
    }

private:
    std::mt19937_64 eng_;
};

inline MultiIndex rand_multi(Rng& rng, std::size_t dims, int max_order) {
    MultiIndex m(dims);
    int budget = rng.range(0, max_order);
    for (int i = 0; i < budget; ++i)
        ++m[static_cast<std::size_t>(rng.range(0, static_cast<int>(dims) - 1))];
    return m;
}

inline Monomial rand_monomial(const FieldSpecPtr& spec, Rng& rng, int max_degree, int max_order) {
    int deg = rng.range(1, max_degree);
    std::vector<Monomial::Factor> fs;
    for (int i = 0; i < deg; ++i) {
        JetVar v{rng.range(0, static_cast<int>(spec->n_fields()) - 1),
                 rand_multi(rng, spec->n_dims(), max_order)};
        fs.emplace_back(v, 1);
    }
    return Monomial(std::move(fs));
}

inline DiffPoly rand_poly(const FieldSpecPtr& spec, Rng& rng, int max_terms = 3,
                          int max_degree = 2, int max_order = 2) {
    DiffPoly p(spec);
    int terms = rng.range(1, max_terms);
    for (int i = 0; i < terms; ++i)
        p.add_term(rand_monomial(spec, rng, max_degree, max_order), rng.rational());
    return p;
}

inline GradedDensity rand_density(const FieldSpecPtr& spec, Rng& rng, int max_parts = 2,
                                  int max_grading = 2, int max_terms = 2, int max_degree = 2,
                                  int max_order = 2) {
    GradedDensity d(spec);
    int parts = rng.range(1, max_parts);
    for (int i = 0; i < parts; ++i)
        d.add_part(rand_multi(rng, spec->n_dims(), max_grading),
                   rand_poly(spec, rng, max_terms, max_degree, max_order));
    return d;
}

inline GradedOperator rand_operator(const FieldSpecPtr& spec, Rng& rng, int max_entries = 3,
                                    int max_grading = 3, int max_deriv = 3, int max_degree = 2) {
    GradedOperator op(spec);
    int entries = rng.range(1, max_entries);
    for (int i = 0; i < entries; ++i) {
        OperatorKey k{rand_multi(rng, spec->n_dims(), max_grading),
                      rng.range(0, static_cast<int>(spec->n_fields()) - 1),
                      rng.range(0, static_cast<int>(spec->n_fields()) - 1),
                      rand_multi(rng, spec->n_dims(), max_deriv)};
        DiffPoly c = rng.chance(30) ? DiffPoly::constant(spec, rng.rational())
                                    : rand_poly(spec, rng, 2, max_degree, 2);
        op.add_coeff(k, c);
    }
    return op;
}

inline GradedOperator rand_skew_operator(const FieldSpecPtr& spec, Rng& rng) {
    return skew_part(rand_operator(spec, rng));
}

inline OneVectorCanonical rand_one_vector(const FieldSpecPtr& spec, Rng& rng, int max_parts = 2,
                                          int max_grading = 1) {
    OneVectorCanonical v(spec);
    int parts = rng.range(1, max_parts);
    for (int i = 0; i < parts; ++i)
        v.add_characteristic(rand_multi(rng, spec->n_dims(), max_grading),
                             rng.range(0, static_cast<int>(spec->n_fields()) - 1),
                             rand_poly(spec, rng, 2, 2, 2));
    return v;
}

inline TensorDensity rand_form(const FieldSpecPtr& spec, Rng& rng, int degree,
                               int max_terms = 3, int max_grading = 1) {
    TensorDensity t(spec, degree, SlotKind::Form);
    int terms = rng.range(1, max_terms);
    for (int i = 0; i < terms; ++i) {
        WedgeMonomial slots;
        for (int s = 0; s < degree; ++s)
            slots.push_back(WedgeSlot{rng.range(0, static_cast<int>(spec->n_fields()) - 1),
                                      rand_multi(rng, spec->n_dims(), 2)});
        t.add_term(rand_multi(rng, spec->n_dims(), max_grading), std::move(slots),
                   rand_poly(spec, rng, 2, 2, 2));
    }
    return t;
}

inline bool nf_equal(const GradedDensity& a, const GradedDensity& b) {
    return grading_zero_nf(a) == grading_zero_nf(b);
}

// Fixtures from the worked examples.

inline FieldSpecPtr kdv_spec() { return make_spec({"x"}, {"u"}); }

inline MultiIndex mi1(int k) { return MultiIndex(std::vector<int>{k}); }

/// The jet variable of `field` derived `order` times along the first
/// coordinate, as a polynomial.
inline DiffPoly u_jet(const FieldSpecPtr& spec, int order, int field = 0) {
    MultiIndex m(spec->n_dims());
    m[0] = order;
    return DiffPoly::var(spec, field, m);
}

/// theta D (first KdV structure, pre-skew).
inline GradedOperator kdv1_op(const FieldSpecPtr& spec) {
    GradedOperator op(spec);
    op.add_coeff(OperatorKey{mi1(0), 0, 0, mi1(1)}, DiffPoly::constant(spec, rat(1)));
    return op;
}

/// theta (D^3 + 2/3 u D + 1/3 u_x) (second KdV structure, pre-skew).
inline GradedOperator kdv2_op(const FieldSpecPtr& spec) {
    GradedOperator op(spec);
    op.add_coeff(OperatorKey{mi1(0), 0, 0, mi1(3)}, DiffPoly::constant(spec, rat(1)));
    op.add_coeff(OperatorKey{mi1(0), 0, 0, mi1(1)},
                 DiffPoly::var(spec, 0, mi1(0)) * rat(2, 3));
    op.add_coeff(OperatorKey{mi1(0), 0, 0, mi1(0)},
                 DiffPoly::var(spec, 0, mi1(1)) * rat(1, 3));
    return op;
}

inline FieldSpecPtr euler2d_spec() { return make_spec({"x", "y"}, {"w"}); }

/// theta (w_x D_y - w_y D_x) (2D vorticity operator, pre-skew).
inline GradedOperator euler2d_op(const FieldSpecPtr& spec) {
    GradedOperator op(spec);
    MultiIndex ex = MultiIndex::unit(2, 0), ey = MultiIndex::unit(2, 1), z(2);
    op.add_coeff(OperatorKey{z, 0, 0, ey}, DiffPoly::var(spec, 0, ex));
    op.add_coeff(OperatorKey{z, 0, 0, ex}, -DiffPoly::var(spec, 0, ey));
    return op;
}

/// Test-only oracle: full trace pairing of a 1-form with a 1-vector, both
/// with arbitrarily derived slots:
///   sum theta^(I+J) D_L(alpha_AK) D_K(xi_AL).
inline GradedDensity general_trace_pairing(const TensorDensity& form, const TensorDensity& vec) {
    GradedDensity out(form.spec());
    for (const auto& [fk, a] : form.terms()) {
        const WedgeSlot& fs = fk.slots[0];
        for (const auto& [vk, b] : vec.terms()) {
            const WedgeSlot& vs = vk.slots[0];
            if (fs.field != vs.field) continue;
            out.add_part(fk.grading + vk.grading,
                         total_derivative(a, vs.deriv) * total_derivative(b, fs.deriv));
        }
    }
    return out;
}

/// All monomial densities in the fields of `spec` with derivative order at
/// most `max_order` and total degree between 1 and `max_degree`.
inline std::vector<DiffPoly> monomial_basis(const FieldSpecPtr& spec, int max_order,
                                            int max_degree) {
    std::vector<JetVar> gens;
    for (std::size_t a = 0; a < spec->n_fields(); ++a)
        for (const MultiIndex& k : multi_indices_up_to(spec->n_dims(), max_order))
            gens.push_back(JetVar{static_cast<int>(a), k});
    std::vector<Monomial> monos{Monomial::one()};
    std::vector<DiffPoly> out;
    for (int d = 1; d <= max_degree; ++d) {
        std::vector<Monomial> next;
        for (const Monomial& m : monos)
            for (const JetVar& v : gens) next.push_back(m * Monomial::var(v));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (const Monomial& m : next) {
            DiffPoly p(spec);
            p.add_term(m, rat(1));
            out.push_back(p);
        }
        monos = std::move(next);
    }
    return out;
}

} // namespace varcalc::testing
