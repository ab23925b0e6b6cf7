#include "varcalc/brackets.hpp"

#include <set>

namespace varcalc {

OneVectorCanonical sn_bracket_11(const OneVectorCanonical& xi, const OneVectorCanonical& eta) {
    FieldSpecPtr spec = require_same_spec(xi.spec(), eta.spec());
    // d xi . eta, expanded over characteristics: the coefficient of
    // delta/delta phi_A at grading J+K is sum_{B,L} dXi_A^<J>/dphi_B^(L) D_L eta_B^<K>.
    auto half = [&](const OneVectorCanonical& first, const OneVectorCanonical& second) {
        OneVectorCanonical acc(spec);
        for (const auto& [ka, pa] : first.characteristics()) {
            for (const JetVar& v : pa.variables()) {
                DiffPoly dp = partial_jet(pa, v);
                for (const auto& [kb, pb] : second.characteristics()) {
                    if (kb.second != v.field) continue;
                    acc.add_characteristic(ka.first + kb.first, ka.second,
                                           dp * total_derivative(pb, v.deriv));
                }
            }
        }
        return acc;
    };
    return half(xi, eta) - half(eta, xi);
}

namespace {

// xi /\ I'(I xi) /\ xi: the outer entry contributes slots (A,0) and (B,N),
// the inner application I xi a derived middle slot; D_J distributes over
// the inner coefficient and slot by Leibniz. The operator is used as given.
TensorDensity sn_self_core(const GradedOperator& op) {
    const FieldSpecPtr& spec = op.spec();
    TensorDensity out(spec, 3, SlotKind::Vector);
    if (!spec) return out;
    MultiIndex zero(spec->n_dims());
    for (const auto& [keyL, cL] : op.coeffs()) {
        for (const JetVar& v : cL.variables()) {
            DiffPoly p = partial_jet(cL, v);
            for (const auto& [keyM, cM] : op.coeffs()) {
                if (keyM.row != v.field) continue;
                for_each_leq(v.deriv, [&](const MultiIndex& r) {
                    DiffPoly coeff =
                        p * total_derivative(cM, r) * Rational(multi_binomial(v.deriv, r));
                    WedgeMonomial slots{WedgeSlot{keyL.row, zero},
                                        WedgeSlot{keyM.col, keyM.deriv + (v.deriv - r)},
                                        WedgeSlot{keyL.col, keyL.deriv}};
                    out.add_term(keyL.grading + keyM.grading, std::move(slots), coeff);
                });
            }
        }
    }
    return out;
}

} // namespace

TensorDensity sn_self_bracket_22_pre_nf(const GradedOperator& op_in) {
    GradedOperator op = is_skew_adjoint(op_in) ? op_in : skew_part(op_in);
    return sn_self_core(op);
}

TensorDensity sn_self_bracket_22(const GradedOperator& op) {
    return tensor_nf(sn_self_bracket_22_pre_nf(op));
}

namespace {

void require_skew(const GradedOperator& op, const char* what) {
    if (!is_skew_adjoint(op))
        throw PreconditionError(std::string(what) + " requires a skew-adjoint operator");
}

GradedDensity poisson_frechet(const GradedOperator& op, const GradedDensity& f,
                              const GradedDensity& g) {
    GradedDensity out(require_same_spec(op.spec(), require_same_spec(f.spec(), g.spec())));
    for (const auto& [jf, fp] : f.parts()) {
        auto fvars = fp.variables();
        for (const auto& [jg, gp] : g.parts()) {
            auto gvars = gp.variables();
            for (const auto& [key, c] : op.coeffs()) {
                for (const JetVar& vf : fvars) {
                    if (vf.field != key.row) continue;
                    DiffPoly af = partial_jet(fp, vf);
                    for (const JetVar& vg : gvars) {
                        if (vg.field != key.col) continue;
                        DiffPoly bg = partial_jet(gp, vg);
                        // Tr(f' I g') = sum (J choose M)(K choose L)
                        //   D_L(df/dphi^(J)) D_{J+K-L-M}(I) D_{N+M}(dg/dphi^(K))
                        for_each_leq(vg.deriv, [&](const MultiIndex& l) {
                            DiffPoly dlaf = total_derivative(af, l);
                            Integer bkl = multi_binomial(vg.deriv, l);
                            for_each_leq(vf.deriv, [&](const MultiIndex& m) {
                                Rational coeff(multi_binomial(vf.deriv, m) * bkl);
                                DiffPoly mid =
                                    total_derivative(c, (vf.deriv - m) + (vg.deriv - l));
                                DiffPoly right = total_derivative(bg, key.deriv + m);
                                out.add_part(jf + jg + key.grading,
                                             dlaf * mid * right * coeff);
                            });
                        });
                    }
                }
            }
        }
    }
    return out;
}

GradedDensity poisson_euler(const GradedOperator& op, const GradedDensity& f,
                            const GradedDensity& g) {
    GradedDensity out(require_same_spec(op.spec(), require_same_spec(f.spec(), g.spec())));
    for (const auto& [jf, fp] : f.parts()) {
        for (const auto& [jg, gp] : g.parts()) {
            for (const auto& [key, c] : op.coeffs()) {
                MultiIndex pbound = fp.max_deriv(key.row);
                MultiIndex qbound = gp.max_deriv(key.col);
                for_each_leq(pbound, [&](const MultiIndex& p) {
                    DiffPoly ep = higher_euler(fp, key.row, p);
                    if (ep.is_zero()) return;
                    for_each_leq(qbound, [&](const MultiIndex& q) {
                        DiffPoly eq = higher_euler(gp, key.col, q);
                        if (eq.is_zero()) return;
                        DiffPoly inner = ep * c * total_derivative(eq, key.deriv);
                        out.add_part(jf + jg + key.grading, total_derivative(inner, p + q));
                    });
                });
            }
        }
    }
    return out;
}

} // namespace

GradedDensity poisson_bracket(const GradedOperator& op, const GradedDensity& f,
                              const GradedDensity& g, BracketMethod method) {
    require_skew(op, "poisson_bracket");
    return method == BracketMethod::Frechet ? poisson_frechet(op, f, g)
                                            : poisson_euler(op, f, g);
}

OneVectorCanonical hamiltonian_vector_field(const GradedOperator& op, const GradedDensity& h) {
    require_skew(op, "hamiltonian_vector_field");
    FieldSpecPtr spec = require_same_spec(op.spec(), h.spec());
    OneFormCanonical dh = canonicalize_one_form(differential_of_functional(h));
    std::vector<GradedDensity> q(spec->n_fields(), GradedDensity(spec));
    for (const auto& [k, p] : dh.coefficients()) q[k.second].add_part(k.first, p);
    std::vector<GradedDensity> r = apply_operator(op, q);
    OneVectorCanonical out(spec);
    for (std::size_t a = 0; a < r.size(); ++a)
        for (const auto& [j, p] : r[a].parts())
            out.add_characteristic(j, static_cast<int>(a), p);
    return out;
}

GradedDensity jacobi_residual(const GradedOperator& op, const GradedDensity& f,
                              const GradedDensity& g, const GradedDensity& h,
                              BracketMethod method) {
    require_skew(op, "jacobi_residual");
    GradedDensity sum = poisson_bracket(op, poisson_bracket(op, f, g, method), h, method) +
                        poisson_bracket(op, poisson_bracket(op, g, h, method), f, method) +
                        poisson_bracket(op, poisson_bracket(op, h, f, method), g, method);
    return grading_zero_nf(sum);
}

namespace {

TensorDensity even_partial(const TensorDensity& t, const JetVar& v) {
    TensorDensity out(t.spec(), t.degree(), t.kind());
    for (const auto& [key, c] : t.terms()) out.add_term(key.grading, key.slots, partial_jet(c, v));
    return out;
}

// Left derivative with respect to one odd generator.
TensorDensity odd_partial(const TensorDensity& t, const WedgeSlot& zeta) {
    TensorDensity out(t.spec(), t.degree() - 1, t.kind());
    for (const auto& [key, c] : t.terms()) {
        for (std::size_t i = 0; i < key.slots.size(); ++i) {
            if (!(key.slots[i] == zeta)) continue;
            Rational sign((i % 2 == 0) ? 1 : -1);
            WedgeMonomial rest;
            for (std::size_t k = 0; k < key.slots.size(); ++k)
                if (k != i) rest.push_back(key.slots[k]);
            out.add_term(key.grading, std::move(rest), c * sign);
        }
    }
    return out;
}

// Total derivative with theta held fixed (the classical, ungraded one).
TensorDensity classical_total_derivative(const TensorDensity& t, std::size_t coord) {
    TensorDensity out(t.spec(), t.degree(), t.kind());
    if (!t.spec()) return out;
    MultiIndex e = MultiIndex::unit(t.spec()->n_dims(), coord);
    for (const auto& [key, c] : t.terms()) {
        out.add_term(key.grading, key.slots, total_derivative(c, coord));
        for (std::size_t k = 0; k < key.slots.size(); ++k) {
            WedgeMonomial slots = key.slots;
            slots[k].deriv = slots[k].deriv + e;
            out.add_term(key.grading, std::move(slots), c);
        }
    }
    return out;
}

TensorDensity classical_total_derivative(const TensorDensity& t, const MultiIndex& k) {
    TensorDensity r = t;
    for (std::size_t i = 0; i < k.dims(); ++i)
        for (int n = 0; n < k[i]; ++n) r = classical_total_derivative(r, i);
    return r;
}

} // namespace

bool is_total_divergence_classical(const TensorDensity& t) {
    if (t.is_zero()) return true;
    const FieldSpecPtr& spec = t.spec();
    for (const auto& [key, c] : t.terms())
        if (!key.grading.is_zero())
            throw PreconditionError("classical divergence test expects grading-0 input");
    // Even Euler operators, one per field.
    for (std::size_t a = 0; a < spec->n_fields(); ++a) {
        std::set<MultiIndex> ks;
        for (const auto& [key, c] : t.terms())
            for (const JetVar& v : c.variables())
                if (v.field == static_cast<int>(a)) ks.insert(v.deriv);
        TensorDensity acc(spec, t.degree(), t.kind());
        for (const MultiIndex& k : ks) {
            Rational sign((k.order() % 2 == 0) ? 1 : -1);
            acc = acc + classical_total_derivative(
                            even_partial(t, JetVar{static_cast<int>(a), k}), k) *
                            sign;
        }
        if (!acc.is_zero()) return false;
    }
    // Odd Euler operators over the wedge generators.
    for (std::size_t a = 0; a < spec->n_fields(); ++a) {
        std::set<MultiIndex> ks;
        for (const auto& [key, c] : t.terms())
            for (const WedgeSlot& s : key.slots)
                if (s.field == static_cast<int>(a)) ks.insert(s.deriv);
        TensorDensity acc(spec, t.degree() - 1, t.kind());
        for (const MultiIndex& k : ks) {
            Rational sign((k.order() % 2 == 0) ? 1 : -1);
            acc = acc + classical_total_derivative(
                            odd_partial(t, WedgeSlot{static_cast<int>(a), k}), k) *
                            sign;
        }
        if (!acc.is_zero()) return false;
    }
    return true;
}

HamiltonianVerdict is_hamiltonian(const GradedOperator& op, BracketMode mode) {
    HamiltonianVerdict v;
    v.mode = mode;
    if (mode == BracketMode::Graded) {
        v.skew_part_taken = !is_skew_adjoint(op);
        v.operator_used = v.skew_part_taken ? skew_part(op) : op;
        v.residual_pre_nf = sn_self_bracket_22_pre_nf(v.operator_used);
        v.residual = tensor_nf(v.residual_pre_nf);
        v.is_hamiltonian = v.residual.is_zero();
        return v;
    }
    GradedOperator classical = strip_grading(op);
    GradedOperator adj = strip_grading(adjoint(classical));
    v.skew_part_taken = !(classical + adj).is_zero();
    v.operator_used = (classical - adj) * Rational(1, 2);
    v.residual_pre_nf = sn_self_core(v.operator_used);
    v.residual = v.residual_pre_nf; // already supported at grading zero
    v.is_hamiltonian = is_total_divergence_classical(v.residual);
    return v;
}

} // namespace varcalc
