#include "varcalc/tensor_density.hpp"

#include <cassert>
#include <optional>

namespace varcalc {

namespace {

// Sorts slots ascending; returns the permutation parity, or nullopt when a
// slot repeats (the wedge monomial vanishes).
std::optional<int> sort_slots(WedgeMonomial& w) {
    int sign = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
        for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
            std::swap(w[j], w[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1]) return std::nullopt;
    return sign;
}

void insert_canonical(std::map<TensorKey, DiffPoly>& terms, const MultiIndex& grading,
                      WedgeMonomial slots, const DiffPoly& c) {
    if (c.is_zero()) return;
    auto sign = sort_slots(slots);
    if (!sign) return;
    DiffPoly v = (*sign == 1) ? c : -c;
    TensorKey key{grading, std::move(slots)};
    auto [it, inserted] = terms.emplace(std::move(key), v);
    if (!inserted) {
        it->second = it->second + v;
        if (it->second.is_zero()) terms.erase(it);
    }
}

WedgeMonomial without(const WedgeMonomial& w, std::size_t i) {
    WedgeMonomial r;
    r.reserve(w.size() - 1);
    for (std::size_t k = 0; k < w.size(); ++k)
        if (k != i) r.push_back(w[k]);
    return r;
}

} // namespace

TensorDensity::TensorDensity(FieldSpecPtr spec, int degree, SlotKind kind)
    : spec_(std::move(spec)), degree_(degree), kind_(kind) {
    assert(degree_ >= 0);
}

TensorDensity TensorDensity::zero(FieldSpecPtr spec, int degree, SlotKind kind) {
    return TensorDensity(std::move(spec), degree, kind);
}

TensorDensity TensorDensity::from_density(const GradedDensity& d, SlotKind kind) {
    TensorDensity t(d.spec(), 0, kind);
    for (const auto& [j, p] : d.parts()) t.add_term(j, {}, p);
    return t;
}

void TensorDensity::add_term(const MultiIndex& grading, WedgeMonomial slots, const DiffPoly& c) {
    if (static_cast<int>(slots.size()) != degree_)
        throw SpecMismatchError("wedge monomial length does not match tensor degree");
    if (!spec_) spec_ = c.spec();
    insert_canonical(terms_, grading, std::move(slots), c);
}

GradedDensity TensorDensity::to_density() const {
    if (degree_ != 0) throw PreconditionError("only degree-0 tensors convert to densities");
    GradedDensity d(spec_);
    for (const auto& [key, c] : terms_) d.add_part(key.grading, c);
    return d;
}

TensorDensity TensorDensity::operator+(const TensorDensity& o) const {
    if (degree_ != o.degree_ || (degree_ > 0 && !terms_.empty() && !o.terms_.empty() && kind_ != o.kind_))
        throw SpecMismatchError("tensor degree/kind mismatch in addition");
    TensorDensity r(require_same_spec(spec_, o.spec_), degree_,
                    terms_.empty() ? o.kind_ : kind_);
    r.terms_ = terms_;
    for (const auto& [key, c] : o.terms_) insert_canonical(r.terms_, key.grading, key.slots, c);
    return r;
}

TensorDensity TensorDensity::operator-(const TensorDensity& o) const { return *this + (-o); }

TensorDensity TensorDensity::operator-() const {
    TensorDensity r(spec_, degree_, kind_);
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
}

TensorDensity TensorDensity::operator*(const Rational& c) const {
    TensorDensity r(spec_, degree_, kind_);
    if (varcalc::is_zero(c)) return r;
    for (const auto& [key, p] : terms_) r.terms_.emplace(key, p * c);
    return r;
}

OneVectorCanonical OneVectorCanonical::part(const MultiIndex& grading, int field,
                                            const DiffPoly& xi) {
    OneVectorCanonical v(xi.spec());
    v.add_characteristic(grading, field, xi);
    return v;
}

DiffPoly OneVectorCanonical::at(const MultiIndex& grading, int field) const {
    auto it = chi_.find({grading, field});
    return it == chi_.end() ? DiffPoly(spec_) : it->second;
}

void OneVectorCanonical::add_characteristic(const MultiIndex& grading, int field,
                                            const DiffPoly& p) {
    if (p.is_zero()) return;
    if (!spec_) spec_ = p.spec();
    auto [it, inserted] = chi_.emplace(std::make_pair(grading, field), p);
    if (!inserted) {
        it->second = it->second + p;
        if (it->second.is_zero()) chi_.erase(it);
    }
}

OneVectorCanonical OneVectorCanonical::operator+(const OneVectorCanonical& o) const {
    OneVectorCanonical r(require_same_spec(spec_, o.spec_));
    r.chi_ = chi_;
    for (const auto& [k, p] : o.chi_) r.add_characteristic(k.first, k.second, p);
    return r;
}

OneVectorCanonical OneVectorCanonical::operator-(const OneVectorCanonical& o) const {
    return *this + (-o);
}

OneVectorCanonical OneVectorCanonical::operator-() const {
    OneVectorCanonical r(spec_);
    for (const auto& [k, p] : chi_) r.chi_.emplace(k, -p);
    return r;
}

OneVectorCanonical OneVectorCanonical::operator*(const Rational& c) const {
    OneVectorCanonical r(spec_);
    if (varcalc::is_zero(c)) return r;
    for (const auto& [k, p] : chi_) r.chi_.emplace(k, p * c);
    return r;
}

TensorDensity OneVectorCanonical::to_tensor() const {
    TensorDensity t(spec_, 1, SlotKind::Vector);
    MultiIndex zero(spec_ ? spec_->n_dims() : 0);
    for (const auto& [k, p] : chi_) t.add_term(k.first, {WedgeSlot{k.second, zero}}, p);
    return t;
}

DiffPoly OneFormCanonical::at(const MultiIndex& grading, int field) const {
    auto it = coeff_.find({grading, field});
    return it == coeff_.end() ? DiffPoly(spec_) : it->second;
}

void OneFormCanonical::add_coefficient(const MultiIndex& grading, int field, const DiffPoly& p) {
    if (p.is_zero()) return;
    if (!spec_) spec_ = p.spec();
    auto [it, inserted] = coeff_.emplace(std::make_pair(grading, field), p);
    if (!inserted) {
        it->second = it->second + p;
        if (it->second.is_zero()) coeff_.erase(it);
    }
}

TensorDensity OneFormCanonical::to_tensor() const {
    TensorDensity t(spec_, 1, SlotKind::Form);
    MultiIndex zero(spec_ ? spec_->n_dims() : 0);
    for (const auto& [k, p] : coeff_) t.add_term(k.first, {WedgeSlot{k.second, zero}}, p);
    return t;
}

TensorDensity differential_of_functional(const GradedDensity& f) {
    TensorDensity t(f.spec(), 1, SlotKind::Form);
    for (const auto& [j, p] : f.parts())
        for (const JetVar& v : p.variables())
            t.add_term(j, {WedgeSlot{v.field, v.deriv}}, partial_jet(p, v));
    return t;
}

TensorDensity exterior_d(const TensorDensity& t) {
    if (t.degree() > 0 && t.kind() != SlotKind::Form)
        throw PreconditionError("exterior differential is defined on forms only");
    TensorDensity out(t.spec(), t.degree() + 1, SlotKind::Form);
    for (const auto& [key, c] : t.terms()) {
        for (const JetVar& v : c.variables()) {
            WedgeMonomial slots;
            slots.reserve(key.slots.size() + 1);
            slots.push_back(WedgeSlot{v.field, v.deriv});
            slots.insert(slots.end(), key.slots.begin(), key.slots.end());
            out.add_term(key.grading, std::move(slots), partial_jet(c, v));
        }
    }
    return out;
}

TensorDensity interior_product(const OneVectorCanonical& xi, const TensorDensity& alpha) {
    if (alpha.degree() < 1) throw PreconditionError("interior product needs degree >= 1");
    if (alpha.kind() != SlotKind::Form)
        throw PreconditionError("interior product of a vector expects a form");
    require_same_spec(xi.spec(), alpha.spec());
    TensorDensity out(alpha.spec(), alpha.degree() - 1, SlotKind::Form);
    for (const auto& [key, c] : alpha.terms()) {
        for (std::size_t i = 0; i < key.slots.size(); ++i) {
            const WedgeSlot& s = key.slots[i];
            Rational sign((i % 2 == 0) ? 1 : -1);
            for (const auto& [gk, chi] : xi.characteristics()) {
                if (gk.second != s.field) continue;
                DiffPoly contracted = c * total_derivative(chi, s.deriv);
                out.add_term(key.grading + gk.first, without(key.slots, i), contracted * sign);
            }
        }
    }
    return out;
}

TensorDensity interior_product(const OneFormCanonical& alpha, const TensorDensity& t) {
    if (t.degree() < 1) throw PreconditionError("interior product needs degree >= 1");
    if (t.kind() != SlotKind::Vector)
        throw PreconditionError("interior product of a form expects a multi-vector");
    require_same_spec(alpha.spec(), t.spec());
    TensorDensity out(t.spec(), t.degree() - 1, SlotKind::Vector);
    for (const auto& [key, c] : t.terms()) {
        for (std::size_t i = 0; i < key.slots.size(); ++i) {
            const WedgeSlot& s = key.slots[i];
            Rational sign((i % 2 == 0) ? 1 : -1);
            for (const auto& [gk, b] : alpha.coefficients()) {
                if (gk.second != s.field) continue;
                DiffPoly contracted = c * total_derivative(b, s.deriv);
                out.add_term(key.grading + gk.first, without(key.slots, i), contracted * sign);
            }
        }
    }
    return out;
}

GradedDensity pair_form_vectors(const TensorDensity& alpha,
                                const std::vector<OneVectorCanonical>& xs) {
    if (static_cast<int>(xs.size()) != alpha.degree())
        throw PreconditionError("pairing needs exactly one vector per form degree");
    TensorDensity t = alpha;
    for (const auto& xi : xs) t = interior_product(xi, t);
    return t.to_density();
}

GradedDensity evaluate_on_forms(const TensorDensity& t, const std::vector<OneFormCanonical>& forms) {
    if (static_cast<int>(forms.size()) != t.degree())
        throw PreconditionError("evaluation needs exactly one form per vector degree");
    TensorDensity cur = t;
    for (const auto& f : forms) cur = interior_product(f, cur);
    return cur.to_density();
}

namespace {

// theta^(J) b s^(L) -> sum_{Q<=L} (-1)^|L| (L choose Q) theta^(J+Q) D_{L-Q}(b) s^(0);
// preserves the trace pairing modulo formal divergences.
template <typename Sink>
void canonicalize_one_slot(const TensorDensity& t, SlotKind expected, Sink&& sink) {
    if (t.degree() != 1 || t.kind() != expected)
        throw PreconditionError("canonicalization expects a tensor of degree 1 and matching kind");
    for (const auto& [key, b] : t.terms()) {
        const WedgeSlot& s = key.slots[0];
        Rational sign((s.deriv.order() % 2 == 0) ? 1 : -1);
        for_each_leq(s.deriv, [&](const MultiIndex& q) {
            DiffPoly p = total_derivative(b, s.deriv - q) *
                         (sign * Rational(multi_binomial(s.deriv, q)));
            sink(key.grading + q, s.field, p);
        });
    }
}

} // namespace

OneVectorCanonical canonicalize_one_vector(const TensorDensity& t) {
    OneVectorCanonical out(t.spec());
    canonicalize_one_slot(t, SlotKind::Vector,
                          [&](const MultiIndex& j, int field, const DiffPoly& p) {
                              out.add_characteristic(j, field, p);
                          });
    return out;
}

OneFormCanonical canonicalize_one_form(const TensorDensity& t) {
    OneFormCanonical out(t.spec());
    canonicalize_one_slot(t, SlotKind::Form,
                          [&](const MultiIndex& j, int field, const DiffPoly& p) {
                              out.add_coefficient(j, field, p);
                          });
    return out;
}

GradedDensity evolutionary_action(const OneVectorCanonical& xi, const GradedDensity& f) {
    GradedDensity out(require_same_spec(xi.spec(), f.spec()));
    for (const auto& [jf, p] : f.parts()) {
        for (const JetVar& v : p.variables()) {
            DiffPoly dp = partial_jet(p, v);
            for (const auto& [gk, chi] : xi.characteristics()) {
                if (gk.second != v.field) continue;
                out.add_part(jf + gk.first, dp * total_derivative(chi, v.deriv));
            }
        }
    }
    return out;
}

namespace {

// sum_{B,L} (d target_A / d phi_B^(L)) D_L dir_B, per (grading, field).
OneVectorCanonical characteristic_frechet(const OneVectorCanonical& target,
                                          const OneVectorCanonical& dir) {
    OneVectorCanonical out(require_same_spec(target.spec(), dir.spec()));
    for (const auto& [ka, pa] : target.characteristics()) {
        for (const JetVar& v : pa.variables()) {
            DiffPoly dp = partial_jet(pa, v);
            for (const auto& [kb, pb] : dir.characteristics()) {
                if (kb.second != v.field) continue;
                out.add_characteristic(ka.first + kb.first, ka.second,
                                       dp * total_derivative(pb, v.deriv));
            }
        }
    }
    return out;
}

} // namespace

OneVectorCanonical commutator(const OneVectorCanonical& xi, const OneVectorCanonical& eta) {
    return characteristic_frechet(eta, xi) - characteristic_frechet(xi, eta);
}

TensorDensity lie_derivative(const OneVectorCanonical& xi, const TensorDensity& alpha) {
    if (alpha.degree() > 0 && alpha.kind() != SlotKind::Form)
        throw PreconditionError("Lie derivative is defined on forms");
    TensorDensity first = interior_product(xi, exterior_d(alpha));
    if (alpha.degree() == 0) return first;
    return first + exterior_d(interior_product(xi, alpha));
}

TensorDensity bivector_from_operator(const GradedOperator& op) {
    GradedOperator defect = op + adjoint(op);
    if (!defect.is_zero()) {
        const auto& [key, c] = *defect.coeffs().begin();
        throw PreconditionError(
            "operator is not skew-adjoint: (op + op*) has coefficient at grading " +
            key.grading.str() + ", fields (" + std::to_string(key.row) + "," +
            std::to_string(key.col) + "), D index " + key.deriv.str());
    }
    TensorDensity out(op.spec(), 2, SlotKind::Vector);
    MultiIndex zero(op.spec() ? op.spec()->n_dims() : 0);
    for (const auto& [key, c] : op.coeffs()) {
        WedgeMonomial slots{WedgeSlot{key.row, zero}, WedgeSlot{key.col, key.deriv}};
        out.add_term(key.grading, std::move(slots), c * Rational(1, 2));
    }
    return out;
}

GradedOperator operator_from_bivector(const TensorDensity& t) {
    if (t.degree() != 2 || t.kind() != SlotKind::Vector)
        throw PreconditionError("expected a functional bivector");
    // Integrate by parts until the lex-first slot of every term is underived;
    // each rewrite lowers that slot's order, so this terminates.
    std::map<TensorKey, DiffPoly> pending(t.terms().begin(), t.terms().end());
    GradedOperator raw(t.spec());
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const TensorKey& key = node.key();
        const DiffPoly& c = node.mapped();
        const WedgeSlot& s1 = key.slots[0];
        const WedgeSlot& s2 = key.slots[1];
        if (s1.deriv.is_zero()) {
            raw.add_coeff(OperatorKey{key.grading, s1.field, s2.field, s2.deriv}, c * Rational(2));
            continue;
        }
        std::size_t i = static_cast<std::size_t>(s1.deriv.last_nonzero());
        MultiIndex e = MultiIndex::unit(s1.deriv.dims(), i);
        WedgeSlot lowered{s1.field, s1.deriv - e};
        WedgeSlot raised{s2.field, s2.deriv + e};
        insert_canonical(pending, key.grading + e, {lowered, s2}, -c);
        insert_canonical(pending, key.grading, {lowered, s2}, -total_derivative(c, i));
        insert_canonical(pending, key.grading, {lowered, raised}, -c);
    }
    return skew_part(raw);
}

TensorDensity tensor_nf(const TensorDensity& t) {
    TensorDensity out(t.spec(), t.degree(), t.kind());
    std::map<TensorKey, DiffPoly> pending(t.terms().begin(), t.terms().end());
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const TensorKey& key = node.key();
        const DiffPoly& c = node.mapped();
        int j = key.grading.last_nonzero();
        if (j < 0) {
            out.add_term(key.grading, key.slots, c);
            continue;
        }
        MultiIndex lowered = key.grading - MultiIndex::unit(key.grading.dims(), j);
        insert_canonical(pending, lowered, key.slots,
                         -total_derivative(c, static_cast<std::size_t>(j)));
        for (std::size_t k = 0; k < key.slots.size(); ++k) {
            WedgeMonomial slots = key.slots;
            slots[k].deriv = slots[k].deriv + MultiIndex::unit(key.grading.dims(),
                                                               static_cast<std::size_t>(j));
            insert_canonical(pending, lowered, std::move(slots), -c);
        }
    }
    return out;
}

TensorDensity divergence(const TensorDensity& t, std::size_t coord) {
    TensorDensity out(t.spec(), t.degree(), t.kind());
    if (!t.spec()) return out;
    MultiIndex e = MultiIndex::unit(t.spec()->n_dims(), coord);
    for (const auto& [key, c] : t.terms()) {
        out.add_term(key.grading + e, key.slots, c);
        out.add_term(key.grading, key.slots, total_derivative(c, coord));
        for (std::size_t k = 0; k < key.slots.size(); ++k) {
            WedgeMonomial slots = key.slots;
            slots[k].deriv = slots[k].deriv + e;
            out.add_term(key.grading, std::move(slots), c);
        }
    }
    return out;
}

} // namespace varcalc
