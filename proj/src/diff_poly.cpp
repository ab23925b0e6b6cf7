#include "varcalc/diff_poly.hpp"

#include <algorithm>
#include <cassert>

namespace varcalc {

Monomial::Monomial(std::vector<Factor> factors) : f_(std::move(factors)) {
    std::sort(f_.begin(), f_.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    // merge duplicates, drop zero exponents
    std::vector<Factor> merged;
    for (auto& [v, e] : f_) {
        if (!merged.empty() && merged.back().first == v)
            merged.back().second += e;
        else
            merged.emplace_back(v, e);
    }
    std::erase_if(merged, [](const Factor& f) { return f.second == 0; });
    for (auto& [v, e] : merged) assert(e > 0);
    f_ = std::move(merged);
}

Monomial Monomial::var(const JetVar& v, int exp) {
    Monomial m;
    if (exp != 0) m.f_.emplace_back(v, exp);
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [v, e] : f_) d += e;
    return d;
}

int Monomial::exponent_of(const JetVar& v) const {
    for (const auto& [var, e] : f_)
        if (var == v) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<Factor> all = f_;
    all.insert(all.end(), o.f_.begin(), o.f_.end());
    return Monomial(std::move(all));
}

Monomial Monomial::with_exponent_shift(const JetVar& v, int delta) const {
    std::vector<Factor> all = f_;
    all.emplace_back(v, delta);
    return Monomial(std::move(all));
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
    // graded-lex: total degree first, then the sorted factor sequence
    if (auto c = degree() <=> o.degree(); c != 0) return c;
    return f_ <=> o.f_;
}

DiffPoly DiffPoly::constant(FieldSpecPtr spec, const Rational& c) {
    DiffPoly p(std::move(spec));
    p.add_term(Monomial::one(), c);
    return p;
}

DiffPoly DiffPoly::var(FieldSpecPtr spec, const JetVar& v) {
    assert(v.deriv.dims() == spec->n_dims());
    assert(v.field >= 0 && static_cast<std::size_t>(v.field) < spec->n_fields());
    DiffPoly p(std::move(spec));
    p.add_term(Monomial::var(v), Rational(1));
    return p;
}

DiffPoly DiffPoly::var(FieldSpecPtr spec, int field, const MultiIndex& deriv) {
    return var(std::move(spec), JetVar{field, deriv});
}

bool DiffPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int DiffPoly::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

MultiIndex DiffPoly::max_deriv(int field) const {
    MultiIndex bound(spec_ ? spec_->n_dims() : 0);
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors())
            if (v.field == field)
                for (std::size_t i = 0; i < bound.dims(); ++i)
                    bound[i] = std::max(bound[i], v.deriv[i]);
    return bound;
}

std::vector<JetVar> DiffPoly::variables() const {
    std::vector<JetVar> vars;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
    if (varcalc::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (varcalc::is_zero(it->second)) terms_.erase(it);
    }
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
    DiffPoly r(require_same_spec(spec_, o.spec_));
    r.terms_ = terms_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const { return *this + (-o); }

DiffPoly DiffPoly::operator-() const {
    DiffPoly r(spec_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
    DiffPoly r(require_same_spec(spec_, o.spec_));
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

DiffPoly DiffPoly::operator*(const Rational& c) const {
    if (varcalc::is_zero(c)) return DiffPoly(spec_);
    DiffPoly r(spec_);
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

DiffPoly partial_jet(const DiffPoly& p, const JetVar& v) {
    DiffPoly r(p.spec());
    for (const auto& [m, c] : p.terms()) {
        int e = m.exponent_of(v);
        if (e == 0) continue;
        r.add_term(m.with_exponent_shift(v, -1), c * e);
    }
    return r;
}

DiffPoly total_derivative(const DiffPoly& p, std::size_t coord) {
    DiffPoly r(p.spec());
    if (p.spec()) assert(coord < p.spec()->n_dims());
    for (const auto& [m, c] : p.terms()) {
        const auto& fs = m.factors();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const auto& [v, e] = fs[i];
            JetVar raised{v.field, v.deriv + MultiIndex::unit(v.deriv.dims(), coord)};
            Monomial nm = m.with_exponent_shift(v, -1).with_exponent_shift(raised, +1);
            r.add_term(nm, c * e);
        }
    }
    return r;
}

DiffPoly total_derivative(const DiffPoly& p, const MultiIndex& j) {
    if (p.spec() && j.dims() != p.spec()->n_dims())
        throw SpecMismatchError("derivative multi-index has wrong dimension");
    DiffPoly r = p;
    for (std::size_t i = 0; i < j.dims(); ++i)
        for (int k = 0; k < j[i]; ++k) r = total_derivative(r, i);
    return r;
}

DiffPoly frechet(const DiffPoly& p, std::span<const DiffPoly> eta) {
    if (!p.spec()) return p;
    if (eta.size() != p.spec()->n_fields())
        throw SpecMismatchError("frechet direction must supply one polynomial per field");
    DiffPoly r(p.spec());
    for (const JetVar& v : p.variables())
        r = r + partial_jet(p, v) * total_derivative(eta[v.field], v.deriv);
    return r;
}

DiffPoly higher_euler(const DiffPoly& p, int field, const MultiIndex& k) {
    DiffPoly r(p.spec());
    for (const JetVar& v : p.variables()) {
        if (v.field != field || !k.leq(v.deriv)) continue;
        MultiIndex diff = v.deriv - k;
        Rational sign((diff.order() % 2 == 0) ? 1 : -1);
        r = r + total_derivative(partial_jet(p, v), diff) *
                    (sign * Rational(multi_binomial(v.deriv, k)));
    }
    return r;
}

DiffPoly lift(const DiffPoly& p, const FieldSpecPtr& bigger) {
    if (!p.spec()) return DiffPoly(bigger);
    DiffPoly r(bigger);
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Factor> fs;
        for (const auto& [v, e] : m.factors()) {
            int idx = bigger->field_index(p.spec()->field_name(v.field));
            if (idx < 0) throw SpecMismatchError("lift target lacks field " +
                                                 p.spec()->field_name(v.field));
            fs.emplace_back(JetVar{idx, v.deriv}, e);
        }
        r.add_term(Monomial(std::move(fs)), c);
    }
    return r;
}

} // namespace varcalc
