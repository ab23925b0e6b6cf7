#include <sstream>

#include "varcalc/dsl.hpp"

namespace varcalc {

namespace {

std::string chain_str(const FieldSpecPtr& spec, const MultiIndex& deriv) {
    std::string s;
    for (std::size_t i = 0; i < deriv.dims(); ++i)
        for (int k = 0; k < deriv[i]; ++k) s += spec->dim_name(i);
    return s;
}

std::string jetvar_str(const FieldSpecPtr& spec, const JetVar& v) {
    std::string s = spec->field_name(v.field);
    if (!v.deriv.is_zero()) s += "_" + chain_str(spec, v.deriv);
    return s;
}

std::string mono_str(const FieldSpecPtr& spec, const Monomial& m) {
    std::string s;
    for (const auto& [v, e] : m.factors()) {
        if (!s.empty()) s += "*";
        s += jetvar_str(spec, v);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string theta_str(const MultiIndex& j) {
    if (j.is_zero()) return "theta()";
    std::string s = "theta(";
    for (std::size_t i = 0; i < j.dims(); ++i) {
        if (i) s += ",";
        s += std::to_string(j[i]);
    }
    return s + ")";
}

std::string dpart_str(const FieldSpecPtr& spec, const MultiIndex& n) {
    std::string s;
    for (std::size_t i = 0; i < n.dims(); ++i) {
        if (n[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "D[" + spec->dim_name(i) + "]";
        if (n[i] > 1) s += "^" + std::to_string(n[i]);
    }
    return s;
}

std::string slot_str(const FieldSpecPtr& spec, SlotKind kind, const WedgeSlot& s) {
    std::string out = (kind == SlotKind::Vector) ? "xi" : ("d" + spec->field_name(s.field));
    if (kind == SlotKind::Vector && spec->n_fields() > 1)
        out += "[" + spec->field_name(s.field) + "]";
    if (!s.deriv.is_zero()) {
        if (spec->n_dims() == 1)
            out += "_" + std::to_string(s.deriv.order());
        else
            out += "_" + chain_str(spec, s.deriv);
    }
    return out;
}

// Appends one signed product term: sign, |coeff| unless 1, then the factors.
void append_term(std::string& out, const Rational& coeff, const std::vector<std::string>& factors) {
    bool negative = sgn(coeff) < 0;
    Rational a = abs(coeff);
    if (out.empty())
        out += negative ? "-" : "";
    else
        out += negative ? " - " : " + ";
    std::vector<std::string> parts;
    if (a != 1 || factors.empty()) parts.push_back(to_string(a));
    for (const auto& f : factors)
        if (!f.empty()) parts.push_back(f);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
}

} // namespace

std::string to_string(const DiffPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms())
        append_term(out, c, {m.is_one() ? "" : mono_str(p.spec(), m)});
    return out;
}

std::string to_string(const GradedDensity& d) {
    if (d.is_zero()) return "0";
    std::string out;
    for (const auto& [j, p] : d.parts())
        for (const auto& [m, c] : p.terms())
            append_term(out, c, {theta_str(j), m.is_one() ? "" : mono_str(d.spec(), m)});
    return out;
}

std::string to_string(const GradedOperator& op) {
    if (op.is_zero()) return "0";
    bool matrix = op.spec() && op.spec()->n_fields() > 1;
    std::string out;
    for (const auto& [key, p] : op.coeffs()) {
        for (const auto& [m, c] : p.terms()) {
            std::vector<std::string> factors{theta_str(key.grading),
                                             m.is_one() ? "" : mono_str(op.spec(), m),
                                             dpart_str(op.spec(), key.deriv)};
            if (matrix)
                factors.push_back("@[" + op.spec()->field_name(key.row) + "->" +
                                  op.spec()->field_name(key.col) + "]");
            append_term(out, c, factors);
        }
    }
    return out;
}

std::string to_string(const TensorDensity& t) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [key, p] : t.terms()) {
        std::string slots;
        for (std::size_t i = 0; i < key.slots.size(); ++i) {
            if (i) slots += "^";
            slots += slot_str(t.spec(), t.kind(), key.slots[i]);
        }
        for (const auto& [m, c] : p.terms())
            append_term(out, c,
                        {theta_str(key.grading), m.is_one() ? "" : mono_str(t.spec(), m), slots});
    }
    return out;
}

std::string to_string(const OneVectorCanonical& v) {
    if (v.is_zero()) return "0";
    std::string xi = (v.spec() && v.spec()->n_fields() > 1) ? "" : "xi";
    std::string out;
    for (const auto& [k, p] : v.characteristics()) {
        std::string name = xi.empty() ? ("xi[" + v.spec()->field_name(k.second) + "]") : xi;
        for (const auto& [m, c] : p.terms())
            append_term(out, c,
                        {theta_str(k.first), m.is_one() ? "" : mono_str(v.spec(), m), name});
    }
    return out;
}

namespace {

std::string latex_theta(const MultiIndex& j) {
    if (j.is_zero()) return "\\theta";
    std::string s = "\\theta^{(";
    for (std::size_t i = 0; i < j.dims(); ++i) {
        if (i) s += ",";
        s += std::to_string(j[i]);
    }
    return s + ")}";
}

std::string latex_rat(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return "\\tfrac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

std::string latex_mono(const FieldSpecPtr& spec, const Monomial& m) {
    std::string s;
    for (const auto& [v, e] : m.factors()) {
        if (!s.empty()) s += " ";
        s += spec->field_name(v.field);
        if (!v.deriv.is_zero()) s += "_{" + chain_str(spec, v.deriv) + "}";
        if (e > 1) s += "^{" + std::to_string(e) + "}";
    }
    return s;
}

void latex_term(std::string& out, const Rational& c, const std::string& body) {
    bool neg = sgn(c) < 0;
    Rational a = abs(c);
    if (out.empty())
        out += neg ? "-" : "";
    else
        out += neg ? " - " : " + ";
    if (a != 1 || body.empty()) out += latex_rat(a) + (body.empty() ? "" : "\\,");
    out += body;
}

} // namespace

std::string to_latex(const GradedDensity& d) {
    if (d.is_zero()) return "0";
    std::string out;
    for (const auto& [j, p] : d.parts())
        for (const auto& [m, c] : p.terms()) {
            std::string body = latex_theta(j);
            if (!m.is_one()) body += "\\," + latex_mono(d.spec(), m);
            latex_term(out, c, body);
        }
    return out;
}

std::string to_latex(const GradedOperator& op) {
    if (op.is_zero()) return "0";
    std::string out;
    for (const auto& [key, p] : op.coeffs())
        for (const auto& [m, c] : p.terms()) {
            std::string body = latex_theta(key.grading);
            if (!m.is_one()) body += "\\," + latex_mono(op.spec(), m);
            for (std::size_t i = 0; i < key.deriv.dims(); ++i)
                if (key.deriv[i] > 0) {
                    body += "\\,D_{" + op.spec()->dim_name(i) + "}";
                    if (key.deriv[i] > 1) body += "^{" + std::to_string(key.deriv[i]) + "}";
                }
            latex_term(out, c, body);
        }
    return out;
}

std::string to_latex(const TensorDensity& t) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [key, p] : t.terms()) {
        std::string slots;
        for (std::size_t i = 0; i < key.slots.size(); ++i) {
            if (i) slots += " \\wedge ";
            const WedgeSlot& s = key.slots[i];
            slots += (t.kind() == SlotKind::Vector)
                         ? ("\\xi_{" + t.spec()->field_name(s.field) + "}")
                         : ("\\delta " + t.spec()->field_name(s.field));
            if (!s.deriv.is_zero()) slots += "^{(" + chain_str(t.spec(), s.deriv) + ")}";
        }
        for (const auto& [m, c] : p.terms()) {
            std::string body = latex_theta(key.grading);
            if (!m.is_one()) body += "\\," + latex_mono(t.spec(), m);
            if (!slots.empty()) body += "\\," + slots;
            latex_term(out, c, body);
        }
    }
    return out;
}

} // namespace varcalc
