#include "varcalc/field_spec.hpp"

#include <set>

namespace varcalc {

FieldSpec::FieldSpec(std::vector<std::string> dim_names, std::vector<std::string> field_names)
    : dims_(std::move(dim_names)), fields_(std::move(field_names)) {
    if (dims_.empty()) throw SpecError("at least one spatial coordinate is required");
    if (fields_.empty()) throw SpecError("at least one field is required");
    std::set<std::string> seen;
    for (const auto& d : dims_) {
        if (d.empty()) throw SpecError("empty coordinate name");
        if (!seen.insert(d).second) throw SpecError("duplicate coordinate name: " + d);
    }
    seen.clear();
    for (const auto& f : fields_) {
        if (f.empty()) throw SpecError("empty field name");
        if (!seen.insert(f).second) throw SpecError("duplicate field name: " + f);
    }
}

int FieldSpec::field_index(const std::string& name) const {
    for (std::size_t i = 0; i < fields_.size(); ++i)
        if (fields_[i] == name) return static_cast<int>(i);
    return -1;
}

int FieldSpec::dim_index(const std::string& name) const {
    for (std::size_t i = 0; i < dims_.size(); ++i)
        if (dims_[i] == name) return static_cast<int>(i);
    return -1;
}

FieldSpecPtr extend_spec(const FieldSpecPtr& spec, const std::vector<std::string>& extra_fields) {
    auto fields = spec->field_names();
    fields.insert(fields.end(), extra_fields.begin(), extra_fields.end());
    return make_spec(spec->dim_names(), std::move(fields));
}

bool compatible(const FieldSpecPtr& a, const FieldSpecPtr& b) {
    if (!a || !b || a == b) return true;
    return *a == *b;
}

FieldSpecPtr require_same_spec(const FieldSpecPtr& a, const FieldSpecPtr& b) {
    if (!compatible(a, b)) throw SpecMismatchError("objects built over different field specs");
    return a ? a : b;
}

} // namespace varcalc
