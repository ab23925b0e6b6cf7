#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace varcalc {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when objects built over different field specifications are mixed,
/// or when a multi-index has the wrong dimension.
struct SpecMismatchError : SpecError {
    using SpecError::SpecError;
};

/// Raised on violated operation preconditions (e.g. a non-skew operator
/// passed where a skew-adjoint one is required).
struct PreconditionError : SpecError {
    using SpecError::SpecError;
};

/// The ambient setup: spatial coordinate names and the dependent fields
/// phi_A. Every algebraic object holds a shared pointer to one of these;
/// binary operations require the specs to agree.
class FieldSpec {
public:
    FieldSpec(std::vector<std::string> dim_names, std::vector<std::string> field_names);

    std::size_t n_dims() const { return dims_.size(); }
    std::size_t n_fields() const { return fields_.size(); }
    const std::vector<std::string>& dim_names() const { return dims_; }
    const std::vector<std::string>& field_names() const { return fields_; }
    const std::string& dim_name(std::size_t i) const { return dims_[i]; }
    const std::string& field_name(std::size_t a) const { return fields_[a]; }

    /// Index of a field name, or -1.
    int field_index(const std::string& name) const;
    int dim_index(const std::string& name) const;

    bool operator==(const FieldSpec& o) const { return dims_ == o.dims_ && fields_ == o.fields_; }

private:
    std::vector<std::string> dims_;
    std::vector<std::string> fields_;
};

using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

inline FieldSpecPtr make_spec(std::vector<std::string> dim_names,
                              std::vector<std::string> field_names) {
    return std::make_shared<const FieldSpec>(std::move(dim_names), std::move(field_names));
}

/// Same spec, with extra fields appended. Used by property tests that need
/// fresh auxiliary fields; indices of existing fields are preserved.
FieldSpecPtr extend_spec(const FieldSpecPtr& spec, const std::vector<std::string>& extra_fields);

/// True when both objects may participate in one computation.
bool compatible(const FieldSpecPtr& a, const FieldSpecPtr& b);

/// Throws SpecMismatchError unless compatible; returns the non-null one.
FieldSpecPtr require_same_spec(const FieldSpecPtr& a, const FieldSpecPtr& b);

} // namespace varcalc
