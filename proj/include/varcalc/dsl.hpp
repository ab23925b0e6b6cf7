#pragma once

#include <stdexcept>
#include <string>

#include "varcalc/brackets.hpp"

namespace varcalc {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

/// Parses a theta-graded density. Grammar (whitespace-insensitive):
///   graded := ['+'|'-'] clause (('+'|'-') clause)*
///   clause := factor ('*' factor)*        -- exactly one theta factor
///   factor := rational | jetvar | 'theta' '(' nat-list? ')'
///           | 'D' '[' coord ']' | '(' expr ')' | factor '^' nat
///   jetvar := field ['_' coord-chain]     -- e.g. u, u_xx, w_xy
/// Rational literals are exact (e.g. 2/3). theta() is grading zero.
GradedDensity parse_density(const std::string& src, const FieldSpecPtr& spec);

/// Same grammar with D[coord] factors allowed in operator position; a D may
/// not multiply a jet expression from the left (write the expanded form).
/// Matrix operators are not expressible: the spec must declare one field.
GradedOperator parse_operator(const std::string& src, const FieldSpecPtr& spec);

std::string to_string(const DiffPoly& p);
std::string to_string(const GradedDensity& d);
std::string to_string(const GradedOperator& op);
std::string to_string(const TensorDensity& t);
std::string to_string(const OneVectorCanonical& v);

std::string to_latex(const GradedDensity& d);
std::string to_latex(const GradedOperator& op);
std::string to_latex(const TensorDensity& t);

} // namespace varcalc
