#pragma once

#include <string>

#include "pqn/chart.hpp"
#include "pqn/scalar.hpp"

namespace pqn {

/// Parses the expression grammar
///   expr    := term (("+" | "-") term)*
///   term    := factor ("*" factor)*
///   factor  := atom ("^" int)?
///   atom    := rational | ident | "exp" "(" linform ")" | "(" expr ")" | "-" factor
///   linform := (rational "*")? ident (("+" | "-") (rational "*")? ident)*
///   rational:= int ("/" posint)?
/// Whitespace is insignificant; identifiers match [a-zA-Z][a-zA-Z0-9_]*.
/// Returns the canonical form; parse-print-parse is idempotent.
ScalarExpr parse_expr(const std::string& text, const Chart& chart);

/// Canonical printing: terms in canonical order, round-trips through parse_expr.
std::string to_string(const ScalarExpr& e, const Chart& chart);

class DifferentialForm;
class VectorField;

/// Report format for forms: sums of "(coeff)*dq1^dq2" with '^' as wedge.
std::string to_string(const DifferentialForm& a);
/// Report format for vector fields: sums of "(coeff)*d/dq1".
std::string to_string(const VectorField& X);

}  // namespace pqn
