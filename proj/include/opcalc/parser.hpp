#pragma once

#include <string_view>

#include "opcalc/operator.hpp"

namespace opcalc {

/// Parses the operator DSL:
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := factor factor*                 juxtaposition = composition,
///                                            rightmost applied first
///   factor := rational '*' factor
///           | atom ['^' uint]
///           | '(' expr ')' ['^' uint]
///   atom   := 'D' | 'X' | 'I' | 'J' | 'Delta' | 'Eval0'
///           | 'E' '(' rational ')'
///           | 'sub' '(' poly ')' | 'poly' '(' poly ')'
///           | 'series' '(' tpoly [',' uint] ')'
///
/// `series(tpoly)` is the exact symbol; `series(tpoly, N)` is truncated at t^N.
/// Throws ParseError with line, column and the expected-token set.
OpExpr parse_operator(std::string_view text);

}  // namespace opcalc
