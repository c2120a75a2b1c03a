#pragma once

#include <stdexcept>
#include <string>

#include "coxpoly/algebraic.hpp"

namespace coxpoly {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line(line),
          column(column) {}
    int line, column;
};

// Evaluates `rational | sqrt(e) | cospi(m) | e+e | e-e | e*e | e/e | -e | (e)`.
// `line` and `column_offset` only position error messages.
AlgebraicReal parse_expr(const std::string& text, int line = 1, int column_offset = 0);

// Short expression for display and files: u + v*sqrt(D) for quadratic numbers,
// sqrt of such for even quartics, the field expression otherwise. Always re-parses to x.
std::string format_expr(const AlgebraicReal& x);

}  // namespace coxpoly
