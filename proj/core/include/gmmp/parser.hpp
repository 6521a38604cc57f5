#pragma once

#include "gmmp/poly.hpp"

#include <string>

namespace gmmp {

// Parse failure with 1-based position information.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t col)
        : ValidationError(msg + " (line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ")"),
          line_(line), col_(col) {}
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_, col_;
};

// Recursive-descent parser for polynomial expressions over the ring's
// variables: +, -, *, ^, parentheses and arbitrary-precision integer
// literals. Juxtaposition is not multiplication; '*' is required.
Polynomial parse_poly(const std::string& src, const RingPtr& ring);

// Same, with positions offset for diagnostics inside multi-line files.
Polynomial parse_poly_at(const std::string& src, const RingPtr& ring, std::size_t line0,
                         std::size_t col0);

} // namespace gmmp
