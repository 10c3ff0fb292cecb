#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqn {

/// Syntax or lexical error in the expression grammar, with 0-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Operation left the expression class or was applied to mismatched operands.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric evaluation hit a pole of a Laurent term.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pqn
