#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treenum {

// Base class for every error raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// pred(T) or double(T): the operation has no meaning at zero.
struct undefined_on_zero : error {
    explicit undefined_on_zero(const std::string& op)
        : error(op + ": undefined on zero") {}
};

// half of an odd or zero term.
struct not_halvable : error {
    not_halvable() : error("half: argument must be even and positive") {}
};

// sub(u, v) with u < v.
struct underflow : error {
    underflow() : error("sub: result would be negative") {}
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
};

// A conversion refused because the result would exceed a configured bound
// (toN shift budget, unary blowup guard).
struct conversion_overflow : error {
    explicit conversion_overflow(const std::string& what) : error(what) {}
};

// Bad rational input: zero component, non-co-prime pair, zero denominator,
// inverse of zero.
struct invalid_rational : error {
    explicit invalid_rational(const std::string& what) : error(what) {}
};

// Text input rejected; `offset` is the byte position of the failure.
struct parse_error : error {
    parse_error(std::size_t offset, const std::string& expected)
        : error("parse error at offset " + std::to_string(offset) + ": expected " + expected),
          offset(offset),
          expected(expected) {}
    std::size_t offset;
    std::string expected;
};

// Expression evaluation rejected an argument (negative exponent, fractional
// argument to an integer function, ...).
struct eval_error : error {
    eval_error(const std::string& op, const std::string& what)
        : error(op + ": " + what), op(op) {}
    std::string op;
};

}  // namespace treenum
