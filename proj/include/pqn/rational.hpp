#pragma once

#include <gmpxx.h>

#include <string>

namespace pqn {

/// Exact arbitrary-precision rational. All symbolic coefficients use this type;
/// floating point only enters through explicit numeric evaluation.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Prints "a" or "a/b" with b > 0.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_one(const Rational& r) { return r == 1; }
inline bool is_minus_one(const Rational& r) { return r == -1; }

}  // namespace pqn
