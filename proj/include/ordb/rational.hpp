#pragma once

#include <gmpxx.h>

#include <string>

namespace ordb {

/// Exact rational scalar. All heights, breakpoints and PL values in the
/// library are exact; nothing is ever rounded to floating point except
/// for plot coordinates.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string num_string(const Rational& q) { return q.get_num().get_str(); }
inline std::string den_string(const Rational& q) { return q.get_den().get_str(); }

/// "3", "-1/2", "17/2048". Throws InputError on garbage.
Rational parse_rational(const std::string& text);

/// Fixed-point decimal with the given number of fractional digits,
/// rounded toward zero. Used only for plot output; deterministic.
std::string decimal_string(const Rational& q, int digits);

inline int sign(const Rational& q) { return sgn(q); }

} // namespace ordb
