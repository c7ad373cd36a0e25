#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace siegellab {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

/// log of a positive big integer, safe for values far beyond double range.
inline double log_big(const BigInt& n) {
    if (n <= 0) throw std::domain_error("log_big: argument must be positive");
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n));
    if (bits <= 52) return std::log(n.convert_to<double>());
    const BigInt mantissa = n >> (bits - 52);
    return std::log(mantissa.convert_to<double>()) + (bits - 52) * M_LN2;
}

inline Rational pow_rational(const Rational& base, unsigned exp) {
    Rational acc(1);
    Rational b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

/// Certified enclosure of an irrational constant by two exact rationals.
struct RationalInterval {
    Rational lo;
    Rational hi;
};

/// Certified bracket for pi via Machin's formula.
///
/// pi = 16*arctan(1/5) - 4*arctan(1/239); each arctan series is alternating
/// with decreasing terms, so consecutive partial sums enclose the limit.
/// `terms` = 16 gives an enclosure width below 1e-20.
RationalInterval pi_bracket(int terms = 16);

/// Sign of (value - sqrt(2)*mult) for value >= 0, mult >= 0, decided exactly
/// by comparing squares. Returns -1, 0 or +1 (0 only when both are zero).
int compare_to_sqrt2_multiple(const Rational& value, const Rational& mult);

/// Parse a decimal literal ("0.6180339887") into an exact rational plus the
/// precision implied by the digit count (one unit in the last place).
struct DecimalValue {
    Rational value;
    Rational ulp;
};
DecimalValue parse_decimal(const std::string& text);

}  // namespace siegellab
