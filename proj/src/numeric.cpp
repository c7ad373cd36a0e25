#include "siegellab/numeric.hpp"

#include <cctype>

namespace siegellab {

namespace {

// Partial sums of arctan(1/x) = sum_k (-1)^k / ((2k+1) x^(2k+1)).
// Returns [even-terms-stopped, odd-terms-stopped] enclosure.
RationalInterval arctan_inv_bracket(unsigned x, int terms) {
    Rational below(0), above(0);
    Rational sum(0);
    BigInt xpow = x;  // x^(2k+1)
    const BigInt xsq = BigInt(x) * x;
    for (int k = 0; k < terms; ++k) {
        Rational term(BigInt(1), BigInt(2 * k + 1) * xpow);
        if (k % 2 == 0) {
            sum += term;
            above = sum;  // stopping after a positive term overshoots
        } else {
            sum -= term;
            below = sum;  // stopping after a negative term undershoots
        }
        xpow *= xsq;
    }
    return {below, above};
}

}  // namespace

RationalInterval pi_bracket(int terms) {
    if (terms < 2) terms = 2;
    const RationalInterval a5   = arctan_inv_bracket(5, terms);
    const RationalInterval a239 = arctan_inv_bracket(239, terms);
    RationalInterval out;
    out.lo = 16 * a5.lo - 4 * a239.hi;
    out.hi = 16 * a5.hi - 4 * a239.lo;
    if (out.lo >= out.hi) throw std::logic_error("pi_bracket: degenerate enclosure");
    return out;
}

int compare_to_sqrt2_multiple(const Rational& value, const Rational& mult) {
    if (value < 0 || mult < 0)
        throw std::domain_error("compare_to_sqrt2_multiple: operands must be nonnegative");
    const Rational lhs = value * value;
    const Rational rhs = 2 * mult * mult;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    // Equal squares force value = sqrt(2)*mult; rational value makes both zero.
    return 0;
}

DecimalValue parse_decimal(const std::string& text) {
    std::string digits;
    bool negative = false;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = (text[i] == '-');
        ++i;
    }
    std::int64_t frac_digits = -1;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (frac_digits >= 0) throw std::invalid_argument("parse_decimal: repeated '.'");
            frac_digits = 0;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (frac_digits >= 0) ++frac_digits;
        } else {
            throw std::invalid_argument("parse_decimal: unexpected character in '" + text + "'");
        }
    }
    if (digits.empty()) throw std::invalid_argument("parse_decimal: no digits in '" + text + "'");
    if (frac_digits < 0) frac_digits = 0;
    BigInt numerator(digits);
    BigInt denominator = 1;
    for (std::int64_t k = 0; k < frac_digits; ++k) denominator *= 10;
    DecimalValue out;
    out.value = Rational(negative ? -numerator : numerator, denominator);
    out.ulp = Rational(BigInt(1), denominator);
    return out;
}

}  // namespace siegellab
