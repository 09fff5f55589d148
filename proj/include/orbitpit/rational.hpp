#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "orbitpit/errors.hpp"

namespace orbitpit {

// The base field is Q: arbitrary-precision rationals backed by GMP.
// mpq_rational keeps values canonical (lowest terms, positive denominator)
// as long as they are built from integer pairs or arithmetic on canonical
// values; the raw string constructor does NOT canonicalize, so all parsing
// goes through parse_rational below.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Parses "p", "-p", or "p/q".  q must be a nonzero integer.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(text));
        }
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) {
            throw parse_error("rational \"" + text + "\" has zero denominator");
        }
        return Rational(num) / Rational(den);
    } catch (const std::runtime_error&) {
        throw parse_error("malformed rational \"" + text + "\"");
    }
}

// Formats as "p/q", omitting "/q" when q = 1.
inline std::string format_rational(const Rational& value) {
    if (denominator(value) == 1) {
        return numerator(value).str();
    }
    return numerator(value).str() + "/" + denominator(value).str();
}

inline Integer binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    Integer result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result *= Integer(n - k + i);
        result /= Integer(i);  // exact: the running product is C(n-k+i, i)*i!/(i!)
    }
    return result;
}

// (k_1 + ... + k_m)! / (k_1! ... k_m!), as the product of binomials.
inline Integer multinomial(const std::vector<std::size_t>& parts) {
    Integer result = 1;
    std::size_t total = 0;
    for (std::size_t part : parts) {
        total += part;
        result *= binomial(total, part);
    }
    return result;
}

inline Rational pow_rational(const Rational& base, std::size_t exponent) {
    Rational result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        result *= base;
    }
    return result;
}

// Bit length of |n| (0 for n = 0); used for growth reporting.
inline std::size_t bit_length(const Integer& n) {
    if (n == 0) {
        return 0;
    }
    return boost::multiprecision::msb(boost::multiprecision::abs(n)) + 1;
}

inline std::size_t bit_length(const Rational& q) {
    const std::size_t num_bits = bit_length(numerator(q));
    const std::size_t den_bits = bit_length(denominator(q));
    return num_bits > den_bits ? num_bits : den_bits;
}

}  // namespace orbitpit
