#pragma once

#include <gmpxx.h>

#include <string>

namespace ehae {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& r) { return r.get_str(); }

// Accepts "p" or "p/q" in base 10.
Rational parse_rational(const std::string& s);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

}  // namespace ehae
