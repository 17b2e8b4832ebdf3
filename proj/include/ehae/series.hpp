#pragma once

#include "ehae/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ehae {

enum class Var { z, q, gs };

const char* var_name(Var v);

class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truncated series sum_{k,e} c_{k,e} x^e (log x)^k with e on the half-integer
// grid. Exponents are stored in half units: index i of a component holds the
// coefficient of x^{(offset2 + i)/2}. Terms with exponent >= order2/2 are
// unknown.
class Series {
public:
    static constexpr int kMaxLog = 3;

    Series() = default;
    // Zero series known up to (exclusive) half-exponent order2.
    Series(Var v, int order2);

    static Series constant(Var v, const Rational& c, int order2);
    static Series monomial(Var v, const Rational& c, int exp2, int order2, int log_power = 0);
    // coeffs[i] multiplies x^{(offset2+i)/2}; order2 defaults to offset2 + size.
    static Series from_half_grid(Var v, int offset2, std::vector<Rational> coeffs, int order2);
    // coeffs[n] multiplies x^n.
    static Series from_integer_grid(Var v, const std::vector<Rational>& coeffs, int order);

    Var var() const { return var_; }
    int offset2() const { return offset2_; }
    int order2() const { return order2_; }
    int log_grade() const { return static_cast<int>(comp_.size()) - 1; }
    bool log_free() const;

    // Coefficient of x^{exp2/2} (log x)^k. Throws if exp2 >= order2.
    Rational coeff(int exp2, int k = 0) const;
    Rational coeff_int(int n, int k = 0) const { return coeff(2 * n, k); }

    // Lowest half-exponent with a nonzero coefficient; order2 if none.
    int valuation2() const;
    bool is_zero() const;  // zero through the truncation order

    Series truncated(int order2) const;
    Series shifted(int delta2) const;  // multiply by x^{delta2/2}
    Series normalized() const;          // drop leading zeros, trailing empty logs

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Rational& c);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const Rational& c) { return a *= c; }
    friend Series operator*(const Rational& c, Series a) { return a *= c; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator/(const Series& a, const Series& b);

    Series inverse() const;
    Series theta() const;                    // x d/dx
    Series pow(long n) const;                // integer power
    Series pow(const Rational& alpha) const; // requires leading term x^0 with coefficient 1
    Series exp() const;                      // requires positive valuation, log-free

    // True if every tracked coefficient agrees (on the common truncation).
    bool equals_through(const Series& o, int order2) const;

    std::string to_string(int max_terms = 8) const;

    const std::vector<std::vector<Rational>>& components() const { return comp_; }

private:
    Var var_ = Var::z;
    int offset2_ = 0;
    int order2_ = 0;
    // comp_[k][i]: coefficient of x^{(offset2_+i)/2} (log x)^k; every component
    // has length order2_ - offset2_ (possibly 0).
    std::vector<std::vector<Rational>> comp_;

    void ensure_logs(int k);
    int length() const { return order2_ - offset2_; }
    void check_var(const Series& o) const;
};

// outer(x) with x replaced by inner(y); outer must be log-free.
Series substitute(const Series& outer, const Series& inner);

// Compositional inverse of f(x) = x + O(x^2) (integer exponents, log-free).
Series reversion(const Series& f, Var result_var);

}  // namespace ehae
