#pragma once

#include "ehae/rational.hpp"
#include "ehae/series.hpp"

#include <string>
#include <vector>

namespace ehae {

// Dense integer polynomial in z, coefficient i multiplies z^i.
using IntPoly = std::vector<Integer>;

std::string poly_to_string(const IntPoly& p);
IntPoly parse_poly(const std::string& s);

// The discriminant factor 1 - 3125 z.
inline constexpr long kDiscriminant = 3125;

// c * z^e * N(z) / (1 - 3125 z)^k with N primitive, N(0) > 0 and, when k > 0,
// N not divisible by (1 - 3125 z). Zero is the empty numerator.
class RatFn {
public:
    RatFn() = default;
    RatFn(const Rational& c);  // NOLINT: implicit constant
    static RatFn make(const Rational& c, int zexp, IntPoly num, int dexp);
    // N(z)/D(z) where D must factor as constant * z^a * (1 - 3125 z)^b.
    static RatFn from_polys(IntPoly num, IntPoly den);
    static RatFn z_power(int e) { return make(1, e, {1}, 0); }
    static RatFn disc_power(int k);  // (1 - 3125 z)^k, any sign of k

    bool is_zero() const { return num_.empty(); }
    bool is_constant() const { return is_zero() || (zexp_ == 0 && dexp_ == 0 && num_.size() == 1); }
    const Rational& scalar() const { return c_; }
    int zexp() const { return zexp_; }
    int dexp() const { return dexp_; }
    const IntPoly& num() const { return num_; }

    RatFn operator-() const;
    friend RatFn operator+(const RatFn& a, const RatFn& b);
    friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    RatFn operator*(const Rational& s) const;
    // Inverse of c z^e N / Delta^k; only defined when N is a power of Delta.
    RatFn inverse() const;
    RatFn shift_z(int d) const;  // multiply by z^d

    // theta_z applied to z^{half/2} * this, divided back by z^{half/2}:
    // (theta + half/2) this.  half is 0 or 1.
    RatFn theta(int half = 0) const;

    // Value at z = 0 when regular there.
    Rational value_at_zero() const;
    // Laurent expansion in z (half = 1 multiplies by z^{1/2}).
    Series expand(int order2, int half = 0) const;
    // Lowest power of z in the expansion.
    int valuation() const { return is_zero() ? 1 << 20 : zexp_; }

    // Expanded numerator/denominator polynomials (denominator positive leading).
    void to_polys(IntPoly& num, IntPoly& den) const;

    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.zexp_ == b.zexp_ && a.dexp_ == b.dexp_ && a.c_ == b.c_ && a.num_ == b.num_;
    }

    std::string to_string() const;

private:
    Rational c_ = 0;
    int zexp_ = 0;
    int dexp_ = 0;
    IntPoly num_;

    void canonicalize();  // from arbitrary integer num and rational c
};

// r(z) + sqrt(z) s(z)
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const Rational& c) : even_(c) {}  // NOLINT: implicit constant
    FieldElement(RatFn even, RatFn odd = RatFn()) : even_(std::move(even)), odd_(std::move(odd)) {}
    static FieldElement sqrt_z() { return FieldElement(RatFn(), RatFn(1)); }

    const RatFn& even() const { return even_; }
    const RatFn& odd() const { return odd_; }
    bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }
    bool is_even() const { return odd_.is_zero(); }
    bool is_odd() const { return even_.is_zero(); }

    FieldElement operator-() const { return FieldElement(-even_, -odd_); }
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        return FieldElement(a.even_ + b.even_, a.odd_ + b.odd_);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        return FieldElement(a.even_ - b.even_, a.odd_ - b.odd_);
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement operator*(const Rational& s) const { return FieldElement(even_ * s, odd_ * s); }
    // Inverse of a single-parity element whose part is invertible as a RatFn.
    FieldElement inverse() const;

    FieldElement theta() const;
    Series expand(int order2) const;
    int valuation2() const;  // lowest half-power of z

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.even_ == b.even_ && a.odd_ == b.odd_;
    }

    // "evenNum/evenDen|oddNum/oddDen"
    std::string serialize() const;
    static FieldElement parse(const std::string& s);

private:
    RatFn even_, odd_;
};

}  // namespace ehae
