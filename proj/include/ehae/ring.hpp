#pragma once

#include "ehae/field.hpp"
#include "ehae/series.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ehae {

enum class Basis { I, J };

inline constexpr int kGenerators = 10;

// I: A1 B1 B2 B3 Q0 Q1 Q2 Q3 R1 R2
// J: u  v1 v2 v3 Q0 Q1 Q2 Q3 m1 m2
namespace gen {
inline constexpr int A1 = 0, B1 = 1, B2 = 2, B3 = 3, R1 = 8, R2 = 9;
inline constexpr int u = 0, v1 = 1, v2 = 2, v3 = 3, m1 = 8, m2 = 9;
inline constexpr int Q0 = 4, Q1 = 5, Q2 = 6, Q3 = 7;
}  // namespace gen

const char* basis_name(Basis b);
const char* generator_name(Basis b, int index);
int generator_index(Basis b, const std::string& name);  // -1 if unknown
// Grading degree of each generator (same in both bases).
int generator_degree(int index);

using Exponents = std::array<int, kGenerators>;
// Packed exponent vector, 6 bits per generator, generator 0 most significant,
// so integer order equals lexicographic order of exponent vectors.
using Monomial = std::uint64_t;

inline constexpr int kExponentBits = 6;
inline constexpr int kMaxExponent = (1 << kExponentBits) - 1;

Monomial pack(const Exponents& e);
Exponents unpack(Monomial m);
inline int exponent_of(Monomial m, int index) {
    return static_cast<int>((m >> (kExponentBits * (kGenerators - 1 - index))) & kMaxExponent);
}
inline Monomial unit_monomial(int index) { return Monomial{1} << (kExponentBits * (kGenerators - 1 - index)); }

// Section weights: (T)^m (x) L^n.
struct Weights {
    int m = 0;
    int n = 0;
    friend bool operator==(Weights a, Weights b) { return a.m == b.m && a.n == b.n; }
};

struct Term {
    Monomial mono;
    FieldElement coef;
};

class RingElement {
public:
    RingElement() = default;
    explicit RingElement(Basis b, Weights w = {}) : basis_(b), weights_(w) {}
    static RingElement constant(Basis b, const FieldElement& c, Weights w = {});
    static RingElement generator(Basis b, int index, Weights w = {});
    // Terms in any order; duplicates are summed, zeros dropped.
    static RingElement from_terms(Basis b, std::vector<Term> terms, Weights w = {});

    Basis basis() const { return basis_; }
    Weights weights() const { return weights_; }
    RingElement with_weights(Weights w) const {
        RingElement r = *this;
        r.weights_ = w;
        return r;
    }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    FieldElement coefficient(const Exponents& e) const;
    FieldElement constant_term() const { return coefficient(Exponents{}); }

    int degree_in(int index) const;
    int max_exponent() const;
    // Grading of the Remark: generator degrees plus the power of 1/(1-3125z).
    int graded_degree() const;
    // Parity check: every coefficient even (want_odd = false) or odd.
    bool has_parity(bool want_odd) const;

    RingElement operator-() const;
    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const FieldElement& c);
    friend RingElement operator*(const FieldElement& c, const RingElement& a) { return a * c; }

    friend bool operator==(const RingElement& a, const RingElement& b);

private:
    Basis basis_ = Basis::I;
    Weights weights_;
    std::vector<Term> terms_;  // sorted by mono, no zero coefficients
    friend RingElement multiply_serial(const RingElement& a, const RingElement& b);
    friend RingElement multiply_parallel(const RingElement& a, const RingElement& b);
};

// Reference kernel and the OpenMP kernel; both return identical results.
RingElement multiply_serial(const RingElement& a, const RingElement& b);
RingElement multiply_parallel(const RingElement& a, const RingElement& b);

// theta_z = z d/dz, closed on either basis.
RingElement theta_derive(const RingElement& e);
// D_z = (1/z)(theta + m A_1 + n B_1) using e's weights; result has weights (m-1, n).
RingElement cov_derive(const RingElement& e);
RingElement change_basis(const RingElement& e, Basis target);
RingElement partial_derive(const RingElement& e, int index);
// Coefficient of u^k when the element is viewed as a polynomial in generator `index`.
RingElement coefficient_in(const RingElement& e, int index, int k);

// Image of the I generators in J and of the J generators in I.
const std::array<RingElement, kGenerators>& basis_images(Basis from);
// theta of each generator of the basis, expressed in the same basis.
const std::array<RingElement, kGenerators>& theta_images(Basis b);

// Useful field constants.
FieldElement field_z(int power = 1);                  // z^power
FieldElement field_disc(int power = 1);               // (1 - 3125 z)^power
FieldElement field_x();                               // z^3 C = 5 / (1 - 3125 z)
FieldElement field_X();                               // theta(z^3 C)/(z^3 C) = 3125 z / (1 - 3125 z)
FieldElement field_h();                               // (1 - 1875 z)/(1 - 3125 z)
FieldElement field_s();                               // 12/25 - h/5 + (3/25) X
FieldElement field_yukawa();                          // C = 5 / ((1 - 3125 z) z^3)

// Canonical text form (without checksum).
std::string serialize(const RingElement& e);
RingElement parse_ring_element(const std::string& text);

// Substitute holomorphic-limit series for the generators of e's basis.
Series evaluate(const RingElement& e, const std::array<Series, kGenerators>& gens, int order2);

}  // namespace ehae
