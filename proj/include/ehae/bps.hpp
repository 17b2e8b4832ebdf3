#pragma once

#include "ehae/series.hpp"

#include <map>
#include <vector>

namespace ehae {

// [x^{2j}] (sin(x/2)/(x/2))^e for j = 0..jmax.
std::vector<Rational> sinc_power_coefficients(int e, int jmax);

// p-exponent D (p = q^{1/2}) -> n_D for one (g,h).
using BpsColumn = std::map<int, Rational>;
// (g,h) -> column.
using BpsTable = std::map<std::pair<int, int>, BpsColumn>;

// Sector rule for the cover sum: open amplitudes sum over odd k, closed
// ones over all k. D/k must have the parity of h.
bool cover_allowed(int h, int k, int D);

// Contribution of the lower-genus columns in `known` (g' < g, same h) and of
// the same-genus entries already in `self` to the p^D coefficient of F_A^{(g,h)}.
Rational cover_contribution(int g, int h, int D, const BpsTable& known, const BpsColumn& self);

// Triangular inversion of the multiple-cover formula. coeff(D) must return the
// p^D coefficient of F_A^{(g,h)} for D = 1..d_max.
template <class Coeff>
BpsColumn extract_bps(int g, int h, int d_max, const BpsTable& known, Coeff coeff) {
    BpsColumn col;
    for (int D = 1; D <= d_max; ++D) {
        if ((D - h) % 2 != 0) continue;
        col[D] = coeff(D) - cover_contribution(g, h, D, known, col);
    }
    return col;
}

BpsColumn extract_bps(int g, int h, int d_max, const Series& fa, const BpsTable& known);

// p^D coefficients of F_A^{(g,h)} rebuilt from the table (inverse of extract_bps).
std::map<int, Rational> resum_bps(int g, int h, int d_max, const BpsTable& table);

// First non-integral entry, or -1.
int first_non_integral(const BpsColumn& col);

}  // namespace ehae
