#pragma once

#include "ehae/field.hpp"
#include "ehae/series.hpp"

#include <array>

namespace ehae {

struct ModelConstants {
    static constexpr int euler_characteristic = -200;
    static constexpr int c2_dot_h = 50;
    static constexpr int branes = 1;
    static Rational discriminant_root() { return make_rational(1, 3125); }
    static Rational tau_prefactor() { return 60; }
    static Rational inhomogeneity() { return make_rational(60, 16); }
};

// sum_p H_p(z) theta^p
struct PicardFuchsOperator {
    std::array<IntPoly, 5> H;
    Series apply(const Series& f) const;
};

PicardFuchsOperator build_pf_operator();

// C_zzz = 5 / ((1 - 3125 z) z^3)
FieldElement yukawa();

struct PeriodSet {
    std::array<Series, 4> omega;  // omega_i has log grade i
    Series tau;                   // offset 1/2
    Series mirror_t;              // omega_1 / omega_0
    Series t_regular;             // t - log z
    Series q_of_z;                // z exp(t - log z)
    Series z_of_q;                // inverse map
    int order2 = 0;
};

// Periods known for z-exponents < order2/2.
PeriodSet compute_periods(int order2);

struct GeneratorSeries {
    std::array<Series, 10> I;  // A1 B1 B2 B3 Q0..Q3 R1 R2
    std::array<Series, 10> J;  // u v1 v2 v3 Q0..Q3 m1 m2
    Series omega0;
    Series theta_t;  // theta_z t = 1 + theta(t - log z)
    Series z_of_q;
    int order2 = 0;
};

GeneratorSeries compute_generator_series(const PeriodSet& periods);

}  // namespace ehae
