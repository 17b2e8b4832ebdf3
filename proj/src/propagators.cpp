#include "ehae/propagators.hpp"

namespace ehae {

namespace {

RingElement g(int i) { return RingElement::generator(Basis::J, i); }

}  // namespace

Propagators propagators_and_terminators() {
    const Basis J = Basis::J;
    FieldElement inv_c = field_yukawa().inverse();
    FieldElement X = field_X();
    auto u = g(gen::u), v1 = g(gen::v1), v2 = g(gen::v2), v3 = g(gen::v3);
    auto q0 = g(gen::Q0), q1 = g(gen::Q1), m1 = g(gen::m1), m2 = g(gen::m2);
    FieldElement half(make_rational(1, 2));
    FieldElement sqrt_z = FieldElement::sqrt_z();

    Propagators p;
    p.S_zz = (-v1 * (inv_c * field_z(-1))).with_weights({2, -2});
    p.S_z = ((u * v1 + v2) * (inv_c * field_z(-2))).with_weights({1, -2});
    p.S = ((-(u * u * v1) * half - (u + RingElement::constant(J, X * half)) * v2 + v3 * half) * (inv_c * field_z(-3)))
              .with_weights({0, -2});
    FieldElement pre_dz = inv_c * field_z(-3) * sqrt_z;  // 1/(z^{5/2} C)
    p.Delta_z = ((-m1 + q1 * v1 + q0 * v2) * pre_dz).with_weights({1, 1});
    FieldElement pre_d = pre_dz * field_z(-1);  // 1/(z^{7/2} C)
    p.Delta = ((u * m1 - m2 - u * q1 * v1 - v2 * (u * q0 + q0 * X + q1) + q0 * v3) * pre_d).with_weights({0, 1});
    return p;
}

Propagators propagators_in(Basis b) {
    Propagators p = propagators_and_terminators();
    if (b == Basis::J) return p;
    return Propagators{change_basis(p.S_zz, b), change_basis(p.S_z, b), change_basis(p.S, b),
                       change_basis(p.Delta_z, b), change_basis(p.Delta, b)};
}

RingElement disk_two_point(Basis b) {
    const Basis I = Basis::I;
    auto A1 = RingElement::generator(I, gen::A1), B1 = RingElement::generator(I, gen::B1);
    auto B2 = RingElement::generator(I, gen::B2), R1 = RingElement::generator(I, gen::R1);
    auto q0 = RingElement::generator(I, gen::Q0), q1 = RingElement::generator(I, gen::Q1);
    auto q2 = RingElement::generator(I, gen::Q2);
    RingElement V1 = A1 + B1 * FieldElement(2) + RingElement::constant(I, Rational(1));
    RingElement V2 = B2 - B1 * V1;
    FieldElement pre = field_z(-3) * FieldElement::sqrt_z();  // z^{-5/2}
    RingElement d = ((q2 - V1 * q1 - V2 * q0 - R1) * pre).with_weights({-2, -1});
    return change_basis(d, b);
}

}  // namespace ehae
