#include "doctest.h"

#include "ehae/field.hpp"
#include "ehae/geometry.hpp"
#include "ehae/ring.hpp"

using namespace ehae;

namespace {

IntPoly P(std::vector<long> c) {
    IntPoly p;
    for (long x : c) p.emplace_back(x);
    return p;
}

// Taylor coefficients of 1/(1-3125z)^k via binomials.
Rational disc_inverse_coeff(int k, int n) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 3125, n);
    return Rational(binomial(n + k - 1, n) * p);
}

}  // namespace

TEST_CASE("canonical form") {
    RatFn a = RatFn::make(make_rational(3, 2), 1, P({2, 4}), 0);
    CHECK(a.scalar() == 3);
    CHECK(a.num() == P({1, 2}));
    CHECK(a.zexp() == 1);

    // a factor of (1-3125z) in the numerator cancels
    RatFn b = RatFn::make(1, 0, P({1, -3125}), 2);
    CHECK(b.dexp() == 1);
    CHECK(b.num() == P({1}));

    RatFn c = RatFn::make(1, 0, P({0, 0, 7}), 0);
    CHECK(c.zexp() == 2);
    CHECK(c.scalar() == 7);

    RatFn d = RatFn::make(1, 0, P({-1, 1}), 0);
    CHECK(d.scalar() == -1);
    CHECK(sgn(d.num()[0]) > 0);
}

TEST_CASE("arithmetic") {
    RatFn x = RatFn::disc_power(-1);
    RatFn y = RatFn::disc_power(1);
    CHECK(x * y == RatFn(1));
    CHECK((x + x) == x * Rational(2));
    CHECK((x - x).is_zero());

    RatFn yuk = field_yukawa().even();
    CHECK(yuk.zexp() == -3);
    CHECK(yuk.dexp() == 1);
    CHECK(yuk.shift_z(3).value_at_zero() == 5);

    RatFn s = RatFn::z_power(-1) + RatFn(1);
    IntPoly n, dd;
    s.to_polys(n, dd);
    CHECK(n == P({1, 1}));
    CHECK(dd == P({0, 1}));

    CHECK(RatFn::disc_power(2).inverse() == RatFn::disc_power(-2));
    CHECK_THROWS(RatFn::make(1, 0, P({1, 1}), 0).inverse());
}

TEST_CASE("discriminant pole") {
    RatFn h4 = RatFn::disc_power(1);
    IntPoly n, d;
    h4.to_polys(n, d);
    Rational at = Rational(n[0]) + Rational(n[1]) * ModelConstants::discriminant_root();
    CHECK(at == 0);
}

TEST_CASE("from_polys") {
    RatFn r = RatFn::from_polys(P({2}), P({0, 1, -3125}));
    CHECK(r.zexp() == -1);
    CHECK(r.dexp() == 1);
    CHECK(r.scalar() == 2);
    CHECK_THROWS(RatFn::from_polys(P({1}), P({1, 1})));
    CHECK_THROWS(RatFn::from_polys(P({1}), P({})));
}

TEST_CASE("expansion") {
    int k = 3;
    RatFn r = RatFn::disc_power(-k);
    Series s = r.expand(12);
    for (int n = 0; n < 6; ++n) CHECK(s.coeff_int(n) == disc_inverse_coeff(k, n));

    Series h = RatFn(1).expand(7, 1);
    CHECK(h.coeff(1) == 1);
    CHECK(h.coeff(3) == 0);

    RatFn pole = RatFn::z_power(-2);
    CHECK(pole.expand(4).coeff(-4) == 1);
    CHECK_THROWS(pole.value_at_zero());
}

TEST_CASE("theta matches series theta") {
    std::vector<RatFn> fs = {
        RatFn::make(make_rational(2, 7), -1, P({3, -5, 1}), 2),
        RatFn::make(5, 2, P({1}), 1),
        field_h().even(),
        field_X().even(),
    };
    for (const auto& f : fs)
        for (int half = 0; half <= 1; ++half) {
            Series lhs = f.theta(half).expand(16, half);
            Series rhs = f.expand(18, half).theta();
            CHECK(lhs.equals_through(rhs, 16));
        }
    CHECK(RatFn(7).theta().is_zero());
    CHECK(RatFn(7).theta(1) == RatFn(make_rational(7, 2)));
}

TEST_CASE("field element products track sqrt z") {
    FieldElement s = FieldElement::sqrt_z();
    FieldElement zz = s * s;
    CHECK(zz.is_even());
    CHECK(zz.even() == RatFn::z_power(1));
    FieldElement inv = s.inverse();
    CHECK(inv * s == FieldElement(Rational(1)));
    CHECK_THROWS((s + FieldElement(Rational(1))).inverse());

    FieldElement t = s.theta();
    CHECK(t == s * make_rational(1, 2));
    CHECK(FieldElement(RatFn(), RatFn::z_power(1)).valuation2() == 3);
}

TEST_CASE("model constants") {
    CHECK(field_x() == FieldElement(RatFn::make(5, 0, P({1}), 1)));
    // X = theta(x)/x, zero at z = 0
    FieldElement X = field_x().theta() * field_x().inverse();
    CHECK(X == field_X());
    CHECK(X.even().value_at_zero() == 0);
    CHECK(field_h().even().value_at_zero() == 1);
}

TEST_CASE("serialization") {
    FieldElement f(RatFn::make(make_rational(-3, 4), -2, P({1, 6}), 3), RatFn::make(2, 1, P({1}), 0));
    std::string s = f.serialize();
    CHECK(FieldElement::parse(s) == f);
    CHECK(FieldElement::parse("0/1|0/1").is_zero());
    CHECK(FieldElement::parse("1/2|0/1") == FieldElement(make_rational(1, 2)));
    CHECK_THROWS(FieldElement::parse("1/2"));
    CHECK_THROWS(FieldElement::parse("1/(1+z)|0/1"));
    CHECK_THROWS(FieldElement::parse("1/1+z|0/1"));
    CHECK(poly_to_string(P({1, -3125})) == "1-3125*z");
    CHECK(parse_poly("-z^2+4*z-1") == P({-1, 4, -1}));
}
