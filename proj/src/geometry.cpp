#include "ehae/geometry.hpp"

#include "ehae/ring.hpp"

namespace ehae {

namespace {

// Truncated power series in the Frobenius parameter rho, degree <= 3.
using RhoSeries = std::array<Rational, 4>;

RhoSeries rho_mul(const RhoSeries& a, const RhoSeries& b) {
    RhoSeries r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; i + j < 4; ++j) r[i + j] += a[i] * b[j];
    return r;
}

// (j + s rho)
RhoSeries rho_linear(long j, long s) { return RhoSeries{Rational(j), Rational(s), 0, 0}; }

// 1 / (j + rho)
RhoSeries rho_reciprocal(long j) {
    RhoSeries r{};
    Rational term = make_rational(1, j);
    for (int k = 0; k < 4; ++k) {
        r[k] = term;
        term *= make_rational(-1, j);
    }
    return r;
}

Series poly_times(const IntPoly& p, const Series& f) {
    Series acc(f.var(), f.order2());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (sgn(p[i]) == 0) continue;
        acc += (f * Rational(p[i])).shifted(2 * static_cast<int>(i));
    }
    return acc.truncated(f.order2());
}

}  // namespace

Series PicardFuchsOperator::apply(const Series& f) const {
    Series acc(f.var(), f.order2());
    Series th = f;
    for (int p = 0; p < 5; ++p) {
        if (p) th = th.theta();
        acc += poly_times(H[p], th);
    }
    return acc;
}

PicardFuchsOperator build_pf_operator() {
    // theta^4 - 5 z (5 theta + 1)(5 theta + 2)(5 theta + 3)(5 theta + 4)
    PicardFuchsOperator op;
    op.H[4] = {1, -3125};
    op.H[3] = {0, -6250};
    op.H[2] = {0, -4375};
    op.H[1] = {0, -1250};
    op.H[0] = {0, -120};
    return op;
}

FieldElement yukawa() { return FieldElement(RatFn::make(5, -3, {1}, 1)); }

PeriodSet compute_periods(int order2) {
    if (order2 < 6) throw SeriesError("period order too small");
    PeriodSet ps;
    ps.order2 = order2;
    int nmax = (order2 + 1) / 2;  // z^n with 2n < order2
    std::vector<RhoSeries> c(nmax);
    RhoSeries cur{1, 0, 0, 0};
    for (int n = 0; n < nmax; ++n) {
        if (n > 0) {
            for (long j = 5L * (n - 1) + 1; j <= 5L * n; ++j) cur = rho_mul(cur, rho_linear(j, 5));
            RhoSeries inv = rho_reciprocal(n);
            for (int k = 0; k < 5; ++k) cur = rho_mul(cur, inv);
        }
        c[n] = cur;
    }
    // omega_i = sum_k binom(i,k) log^{i-k} sum_n k! [rho^k] c_n z^n
    std::array<Series, 4> pieces;
    for (int k = 0; k < 4; ++k) {
        std::vector<Rational> coeffs(nmax);
        Rational kf(factorial(k));
        for (int n = 0; n < nmax; ++n) coeffs[n] = c[n][k] * kf;
        pieces[k] = Series::from_integer_grid(Var::z, coeffs, nmax).truncated(order2);
    }
    for (int i = 0; i < 4; ++i) {
        Series w(Var::z, order2);
        for (int k = 0; k <= i; ++k) {
            Series logs = Series::monomial(Var::z, Rational(binomial(i, k)), 0, order2, i - k);
            w += logs * pieces[k];
        }
        ps.omega[i] = w;
    }
    // tau = sum (7/2)_{5n} / ((3/2)_n)^5 z^{n + 1/2}
    std::vector<Rational> tau_half(order2 - 1);
    Rational t = 1;
    for (int n = 0; 2 * n + 1 < order2; ++n) {
        if (n > 0) {
            for (int j = 5 * (n - 1); j < 5 * n; ++j) t *= make_rational(7 + 2 * j, 2);
            Rational d(3 + 2 * (n - 1), 2);
            for (int k = 0; k < 5; ++k) t /= d;
        }
        tau_half[2 * n] = t;
    }
    ps.tau = Series::from_half_grid(Var::z, 1, std::move(tau_half), order2);
    ps.mirror_t = ps.omega[1] / ps.omega[0];
    ps.t_regular = pieces[1] / ps.omega[0];
    ps.q_of_z = ps.t_regular.exp().shifted(2).truncated(order2);
    ps.z_of_q = reversion(ps.q_of_z, Var::q);
    return ps;
}

GeneratorSeries compute_generator_series(const PeriodSet& ps) {
    GeneratorSeries gs;
    int order2 = ps.order2;
    gs.order2 = order2;
    const Series& w0 = ps.omega[0];
    gs.omega0 = w0;
    gs.z_of_q = ps.z_of_q;
    Series one = Series::constant(Var::z, 1, order2);
    gs.theta_t = one + ps.t_regular.theta();
    auto& I = gs.I;
    I[0] = gs.theta_t.theta() / gs.theta_t - one;
    Series th = w0;
    for (int p = 1; p <= 3; ++p) {
        th = th.theta();
        I[p] = th / w0;
    }
    Series T = ps.tau * ModelConstants::tau_prefactor();
    th = T;
    for (int p = 0; p < 4; ++p) {
        if (p) th = th.theta();
        I[4 + p] = th.shifted(1).truncated(order2);
    }
    I[8] = Series(Var::z, order2);
    I[9] = Series(Var::z, order2);

    const auto& images = basis_images(Basis::J);
    for (int i = 0; i < kGenerators; ++i) gs.J[i] = evaluate(images[i], I, order2);
    return gs;
}

}  // namespace ehae
