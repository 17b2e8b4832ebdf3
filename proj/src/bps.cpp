#include "ehae/bps.hpp"

#include <stdexcept>

namespace ehae {

std::vector<Rational> sinc_power_coefficients(int e, int jmax) {
    if (jmax < 0) return {};
    // sin(x/2)/(x/2) = sum_j (-1)^j y^j / (4^j (2j+1)!), y = x^2
    std::vector<Rational> base(jmax + 1);
    for (int j = 0; j <= jmax; ++j) {
        Rational c(Integer(1), Integer(factorial(2 * j + 1)) * (Integer(1) << (2 * j)));
        c.canonicalize();
        base[j] = (j % 2) ? Rational(-c) : c;
    }
    Series s = Series::from_integer_grid(Var::gs, base, jmax + 1);
    Series p = s.pow(Rational(e));
    std::vector<Rational> out(jmax + 1);
    for (int j = 0; j <= jmax; ++j) out[j] = p.coeff_int(j);
    return out;
}

bool cover_allowed(int h, int k, int D) {
    if (k <= 0 || D % k != 0) return false;
    if (h > 0 && k % 2 == 0) return false;
    return ((D / k) - h) % 2 == 0;
}

Rational cover_contribution(int g, int h, int D, const BpsTable& known, const BpsColumn& self) {
    Rational total = 0;
    for (int gp = 0; gp <= g; ++gp) {
        const BpsColumn* col = nullptr;
        if (gp == g) {
            col = &self;
        } else {
            auto it = known.find({gp, h});
            if (it == known.end()) throw std::invalid_argument("missing lower-genus BPS column (" + std::to_string(gp) +
                                                               "," + std::to_string(h) + ")");
            col = &it->second;
        }
        Rational s = sinc_power_coefficients(2 * gp + h - 2, g - gp)[g - gp];
        for (int k = 1; k <= D; ++k) {
            if (gp == g && k == 1) continue;
            if (!cover_allowed(h, k, D)) continue;
            auto e = col->find(D / k);
            if (e == col->end()) continue;
            Integer kp = 1;
            int power = 2 * g + h - 3;
            Rational kpow;
            if (power >= 0) {
                mpz_pow_ui(kp.get_mpz_t(), Integer(k).get_mpz_t(), power);
                kpow = Rational(kp);
            } else {
                mpz_pow_ui(kp.get_mpz_t(), Integer(k).get_mpz_t(), -power);
                kpow = make_rational(Integer(1), kp);
            }
            total += e->second * kpow * s;
        }
    }
    return total;
}

BpsColumn extract_bps(int g, int h, int d_max, const Series& fa, const BpsTable& known) {
    if (d_max >= fa.order2()) throw SeriesError("BPS extraction beyond the available truncation");
    return extract_bps(g, h, d_max, known, [&](int D) { return fa.coeff(D); });
}

std::map<int, Rational> resum_bps(int g, int h, int d_max, const BpsTable& table) {
    auto it = table.find({g, h});
    if (it == table.end()) throw std::invalid_argument("missing BPS column");
    std::map<int, Rational> out;
    for (int D = 1; D <= d_max; ++D) {
        if ((D - h) % 2 != 0) continue;
        Rational self = 0;
        auto e = it->second.find(D);
        if (e != it->second.end()) self = e->second;
        out[D] = self + cover_contribution(g, h, D, table, it->second);
    }
    return out;
}

int first_non_integral(const BpsColumn& col) {
    for (const auto& [D, n] : col)
        if (!is_integer(n)) return D;
    return -1;
}

}  // namespace ehae
