#include "ehae/series.hpp"

#include <algorithm>
#include <sstream>

namespace ehae {

const char* var_name(Var v) {
    switch (v) {
        case Var::z: return "z";
        case Var::q: return "q";
        case Var::gs: return "g_s";
    }
    return "?";
}

Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Series::Series(Var v, int order2) : var_(v), offset2_(order2), order2_(order2), comp_(1) {}

Series Series::constant(Var v, const Rational& c, int order2) {
    return monomial(v, c, 0, order2);
}

Series Series::monomial(Var v, const Rational& c, int exp2, int order2, int log_power) {
    if (log_power < 0 || log_power > kMaxLog) throw SeriesError("log power out of range");
    Series s(v, order2);
    if (exp2 >= order2) return s;
    s.offset2_ = exp2;
    s.comp_.assign(log_power + 1, std::vector<Rational>(order2 - exp2));
    s.comp_[log_power][0] = c;
    return s;
}

Series Series::from_half_grid(Var v, int offset2, std::vector<Rational> coeffs, int order2) {
    Series s(v, order2);
    if (offset2 >= order2) return s;
    s.offset2_ = offset2;
    coeffs.resize(order2 - offset2);
    s.comp_[0] = std::move(coeffs);
    return s;
}

Series Series::from_integer_grid(Var v, const std::vector<Rational>& coeffs, int order) {
    std::vector<Rational> half(2 * order);
    for (std::size_t n = 0; n < coeffs.size() && static_cast<int>(n) < order; ++n) half[2 * n] = coeffs[n];
    return from_half_grid(v, 0, std::move(half), 2 * order);
}

void Series::check_var(const Series& o) const {
    if (var_ != o.var_) throw SeriesError("variable mismatch");
}

void Series::ensure_logs(int k) {
    if (k > kMaxLog) throw SeriesError("log-grade overflow");
    while (static_cast<int>(comp_.size()) <= k) comp_.emplace_back(length());
}

Rational Series::coeff(int exp2, int k) const {
    if (exp2 >= order2_) throw SeriesError("coefficient beyond truncation order");
    if (exp2 < offset2_ || k >= static_cast<int>(comp_.size())) return 0;
    return comp_[k][exp2 - offset2_];
}

int Series::valuation2() const {
    int best = order2_;
    for (const auto& c : comp_) {
        for (int i = 0; i < static_cast<int>(c.size()) && offset2_ + i < best; ++i) {
            if (sgn(c[i]) != 0) {
                best = offset2_ + i;
                break;
            }
        }
    }
    return best;
}

bool Series::is_zero() const { return valuation2() == order2_; }

Series Series::truncated(int order2) const {
    if (order2 >= order2_) return *this;
    Series r = *this;
    r.order2_ = order2;
    if (r.offset2_ > order2) r.offset2_ = order2;
    for (auto& c : r.comp_) c.resize(r.length());
    return r;
}

Series Series::shifted(int delta2) const {
    Series r = *this;
    r.offset2_ += delta2;
    r.order2_ += delta2;
    return r;
}

Series Series::normalized() const {
    Series r(var_, order2_);
    int v = valuation2();
    if (v == order2_) return r;
    int top = 0;
    for (int k = 0; k < static_cast<int>(comp_.size()); ++k)
        for (const auto& x : comp_[k])
            if (sgn(x) != 0) top = k;
    r.offset2_ = v;
    r.comp_.assign(top + 1, {});
    for (int k = 0; k <= top; ++k)
        r.comp_[k].assign(comp_[k].begin() + (v - offset2_), comp_[k].end());
    return r;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& c : r.comp_)
        for (auto& x : c) x = -x;
    return r;
}

Series& Series::operator+=(const Series& o) {
    check_var(o);
    int order = std::min(order2_, o.order2_);
    int off = std::min(offset2_, o.offset2_);
    if (off > order) off = order;
    std::size_t logs = std::max(comp_.size(), o.comp_.size());
    std::vector<std::vector<Rational>> out(logs, std::vector<Rational>(order - off));
    for (std::size_t k = 0; k < comp_.size(); ++k)
        for (int i = 0; i < static_cast<int>(comp_[k].size()); ++i) {
            int e = offset2_ + i;
            if (e < order) out[k][e - off] = comp_[k][i];
        }
    for (std::size_t k = 0; k < o.comp_.size(); ++k)
        for (int i = 0; i < static_cast<int>(o.comp_[k].size()); ++i) {
            int e = o.offset2_ + i;
            if (e < order) out[k][e - off] += o.comp_[k][i];
        }
    offset2_ = off;
    order2_ = order;
    comp_ = std::move(out);
    return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series& Series::operator*=(const Rational& c) {
    for (auto& comp : comp_)
        for (auto& x : comp) x *= c;
    return *this;
}

Series operator*(const Series& a, const Series& b) {
    a.check_var(b);
    int va = a.valuation2();
    int vb = b.valuation2();
    int order = std::min(va + b.order2_, vb + a.order2_);
    Series r(a.var_, order);
    if (va >= a.order2_ || vb >= b.order2_) return r;
    int off = va + vb;
    if (off >= order) return r;
    int grade = a.log_grade() + b.log_grade();
    if (grade > Series::kMaxLog) throw SeriesError("log-grade overflow in product");
    r.offset2_ = off;
    r.comp_.assign(grade + 1, std::vector<Rational>(order - off));
    Rational t;
    for (std::size_t ka = 0; ka < a.comp_.size(); ++ka) {
        const auto& ca = a.comp_[ka];
        for (int i = va - a.offset2_; i < static_cast<int>(ca.size()); ++i) {
            if (sgn(ca[i]) == 0) continue;
            int ei = a.offset2_ + i;
            for (std::size_t kb = 0; kb < b.comp_.size(); ++kb) {
                const auto& cb = b.comp_[kb];
                auto& dst = r.comp_[ka + kb];
                for (int j = vb - b.offset2_; j < static_cast<int>(cb.size()); ++j) {
                    int e = ei + b.offset2_ + j;
                    if (e >= order) break;
                    if (sgn(cb[j]) == 0) continue;
                    mpq_mul(t.get_mpq_t(), ca[i].get_mpq_t(), cb[j].get_mpq_t());
                    dst[e - off] += t;
                }
            }
        }
    }
    return r;
}

bool Series::log_free() const {
    for (std::size_t k = 1; k < comp_.size(); ++k)
        for (const auto& c : comp_[k])
            if (sgn(c) != 0) return false;
    return true;
}

Series Series::inverse() const {
    if (!log_free()) throw SeriesError("inverse of a log-bearing series");
    int v = valuation2();
    if (v >= order2_) throw SeriesError("inverse of a series with no nonzero coefficient");
    int rel = order2_ - v;
    const auto& c = comp_[0];
    int base = v - offset2_;
    Rational lead_inv = 1 / c[base];
    std::vector<Rational> g(rel);
    g[0] = lead_inv;
    Rational acc, t;
    for (int n = 1; n < rel; ++n) {
        acc = 0;
        for (int i = 1; i <= n; ++i) {
            const Rational& bi = c[base + i];
            if (sgn(bi) == 0) continue;
            mpq_mul(t.get_mpq_t(), bi.get_mpq_t(), g[n - i].get_mpq_t());
            acc += t;
        }
        g[n] = -acc * lead_inv;
    }
    return from_half_grid(var_, -v, std::move(g), -v + rel);
}

Series operator/(const Series& a, const Series& b) {
    a.check_var(b);
    return a * b.inverse();
}

Series Series::theta() const {
    Series r = *this;
    for (auto& comp : r.comp_)
        for (int i = 0; i < static_cast<int>(comp.size()); ++i) comp[i] *= make_rational(offset2_ + i, 2);
    for (std::size_t k = 1; k < comp_.size(); ++k)
        for (int i = 0; i < length(); ++i) r.comp_[k - 1][i] += comp_[k][i] * static_cast<long>(k);
    return r.normalized().truncated(order2_);
}

Series Series::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    int v = valuation2();
    Series result = Series::constant(var_, 1, order2_ - v);
    Series base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Series Series::pow(const Rational& alpha) const {
    if (!log_free()) throw SeriesError("fractional power of a log-bearing series");
    int v = valuation2();
    if (v != 0 || coeff(0) != 1) throw SeriesError("fractional power needs leading term 1");
    const auto& u = comp_[0];
    int base = -offset2_;
    int len = order2_;
    std::vector<Rational> w(len);
    w[0] = 1;
    Rational acc, t;
    for (int j = 1; j < len; ++j) {
        acc = 0;
        for (int i = 1; i <= j; ++i) {
            const Rational& ui = u[base + i];
            if (sgn(ui) == 0) continue;
            t = ui * w[j - i] * (alpha * i - (j - i));
            acc += t;
        }
        w[j] = acc / j;
    }
    return from_half_grid(var_, 0, std::move(w), len);
}

Series Series::exp() const {
    if (!log_free()) throw SeriesError("exp of a log-bearing series");
    int v = valuation2();
    if (v <= 0 && v < order2_) throw SeriesError("exp needs positive valuation");
    int len = order2_;
    std::vector<Rational> f(len);
    for (int i = 1; i < len; ++i) f[i] = coeff(i);
    std::vector<Rational> e(len);
    e[0] = 1;
    Rational acc;
    for (int j = 1; j < len; ++j) {
        acc = 0;
        for (int i = 1; i <= j; ++i)
            if (sgn(f[i]) != 0) acc += f[i] * e[j - i] * i;
        e[j] = acc / j;
    }
    return from_half_grid(var_, 0, std::move(e), len);
}

bool Series::equals_through(const Series& o, int order2) const {
    if (var_ != o.var_) return false;
    if (order2 > order2_ || order2 > o.order2_) throw SeriesError("comparison beyond truncation order");
    int lo = std::min(offset2_, o.offset2_);
    int logs = std::max(comp_.size(), o.comp_.size());
    for (int k = 0; k < logs; ++k)
        for (int e = lo; e < order2; ++e)
            if (coeff(e, k) != o.coeff(e, k)) return false;
    return true;
}

std::string Series::to_string(int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    const char* x = var_name(var_);
    for (int i = 0; i < length() && shown < max_terms; ++i) {
        for (std::size_t k = 0; k < comp_.size(); ++k) {
            const Rational& c = comp_[k][i];
            if (sgn(c) == 0) continue;
            if (shown) os << " + ";
            os << c.get_str();
            int e = offset2_ + i;
            if (e != 0) {
                os << "*" << x << "^";
                if (e % 2 == 0) os << e / 2;
                else os << "(" << e << "/2)";
            }
            if (k) os << "*log(" << x << ")^" << k;
            ++shown;
        }
    }
    if (!shown) os << "0";
    os << " + O(" << x << "^";
    if (order2_ % 2 == 0) os << order2_ / 2;
    else os << "(" << order2_ << "/2)";
    os << ")";
    return os.str();
}

Series substitute(const Series& outer_in, const Series& inner) {
    if (!outer_in.log_free() || !inner.log_free()) throw SeriesError("substitution of log-bearing series");
    Series outer = outer_in.normalized();
    int a2 = inner.valuation2();
    if (a2 <= 0 || a2 >= inner.order2()) throw SeriesError("substitution needs inner series of positive valuation");
    Rational lead = inner.coeff(a2);
    // inner = lead * y^{a2/2} * U with U(0) = 1
    Series U = (inner * (1 / lead)).shifted(-a2);
    Var yv = inner.var();
    // outer known for exponents < order2/2, each contributes at >= a2/2 times that
    long bound = static_cast<long>(outer.order2()) * a2;
    if (bound % 2 != 0) throw SeriesError("substitution produces quarter exponents");
    int result_order = static_cast<int>(bound / 2);
    Series acc(yv, result_order);
    if (outer.is_zero()) return acc;
    int e_lo = outer.valuation2();
    bool half = false;
    for (int e = e_lo; e < outer.order2(); ++e)
        if (e % 2 != 0 && sgn(outer.coeff(e)) != 0) half = true;
    if (half && lead != 1) throw SeriesError("half-integer powers need leading coefficient 1");
    Series W = half ? U.pow(make_rational(1, 2)) : U;
    int step = half ? 1 : 2;
    // W^{e/step}, built incrementally from the lowest exponent
    int start = e_lo;
    if (!half && start % 2 != 0) throw SeriesError("inconsistent parity in substitution");
    Series cur = W.pow(static_cast<long>(start / step));
    for (int e = start; e < outer.order2(); e += step) {
        if (e != start) cur = cur * W;
        Rational c = outer.coeff(e);
        if (sgn(c) == 0) continue;
        long shift = static_cast<long>(e) * a2;
        if (shift % 2 != 0) throw SeriesError("substitution produces quarter exponents");
        Rational scale = c;
        if (!half) {
            Rational lp = 1;
            long n = e / 2;
            Rational base = n >= 0 ? lead : 1 / lead;
            for (long i = 0; i < (n >= 0 ? n : -n); ++i) lp *= base;
            scale *= lp;
        }
        acc += (cur * scale).shifted(static_cast<int>(shift / 2));
    }
    return acc.truncated(result_order);
}

Series reversion(const Series& f, Var result_var) {
    if (!f.log_free()) throw SeriesError("reversion of a log-bearing series");
    if (f.valuation2() != 2 || f.coeff(2) != 1) throw SeriesError("reversion needs leading term x");
    for (int e = f.offset2(); e < f.order2(); ++e)
        if (e % 2 != 0 && sgn(f.coeff(e)) != 0) throw SeriesError("reversion needs integer exponents");
    int order = f.order2() / 2;  // f known for x^n, n < order
    // Lagrange: [y^n] x(y) = (1/n) [x^{n-1}] (x/f)^n
    Series ratio = f.shifted(-2);
    Series phi = ratio.inverse();
    std::vector<Rational> coeffs(order);
    Series pw = phi;
    for (int n = 1; n < order; ++n) {
        if (n > 1) pw = pw * phi;
        coeffs[n] = pw.coeff(2 * (n - 1)) / n;
    }
    return Series::from_integer_grid(result_var, coeffs, order);
}

}  // namespace ehae
