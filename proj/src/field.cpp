#include "ehae/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ehae {

namespace {

void strip_high(IntPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return r;
}

// p * (1 - 3125 z)
void mul_disc(IntPoly& p) {
    if (p.empty()) return;
    p.emplace_back(0);
    for (std::size_t i = p.size() - 1; i > 0; --i) mpz_submul_ui(p[i].get_mpz_t(), p[i - 1].get_mpz_t(), kDiscriminant);
}

// If (1 - 3125 z) divides p, replace p by the quotient and return true.
bool div_disc(IntPoly& p) {
    if (p.size() < 2) return false;
    std::size_t d = p.size() - 1;
    IntPoly m(d);
    m[0] = p[0];
    for (std::size_t i = 1; i < d; ++i) {
        m[i] = p[i];
        mpz_addmul_ui(m[i].get_mpz_t(), m[i - 1].get_mpz_t(), kDiscriminant);
    }
    Integer rem = p[d];
    mpz_addmul_ui(rem.get_mpz_t(), m[d - 1].get_mpz_t(), kDiscriminant);
    if (sgn(rem) != 0) return false;
    p = std::move(m);
    return true;
}

IntPoly disc_expanded(int k) {
    IntPoly p{1};
    for (int i = 0; i < k; ++i) mul_disc(p);
    return p;
}

}  // namespace

std::string poly_to_string(const IntPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (sgn(p[i]) == 0) continue;
        Integer a = abs(p[i]);
        if (sgn(p[i]) < 0) os << "-";
        else if (!first) os << "+";
        if (i == 0) os << a.get_str();
        else {
            if (a != 1) os << a.get_str() << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

IntPoly parse_poly(const std::string& s) {
    IntPoly p;
    std::size_t i = 0;
    auto fail = [&]() { throw std::invalid_argument("bad polynomial: " + s); };
    if (s.empty()) fail();
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        Integer coef = 1;
        bool have_coef = j > i;
        if (have_coef) coef = Integer(s.substr(i, j - i));
        i = j;
        std::size_t power = 0;
        if (i < s.size() && (s[i] == '*' || s[i] == 'z')) {
            if (s[i] == '*') {
                if (!have_coef) fail();
                ++i;
            }
            if (i >= s.size() || s[i] != 'z') fail();
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == i) fail();
                power = std::stoul(s.substr(i, k - i));
                i = k;
            }
        } else if (!have_coef) {
            fail();
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-') fail();
        if (p.size() <= power) p.resize(power + 1);
        if (sign < 0) coef = -coef;
        p[power] += coef;
    }
    strip_high(p);
    return p;
}

RatFn::RatFn(const Rational& c) {
    if (sgn(c) != 0) {
        c_ = c;
        num_ = {1};
    }
}

RatFn RatFn::make(const Rational& c, int zexp, IntPoly num, int dexp) {
    RatFn r;
    r.c_ = c;
    r.zexp_ = zexp;
    r.num_ = std::move(num);
    r.dexp_ = dexp;
    while (r.dexp_ < 0) {
        mul_disc(r.num_);
        ++r.dexp_;
    }
    r.canonicalize();
    return r;
}

RatFn RatFn::disc_power(int k) {
    if (k >= 0) return make(1, 0, disc_expanded(k), 0);
    return make(1, 0, {1}, -k);
}

void RatFn::canonicalize() {
    strip_high(num_);
    if (num_.empty() || sgn(c_) == 0) {
        num_.clear();
        c_ = 0;
        zexp_ = dexp_ = 0;
        return;
    }
    std::size_t lead = 0;
    while (sgn(num_[lead]) == 0) ++lead;
    if (lead) {
        num_.erase(num_.begin(), num_.begin() + lead);
        zexp_ += static_cast<int>(lead);
    }
    Integer g = 0;
    for (const auto& x : num_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (sgn(num_[0]) < 0) g = -g;
    if (g != 1) {
        for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        c_ *= g;
    }
    while (dexp_ > 0 && div_disc(num_)) --dexp_;
}

RatFn RatFn::operator-() const {
    RatFn r = *this;
    r.c_ = -r.c_;
    return r;
}

RatFn RatFn::operator*(const Rational& s) const {
    if (sgn(s) == 0 || is_zero()) return RatFn();
    RatFn r = *this;
    r.c_ *= s;
    return r;
}

RatFn operator*(const RatFn& a, const RatFn& b) {
    if (a.is_zero() || b.is_zero()) return RatFn();
    RatFn r;
    r.c_ = a.c_ * b.c_;
    r.zexp_ = a.zexp_ + b.zexp_;
    r.dexp_ = a.dexp_ + b.dexp_;
    if (a.num_.size() == 1) r.num_ = b.num_;
    else if (b.num_.size() == 1) r.num_ = a.num_;
    else r.num_ = poly_mul(a.num_, b.num_);
    // Gauss: the product of primitive polynomials is primitive.
    if (r.dexp_ > 0 && (a.dexp_ == 0 || b.dexp_ == 0))
        while (r.dexp_ > 0 && div_disc(r.num_)) --r.dexp_;
    return r;
}

RatFn operator+(const RatFn& a, const RatFn& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int e = std::min(a.zexp_, b.zexp_);
    int k = std::max(a.dexp_, b.dexp_);
    const Integer& da = a.c_.get_den();
    const Integer& db = b.c_.get_den();
    Integer l;
    mpz_lcm(l.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
    auto lift = [&](const RatFn& x, const Integer& dx) {
        Integer scale = x.c_.get_num() * (l / dx);
        IntPoly p(x.zexp_ - e, Integer(0));
        p.reserve(p.size() + x.num_.size() + (k - x.dexp_));
        for (const auto& c : x.num_) p.push_back(c * scale);
        for (int i = x.dexp_; i < k; ++i) mul_disc(p);
        return p;
    };
    IntPoly pa = lift(a, da);
    IntPoly pb = lift(b, db);
    if (pa.size() < pb.size()) pa.resize(pb.size());
    for (std::size_t i = 0; i < pb.size(); ++i) pa[i] += pb[i];
    RatFn r;
    r.c_ = make_rational(Integer(1), l);
    r.zexp_ = e;
    r.dexp_ = k;
    r.num_ = std::move(pa);
    r.canonicalize();
    return r;
}

RatFn RatFn::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    IntPoly n = num_;
    int j = 0;
    while (n.size() > 1 && div_disc(n)) ++j;
    if (n.size() != 1) throw std::domain_error("inverse of a rational function with a general numerator");
    return make(1 / (c_ * n[0]), -zexp_, disc_expanded(dexp_), j);
}

RatFn RatFn::shift_z(int d) const {
    if (is_zero()) return *this;
    RatFn r = *this;
    r.zexp_ += d;
    return r;
}

RatFn RatFn::theta(int half) const {
    if (is_zero()) return RatFn();
    // 2 (theta + half/2)(z^e N / D^k) = z^e [((2e+h) N + 2 z N') D + 6250 k z N] / D^{k+1}
    std::size_t d = num_.size();
    IntPoly p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = num_[i] * static_cast<long>(2 * zexp_ + half + 2 * static_cast<int>(i));
    IntPoly m(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        if (i < d) m[i] = p[i];
        if (i > 0) {
            mpz_submul_ui(m[i].get_mpz_t(), p[i - 1].get_mpz_t(), kDiscriminant);
            mpz_addmul_ui(m[i].get_mpz_t(), num_[i - 1].get_mpz_t(), 2 * kDiscriminant * dexp_);
        }
    }
    RatFn r;
    r.c_ = c_ / 2;
    r.zexp_ = zexp_;
    r.dexp_ = dexp_ + 1;
    r.num_ = std::move(m);
    r.canonicalize();
    return r;
}

Rational RatFn::value_at_zero() const {
    if (is_zero() || zexp_ > 0) return 0;
    if (zexp_ < 0) throw std::domain_error("pole at z = 0");
    return c_ * num_[0];
}

Series RatFn::expand(int order2, int half) const {
    if (is_zero()) return Series(Var::z, order2);
    int off2 = 2 * zexp_ + half;
    int count = (order2 - off2 + 1) / 2;
    if (count <= 0) return Series(Var::z, order2);
    std::vector<Integer> a(count);
    for (int i = 0; i < count && i < static_cast<int>(num_.size()); ++i) a[i] = num_[i];
    for (int j = 0; j < dexp_; ++j)
        for (int i = 1; i < count; ++i) mpz_addmul_ui(a[i].get_mpz_t(), a[i - 1].get_mpz_t(), kDiscriminant);
    std::vector<Rational> half_grid(order2 - off2);
    for (int i = 0; i < count; ++i) half_grid[2 * i] = c_ * a[i];
    return Series::from_half_grid(Var::z, off2, std::move(half_grid), order2);
}

void RatFn::to_polys(IntPoly& num, IntPoly& den) const {
    if (is_zero()) {
        num.clear();
        den = {1};
        return;
    }
    num.assign(std::max(zexp_, 0), Integer(0));
    for (const auto& x : num_) num.push_back(x * c_.get_num());
    den.assign(std::max(-zexp_, 0), Integer(0));
    IntPoly dk = disc_expanded(dexp_);
    for (const auto& x : dk) den.push_back(x * c_.get_den());
}

RatFn RatFn::from_polys(IntPoly num, IntPoly den) {
    strip_high(num);
    strip_high(den);
    if (den.empty()) throw std::domain_error("zero denominator");
    if (num.empty()) return RatFn();
    std::size_t a = 0;
    while (sgn(den[a]) == 0) ++a;
    den.erase(den.begin(), den.begin() + a);
    int b = 0;
    while (den.size() > 1 && div_disc(den)) ++b;
    if (den.size() != 1) throw std::domain_error("unsupported denominator (only z^a (1-3125z)^b allowed)");
    return make(make_rational(Integer(1), den[0]), -static_cast<int>(a), std::move(num), b);
}

std::string RatFn::to_string() const {
    IntPoly n, d;
    to_polys(n, d);
    return "(" + poly_to_string(n) + ")/(" + poly_to_string(d) + ")";
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    RatFn ev, od;
    if (!a.even_.is_zero() && !b.even_.is_zero()) ev = a.even_ * b.even_;
    if (!a.odd_.is_zero() && !b.odd_.is_zero()) ev = ev + (a.odd_ * b.odd_).shift_z(1);
    if (!a.even_.is_zero() && !b.odd_.is_zero()) od = a.even_ * b.odd_;
    if (!a.odd_.is_zero() && !b.even_.is_zero()) od = od + a.odd_ * b.even_;
    return FieldElement(std::move(ev), std::move(od));
}

FieldElement FieldElement::inverse() const {
    if (is_even() && !even_.is_zero()) return FieldElement(even_.inverse());
    if (is_odd() && !odd_.is_zero()) return FieldElement(RatFn(), odd_.inverse().shift_z(-1));
    throw std::domain_error("inverse of a mixed-parity or zero field element");
}

FieldElement FieldElement::theta() const { return FieldElement(even_.theta(0), odd_.theta(1)); }

Series FieldElement::expand(int order2) const { return even_.expand(order2, 0) + odd_.expand(order2, 1); }

int FieldElement::valuation2() const {
    int v = 1 << 20;
    if (!even_.is_zero()) v = std::min(v, 2 * even_.zexp());
    if (!odd_.is_zero()) v = std::min(v, 2 * odd_.zexp() + 1);
    return v;
}

std::string FieldElement::serialize() const {
    IntPoly n, d;
    std::string out;
    even_.to_polys(n, d);
    out += poly_to_string(n) + "/" + poly_to_string(d) + "|";
    odd_.to_polys(n, d);
    out += poly_to_string(n) + "/" + poly_to_string(d);
    return out;
}

FieldElement FieldElement::parse(const std::string& s) {
    auto bar = s.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("bad field element: " + s);
    auto part = [&](const std::string& t) {
        auto slash = t.find('/');
        if (slash == std::string::npos) throw std::invalid_argument("bad field element part: " + t);
        return RatFn::from_polys(parse_poly(t.substr(0, slash)), parse_poly(t.substr(slash + 1)));
    };
    return FieldElement(part(s.substr(0, bar)), part(s.substr(bar + 1)));
}

}  // namespace ehae
