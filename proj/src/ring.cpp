#include "ehae/ring.hpp"

#include "ehae/geometry.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ehae {

namespace {

const char* const kNamesI[kGenerators] = {"A1", "B1", "B2", "B3", "Q0", "Q1", "Q2", "Q3", "R1", "R2"};
const char* const kNamesJ[kGenerators] = {"u", "v1", "v2", "v3", "Q0", "Q1", "Q2", "Q3", "m1", "m2"};
const int kDegree[kGenerators] = {1, 1, 2, 3, 0, 1, 2, 3, 2, 3};

using Accumulator = std::unordered_map<Monomial, FieldElement>;

std::vector<Term> collect(Accumulator& acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.push_back(Term{m, std::move(c)});
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    return out;
}

void check_overflow(const RingElement& a, const RingElement& b) {
    if (a.max_exponent() + b.max_exponent() > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
}

void check_basis(const RingElement& a, const RingElement& b) {
    if (a.basis() != b.basis()) throw std::invalid_argument("ring elements in different bases");
}

void multiply_into(Accumulator& acc, const Term& ta, const std::vector<Term>& bt) {
    for (const auto& tb : bt) {
        auto [it, fresh] = acc.try_emplace(ta.mono + tb.mono);
        if (fresh) it->second = ta.coef * tb.coef;
        else it->second += ta.coef * tb.coef;
    }
}

}  // namespace

const char* basis_name(Basis b) { return b == Basis::I ? "I" : "J"; }

const char* generator_name(Basis b, int index) { return b == Basis::I ? kNamesI[index] : kNamesJ[index]; }

int generator_index(Basis b, const std::string& name) {
    for (int i = 0; i < kGenerators; ++i)
        if (name == generator_name(b, i)) return i;
    return -1;
}

int generator_degree(int index) { return kDegree[index]; }

Monomial pack(const Exponents& e) {
    Monomial m = 0;
    for (int i = 0; i < kGenerators; ++i) {
        if (e[i] < 0 || e[i] > kMaxExponent) throw std::overflow_error("exponent out of range");
        m = (m << kExponentBits) | static_cast<Monomial>(e[i]);
    }
    return m;
}

Exponents unpack(Monomial m) {
    Exponents e{};
    for (int i = 0; i < kGenerators; ++i) e[i] = exponent_of(m, i);
    return e;
}

RingElement RingElement::constant(Basis b, const FieldElement& c, Weights w) {
    RingElement r(b, w);
    if (!c.is_zero()) r.terms_.push_back(Term{0, c});
    return r;
}

RingElement RingElement::generator(Basis b, int index, Weights w) {
    RingElement r(b, w);
    r.terms_.push_back(Term{unit_monomial(index), FieldElement(1)});
    return r;
}

RingElement RingElement::from_terms(Basis b, std::vector<Term> terms, Weights w) {
    Accumulator acc;
    for (auto& t : terms) {
        auto [it, fresh] = acc.try_emplace(t.mono);
        if (fresh) it->second = std::move(t.coef);
        else it->second += t.coef;
    }
    RingElement r(b, w);
    r.terms_ = collect(acc);
    return r;
}

FieldElement RingElement::coefficient(const Exponents& e) const {
    Monomial m = pack(e);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, Monomial x) { return t.mono < x; });
    if (it != terms_.end() && it->mono == m) return it->coef;
    return FieldElement();
}

int RingElement::degree_in(int index) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, exponent_of(t.mono, index));
    return d;
}

int RingElement::max_exponent() const {
    int d = 0;
    for (const auto& t : terms_)
        for (int i = 0; i < kGenerators; ++i) d = std::max(d, exponent_of(t.mono, i));
    return d;
}

int RingElement::graded_degree() const {
    int best = 0;
    for (const auto& t : terms_) {
        int d = 0;
        for (int i = 0; i < kGenerators; ++i) d += kDegree[i] * exponent_of(t.mono, i);
        int x = 0;
        if (!t.coef.even().is_zero()) x = std::max(x, t.coef.even().dexp());
        if (!t.coef.odd().is_zero()) x = std::max(x, t.coef.odd().dexp());
        best = std::max(best, d + x);
    }
    return best;
}

bool RingElement::has_parity(bool want_odd) const {
    for (const auto& t : terms_)
        if (want_odd ? !t.coef.is_odd() : !t.coef.is_even()) return false;
    return true;
}

RingElement RingElement::operator-() const {
    RingElement r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

RingElement& RingElement::operator+=(const RingElement& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        Weights w = weights_;
        *this = o;
        if (!(w == Weights{})) weights_ = w;
        return *this;
    }
    check_basis(*this, o);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono < o.terms_[j].mono)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].mono < terms_[i].mono) {
            out.push_back(o.terms_[j++]);
        } else {
            FieldElement c = terms_[i].coef + o.terms_[j].coef;
            if (!c.is_zero()) out.push_back(Term{terms_[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) { return *this += -o; }

RingElement operator*(const RingElement& a, const FieldElement& c) {
    RingElement r(a.basis_, a.weights_);
    if (c.is_zero()) return r;
    r.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) {
        FieldElement p = t.coef * c;
        if (!p.is_zero()) r.terms_.push_back(Term{t.mono, std::move(p)});
    }
    return r;
}

bool operator==(const RingElement& a, const RingElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.terms_.empty()) return true;
    if (a.basis_ != b.basis_) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
    return true;
}

RingElement multiply_serial(const RingElement& a, const RingElement& b) {
    Weights w{a.weights_.m + b.weights_.m, a.weights_.n + b.weights_.n};
    RingElement r(a.basis_, w);
    if (a.is_zero() || b.is_zero()) {
        if (a.is_zero()) r.basis_ = b.basis_;
        return r;
    }
    check_basis(a, b);
    check_overflow(a, b);
    Accumulator acc;
    acc.reserve(a.size() * b.size() / 2 + 1);
    for (const auto& ta : a.terms_) multiply_into(acc, ta, b.terms_);
    r.terms_ = collect(acc);
    return r;
}

RingElement multiply_parallel(const RingElement& a, const RingElement& b) {
    int threads = omp_get_max_threads();
    if (threads <= 1 || omp_in_parallel() || a.size() * b.size() < 4096) return multiply_serial(a, b);
    check_basis(a, b);
    check_overflow(a, b);
    const RingElement& outer = a.size() >= b.size() ? a : b;
    const RingElement& inner = a.size() >= b.size() ? b : a;
    std::vector<Accumulator> parts(threads);
    long n = static_cast<long>(outer.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (long i = 0; i < n; ++i) multiply_into(parts[omp_get_thread_num()], outer.terms_[i], inner.terms_);
    Accumulator& acc = parts[0];
    for (int t = 1; t < threads; ++t)
        for (auto& [m, c] : parts[t]) {
            auto [it, fresh] = acc.try_emplace(m);
            if (fresh) it->second = std::move(c);
            else it->second += c;
        }
    RingElement r(a.basis_, Weights{a.weights_.m + b.weights_.m, a.weights_.n + b.weights_.n});
    r.terms_ = collect(acc);
    return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) { return multiply_parallel(a, b); }

// ---------------------------------------------------------------------------
// Field constants

FieldElement field_z(int power) { return FieldElement(RatFn::z_power(power)); }
FieldElement field_disc(int power) { return FieldElement(RatFn::disc_power(power)); }
FieldElement field_x() { return FieldElement(RatFn::make(5, 0, {1}, 1)); }
FieldElement field_X() { return FieldElement(RatFn::make(3125, 1, {1}, 1)); }
FieldElement field_h() { return FieldElement(RatFn::make(1, 0, {1, -1875}, 1)); }
FieldElement field_s() {
    return FieldElement(make_rational(12, 25)) - field_h() * make_rational(1, 5) + field_X() * make_rational(3, 25);
}
FieldElement field_yukawa() { return yukawa(); }

// ---------------------------------------------------------------------------
// Nested (Horner-like) substitution over the sorted term list.

namespace {

template <class Ops>
typename Ops::Value nested(const std::vector<Term>& t, std::size_t lo, std::size_t hi, int level, Ops& ops) {
    if (level == kGenerators) return ops.leaf(t[lo].coef);
    typename Ops::Value acc = ops.zero();
    std::size_t i = lo;
    while (i < hi) {
        int k = exponent_of(t[i].mono, level);
        std::size_t j = i;
        while (j < hi && exponent_of(t[j].mono, level) == k) ++j;
        typename Ops::Value inner = nested(t, i, j, level + 1, ops);
        if (k) inner = ops.mul(ops.power(level, k), inner);
        ops.add(acc, inner);
        i = j;
    }
    return acc;
}

struct RingSubstitution {
    using Value = RingElement;
    Basis target;
    const std::array<RingElement, kGenerators>* images;
    std::array<std::vector<RingElement>, kGenerators> powers;

    Value zero() const { return RingElement(target); }
    Value leaf(const FieldElement& c) const { return RingElement::constant(target, c); }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    void add(Value& acc, const Value& v) const { acc += v; }
    const Value& power(int level, int k) {
        auto& p = powers[level];
        if (p.empty()) p.push_back(RingElement::constant(target, FieldElement(1)));
        while (static_cast<int>(p.size()) <= k) p.push_back(p.back() * (*images)[level]);
        return p[k];
    }
};

struct SeriesSubstitution {
    using Value = Series;
    const std::array<Series, kGenerators>* gens;
    int order2;
    std::array<std::vector<Series>, kGenerators> powers;

    Value zero() const { return Series(Var::z, order2); }
    Value leaf(const FieldElement& c) const { return c.expand(order2); }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    void add(Value& acc, const Value& v) const { acc += v; }
    const Value& power(int level, int k) {
        auto& p = powers[level];
        if (p.empty()) p.push_back(Series::constant(Var::z, 1, order2));
        while (static_cast<int>(p.size()) <= k) p.push_back(p.back() * (*gens)[level]);
        return p[k];
    }
};

RingElement build_generator(Basis b, int i) { return RingElement::generator(b, i); }

RingElement cst(Basis b, const FieldElement& f) { return RingElement::constant(b, f); }

std::array<RingElement, kGenerators> make_images_i_to_j() {
    const Basis J = Basis::J;
    auto u = build_generator(J, gen::u), v1 = build_generator(J, gen::v1), v2 = build_generator(J, gen::v2),
         v3 = build_generator(J, gen::v3), m1 = build_generator(J, gen::m1), m2 = build_generator(J, gen::m2);
    auto q0 = build_generator(J, gen::Q0), q1 = build_generator(J, gen::Q1), q2 = build_generator(J, gen::Q2),
         q3 = build_generator(J, gen::Q3);
    FieldElement X = field_X(), h = field_h(), s = field_s();
    std::array<RingElement, kGenerators> img;
    img[gen::A1] = v1 - u * FieldElement(2) - cst(J, make_rational(8, 5));
    img[gen::B1] = u;
    img[gen::B2] = v2 - cst(J, make_rational(2, 25)) + u * (v1 - cst(J, make_rational(3, 5)));
    img[gen::B3] = v3 - cst(J, s) +
                   u * (-(v2 - cst(J, make_rational(2, 25))) + (v1 - cst(J, make_rational(3, 5))) * X + cst(J, h - FieldElement(1)));
    img[gen::Q0] = q0;
    img[gen::Q1] = q1;
    img[gen::Q2] = q2;
    img[gen::Q3] = q3;
    img[gen::R1] = q0 * FieldElement(make_rational(2, 25)) + q1 * FieldElement(make_rational(3, 5)) + q2 - m1;
    img[gen::R2] = q0 * (s - X * make_rational(2, 25)) + q1 * (FieldElement(make_rational(23, 25)) - h) - q2 * X + q3 -
                   u * img[gen::R1] - m2;
    return img;
}

std::array<RingElement, kGenerators> make_images_j_to_i() {
    const Basis I = Basis::I;
    auto A1 = build_generator(I, gen::A1), B1 = build_generator(I, gen::B1), B2 = build_generator(I, gen::B2),
         B3 = build_generator(I, gen::B3), R1 = build_generator(I, gen::R1), R2 = build_generator(I, gen::R2);
    auto q0 = build_generator(I, gen::Q0), q1 = build_generator(I, gen::Q1), q2 = build_generator(I, gen::Q2),
         q3 = build_generator(I, gen::Q3);
    FieldElement X = field_X(), h = field_h(), s = field_s();
    RingElement V1 = A1 + B1 * FieldElement(2) + cst(I, Rational(1));
    RingElement V2 = B2 - B1 * V1;
    std::array<RingElement, kGenerators> img;
    img[gen::u] = B1;
    img[gen::v1] = V1 + cst(I, make_rational(3, 5));
    img[gen::v2] = V2 + cst(I, make_rational(2, 25));
    img[gen::v3] = B3 - B1 * (-V2 + V1 * X + cst(I, h - FieldElement(1))) + cst(I, s);
    img[gen::Q0] = q0;
    img[gen::Q1] = q1;
    img[gen::Q2] = q2;
    img[gen::Q3] = q3;
    img[gen::m1] = q0 * FieldElement(make_rational(2, 25)) + q1 * FieldElement(make_rational(3, 5)) + q2 - R1;
    img[gen::m2] = q0 * (s - X * make_rational(2, 25)) + q1 * (FieldElement(make_rational(23, 25)) - h) - q2 * X + q3 - R2 - B1 * R1;
    return img;
}

std::array<RingElement, kGenerators> make_theta_i() {
    const Basis I = Basis::I;
    auto A1 = build_generator(I, gen::A1), B1 = build_generator(I, gen::B1), B2 = build_generator(I, gen::B2),
         B3 = build_generator(I, gen::B3), R1 = build_generator(I, gen::R1), R2 = build_generator(I, gen::R2);
    std::array<RingElement, 4> Q{build_generator(I, gen::Q0), build_generator(I, gen::Q1), build_generator(I, gen::Q2),
                                 build_generator(I, gen::Q3)};
    FieldElement X = field_X(), h = field_h();
    PicardFuchsOperator pf = build_pf_operator();
    std::array<FieldElement, 4> ratio;
    for (int p = 0; p < 4; ++p) ratio[p] = FieldElement(RatFn::from_polys(pf.H[p], pf.H[4]));
    FieldElement thetaC_over_C = X - FieldElement(3);

    RingElement A2 = -(A1 * B1) * FieldElement(2) + B1 * B1 * FieldElement(2) + B1 * FieldElement(2) -
                     B2 * FieldElement(4) + (cst(I, Rational(1)) + A1 + B1 * FieldElement(2)) * (X - FieldElement(2)) + cst(I, h);
    std::array<RingElement, 4> B{cst(I, Rational(1)), B1, B2, B3};
    RingElement B4(I);
    for (int p = 0; p < 4; ++p) B4 -= B[p] * ratio[p];
    RingElement Q4(I);
    for (int p = 0; p < 4; ++p) Q4 -= Q[p] * ratio[p];
    Q4 += cst(I, field_z() * field_disc(-1) * ModelConstants::inhomogeneity());

    std::array<RingElement, kGenerators> th;
    th[gen::A1] = A2 - A1 * A1;
    th[gen::B1] = B2 - B1 * B1;
    th[gen::B2] = B3 - B2 * B1;
    th[gen::B3] = B4 - B3 * B1;
    for (int p = 0; p < 4; ++p) th[gen::Q0 + p] = Q[p] * FieldElement(make_rational(1, 2)) + (p < 3 ? Q[p + 1] : Q4);
    th[gen::R1] = R1 * (thetaC_over_C + FieldElement(make_rational(5, 2))) - A1 * R1 - B1 * R1 + R2;
    th[gen::R2] = R2 * (thetaC_over_C + FieldElement(make_rational(7, 2))) - B1 * R2;
    return th;
}

RingElement theta_with(const RingElement& e, const std::array<RingElement, kGenerators>& images) {
    RingElement r(e.basis(), e.weights());
    std::vector<Term> coef_part;
    coef_part.reserve(e.size());
    for (const auto& t : e.terms()) {
        FieldElement c = t.coef.theta();
        if (!c.is_zero()) coef_part.push_back(Term{t.mono, std::move(c)});
    }
    r += RingElement::from_terms(e.basis(), std::move(coef_part), e.weights());
    for (int i = 0; i < kGenerators; ++i) {
        if (e.degree_in(i) == 0) continue;
        RingElement d = partial_derive(e, i);
        r += d * images[i];
    }
    return r.with_weights(e.weights());
}

}  // namespace

const std::array<RingElement, kGenerators>& basis_images(Basis from) {
    static const std::array<RingElement, kGenerators> i_to_j = make_images_i_to_j();
    static const std::array<RingElement, kGenerators> j_to_i = make_images_j_to_i();
    return from == Basis::I ? i_to_j : j_to_i;
}

const std::array<RingElement, kGenerators>& theta_images(Basis b) {
    static const std::array<RingElement, kGenerators> th_i = make_theta_i();
    if (b == Basis::I) return th_i;
    static const std::array<RingElement, kGenerators> th_j = [] {
        std::array<RingElement, kGenerators> out;
        const auto& to_i = basis_images(Basis::J);
        for (int i = 0; i < kGenerators; ++i)
            out[i] = change_basis(theta_with(to_i[i], theta_images(Basis::I)), Basis::J);
        return out;
    }();
    return th_j;
}

RingElement theta_derive(const RingElement& e) { return theta_with(e, theta_images(e.basis())); }

RingElement cov_derive(const RingElement& e) {
    Weights w = e.weights();
    RingElement r = theta_derive(e);
    if (w.m != 0 || w.n != 0) {
        RingElement a1 = e.basis() == Basis::I ? RingElement::generator(Basis::I, gen::A1)
                                               : basis_images(Basis::I)[gen::A1];
        RingElement b1 = RingElement::generator(e.basis(), e.basis() == Basis::I ? gen::B1 : gen::u);
        RingElement conn = a1 * FieldElement(w.m) + b1 * FieldElement(w.n);
        r += e * conn;
    }
    r = r * field_z(-1);
    return r.with_weights(Weights{w.m - 1, w.n});
}

RingElement change_basis(const RingElement& e, Basis target) {
    if (e.basis() == target) return e;
    RingSubstitution ops{target, &basis_images(e.basis()), {}};
    if (e.is_zero()) return RingElement(target, e.weights());
    RingElement r = nested(e.terms(), 0, e.size(), 0, ops);
    return r.with_weights(e.weights());
}

RingElement partial_derive(const RingElement& e, int index) {
    if (index < 0 || index >= kGenerators) throw std::invalid_argument("unknown generator");
    std::vector<Term> out;
    Monomial unit = unit_monomial(index);
    for (const auto& t : e.terms()) {
        int k = exponent_of(t.mono, index);
        if (k == 0) continue;
        out.push_back(Term{t.mono - unit, t.coef * Rational(k)});
    }
    RingElement r(e.basis(), e.weights());
    r += RingElement::from_terms(e.basis(), std::move(out), e.weights());
    return r;
}

RingElement coefficient_in(const RingElement& e, int index, int k) {
    std::vector<Term> out;
    Monomial shift = unit_monomial(index) * static_cast<Monomial>(k);
    for (const auto& t : e.terms())
        if (exponent_of(t.mono, index) == k) out.push_back(Term{t.mono - shift, t.coef});
    return RingElement::from_terms(e.basis(), std::move(out), e.weights());
}

std::string serialize(const RingElement& e) {
    std::ostringstream os;
    os << "basis " << basis_name(e.basis()) << "\n";
    os << "weights " << e.weights().m << " " << e.weights().n << "\n";
    os << "terms " << e.size() << "\n";
    for (const auto& t : e.terms()) {
        Exponents x = unpack(t.mono);
        for (int i = 0; i < kGenerators; ++i) os << x[i] << " ";
        os << t.coef.serialize() << "\n";
    }
    return os.str();
}

RingElement parse_ring_element(const std::string& text) {
    std::istringstream is(text);
    std::string key, bname;
    auto expect = [&](const char* k) {
        if (!(is >> key) || key != k) throw std::invalid_argument(std::string("expected '") + k + "'");
    };
    expect("basis");
    is >> bname;
    Basis b;
    if (bname == "I") b = Basis::I;
    else if (bname == "J") b = Basis::J;
    else throw std::invalid_argument("unknown basis " + bname);
    Weights w;
    expect("weights");
    is >> w.m >> w.n;
    std::size_t n = 0;
    expect("terms");
    is >> n;
    if (!is) throw std::invalid_argument("bad header");
    std::vector<Term> terms;
    terms.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Exponents x{};
        for (int i = 0; i < kGenerators; ++i)
            if (!(is >> x[i])) throw std::invalid_argument("bad exponent line");
        std::string coef;
        if (!(is >> coef)) throw std::invalid_argument("missing coefficient");
        terms.push_back(Term{pack(x), FieldElement::parse(coef)});
    }
    return RingElement::from_terms(b, std::move(terms), w);
}

Series evaluate(const RingElement& e, const std::array<Series, kGenerators>& gens, int order2) {
    if (e.is_zero()) return Series(Var::z, order2);
    SeriesSubstitution ops{&gens, order2, {}};
    return nested(e.terms(), 0, e.size(), 0, ops).truncated(order2);
}

}  // namespace ehae
