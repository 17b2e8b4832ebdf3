#include "ehae/solver.hpp"

#include "ehae/propagators.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ehae {

namespace {

std::string gh_str(int g, int h) { return "(" + std::to_string(g) + "," + std::to_string(h) + ")"; }

RingElement base_amplitude(int g, int h, Basis b) {
    const int A1 = gen::A1, B1 = gen::B1;
    auto in_basis = [b](const RingElement& e) { return change_basis(e, b); };
    Weights w{-base_family_start(g, h), 2 * g - 2 + h};
    if (g == 0 && h == 0) return RingElement::constant(b, field_yukawa(), w);
    if (g == 1 && h == 0) {
        // (1/2z)[-A1 - 62/3 B1 - 31/6 + 3125 z / (6 Delta)]
        RingElement e = -RingElement::generator(Basis::I, A1) -
                        RingElement::generator(Basis::I, B1) * FieldElement(make_rational(62, 3)) +
                        RingElement::constant(Basis::I, FieldElement(make_rational(-31, 6)) +
                                                            field_X() * FieldElement(make_rational(1, 6)));
        e = e * field_z(-1) * FieldElement(make_rational(1, 2));
        return in_basis(e).with_weights(w);
    }
    if (g == 0 && h == 1) return disk_two_point(b).with_weights(w);
    if (g == 0 && h == 2) {
        RingElement dzz = disk_two_point(b);
        RingElement e = dzz * dzz * (field_yukawa().inverse() * FieldElement(make_rational(1, 2)));
        RingElement b1 = in_basis(RingElement::generator(Basis::I, B1));
        e -= b1 * (field_z(-1) * FieldElement(make_rational(1, 2)));
        e += RingElement::constant(b, field_disc(-1) * FieldElement(make_rational(75, 2)));
        return e.with_weights(w);
    }
    throw std::invalid_argument("no closed form for " + gh_str(g, h));
}

Rational rpow(const Rational& x, int n) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

bool is_base_family(int g, int h) {
    return (g == 0 && h <= 2) || (g == 1 && h == 0);
}

int base_family_start(int g, int h) {
    if (g == 0 && h == 0) return 3;
    if (g == 0 && h == 1) return 2;
    if (is_base_family(g, h)) return 1;
    return 0;
}

bool in_scope(int g, int h, bool genus_two) {
    if (g < 0 || h < 0 || is_base_family(g, h)) return false;
    if (g >= 2) return genus_two && g == 2 && h <= 1;
    return h >= 1 && 2 * g + h - 2 <= 4;
}

std::vector<GH> in_scope_list() {
    std::vector<GH> out;
    for (int g = 0; g <= 1; ++g)
        for (int h = 1; h <= 6; ++h)
            if (in_scope(g, h)) out.push_back({g, h});
    std::sort(out.begin(), out.end(), resolution_less);
    return out;
}

bool resolution_less(const GH& a, const GH& b) {
    int ea = 2 * a.first + a.second - 2, eb = 2 * b.first + b.second - 2;
    if (ea != eb) return ea < eb;
    return a.second < b.second;
}

std::vector<GH> dependency_closure(int g, int h) {
    std::set<GH> seen;
    std::function<void(int, int)> visit = [&](int a, int b) {
        if (is_base_family(a, b) || seen.count({a, b})) return;
        seen.insert({a, b});
        for (const auto& G : enumerate_graphs(a, b))
            for (const auto& v : G.vertices) visit(v.g, v.h);
    };
    visit(g, h);
    std::vector<GH> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), resolution_less);
    return out;
}

FieldElement AmbiguityAnsatz::combine(const std::vector<Rational>& a) const {
    if (a.size() != basis.size()) throw std::invalid_argument("ambiguity size mismatch");
    FieldElement f;
    for (std::size_t i = 0; i < a.size(); ++i) f += basis[i] * a[i];
    return f;
}

AmbiguityAnsatz make_ansatz(int g, int h) {
    AmbiguityAnsatz an;
    an.g = g;
    an.h = h;
    int e = 2 * g - 2 + h;
    int top = h % 2 == 0 ? 3 * g - 3 + 3 * h / 2 : 3 * g - 3 + (3 * h - 1) / 2;
    for (int i = 0; i <= top; ++i) {
        RatFn r = RatFn::make(1, i, {1}, e);
        an.basis.push_back(h % 2 == 0 ? FieldElement(r) : FieldElement(RatFn(), r));
    }
    return an;
}

FieldElement normalization_factor(int g, int h, int n) {
    int k = g + h - 1;
    Rational c = k >= 0 ? rpow(5, k) : Rational(Rational(1) / rpow(5, -k));
    RatFn r = RatFn::make(c, n + h / 2, {1}, k);
    return h % 2 == 0 ? FieldElement(r) : FieldElement(RatFn(), r);
}

AmplitudeStore::AmplitudeStore(Basis b) : basis_(b) {}

bool AmplitudeStore::resolved(int g, int h) const {
    return is_base_family(g, h) || amp_.count({g, h, 0});
}

void AmplitudeStore::set_full(int g, int h, RingElement full, std::vector<Rational> ambiguity, Provenance prov) {
    if (full.basis() != basis_ && !full.is_zero()) full = change_basis(full, basis_);
    amp_[{g, h, 0}] = full.with_weights(Weights{0, 2 * g - 2 + h});
    ambiguity_[{g, h}] = std::move(ambiguity);
    provenance_[{g, h}] = std::move(prov);
}

const RingElement& AmplitudeStore::amplitude(int g, int h, int n) {
    auto key = std::make_tuple(g, h, n);
    auto it = amp_.find(key);
    if (it != amp_.end()) return it->second;
    int start = base_family_start(g, h);
    if (n < start) throw std::invalid_argument("F_" + std::to_string(n) + " of " + gh_str(g, h) + " is not defined");
    if (n == start && is_base_family(g, h)) return amp_[key] = base_amplitude(g, h, basis_);
    if (n == 0) throw std::logic_error("unresolved dependency " + gh_str(g, h));
    RingElement prev = amplitude(g, h, n - 1);
    return amp_[key] = cov_derive(prev);
}

RingElement AmplitudeStore::normalized(int g, int h, int n) {
    if (2 * g - 2 + h + n <= 0) return RingElement(basis_);
    return amplitude(g, h, n) * normalization_factor(g, h, n);
}

const std::vector<Rational>& AmplitudeStore::ambiguity(int g, int h) const {
    auto it = ambiguity_.find({g, h});
    if (it == ambiguity_.end()) throw std::invalid_argument("no ambiguity for " + gh_str(g, h));
    return it->second;
}

const Provenance& AmplitudeStore::provenance(int g, int h) const {
    auto it = provenance_.find({g, h});
    if (it == provenance_.end()) throw std::invalid_argument("no record for " + gh_str(g, h));
    return it->second;
}

std::vector<GH> AmplitudeStore::resolved_families() const {
    std::vector<GH> out;
    for (const auto& [k, v] : ambiguity_) out.push_back(k);
    std::sort(out.begin(), out.end(), resolution_less);
    return out;
}

AmplitudeLookup AmplitudeStore::lookup() {
    return [this](int g, int h, int n) { return amplitude(g, h, n); };
}

std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    std::size_t n = b.size();
    if (a.size() != n) throw std::invalid_argument("non-square system");
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) throw std::runtime_error("singular ambiguity system");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

Solver::Solver(SolverOptions opt)
    : opt_(opt), periods_(compute_periods(opt.order2)), gens_(compute_generator_series(periods_)) {
    if (opt_.d_max < 1) throw std::invalid_argument("d_max must be positive");
    if (opt_.order2 <= opt_.d_max) throw std::invalid_argument("truncation order too small for d_max");
}

void Solver::resolve(int g, int h) {
    if (store_.resolved(g, h)) return;
    if (!in_scope(g, h, opt_.genus_two)) {
        if (g == 2 && h <= 1)
            throw std::invalid_argument(gh_str(g, h) + " needs the closed genus-two fixing; enable it explicitly");
        throw std::invalid_argument(gh_str(g, h) + " is outside the supported range");
    }
    for (const auto& [a, b] : dependency_closure(g, h))
        if (!store_.resolved(a, b)) solve_one(a, b);
}

void Solver::solve_one(int g, int h) {
    if (persist_.load) {
        if (auto hit = persist_.load(g, h)) {
            FieldElement inv = normalization_factor(g, h, 0).inverse();
            RingElement full = hit->first * inv;
            Provenance prov;
            prov.from_cache = true;
            prov.conditions.push_back("loaded from cache");
            store_.set_full(g, h, std::move(full), std::move(hit->second), std::move(prov));
            return;
        }
    }
    RingElement fd = sum_feynman(g, h, store_.lookup(), store_.basis());
    Provenance prov;
    std::vector<Rational> a = fix_ambiguity(g, h, fd, prov);
    FieldElement f = make_ansatz(g, h).combine(a);
    RingElement full = fd + RingElement::constant(store_.basis(), f, fd.weights());
    store_.set_full(g, h, full, a, prov);
    if (persist_.save) persist_.save(g, h, store_.normalized(g, h, 0), a);
}

Series Solver::to_q(const Series& zs, int g, int h) const {
    Series s = zs * periods_.omega[0].pow(static_cast<long>(2 * g + h - 2));
    s = s.normalized();
    if (s.is_zero()) return Series(Var::q, s.order2());
    if (s.valuation2() < 0) throw SeriesError("A-model expansion of " + gh_str(g, h) + " has negative powers");
    Series q = substitute(s, gens_.z_of_q);
    if (q.order2() <= opt_.d_max)
        throw SeriesError("truncation too small for " + gh_str(g, h) + ": known through q^" +
                          std::to_string(q.order2()) + "/2, need p^" + std::to_string(opt_.d_max) +
                          "; raise the order");
    return q;
}

Series Solver::a_model_of(const RingElement& full, int g, int h) {
    const auto& gens = full.basis() == Basis::J ? gens_.J : gens_.I;
    return to_q(evaluate(full, gens, opt_.order2), g, h);
}

Series Solver::a_model_of(const FieldElement& f, int g, int h) { return to_q(f.expand(opt_.order2), g, h); }

const Series& Solver::a_model(int g, int h) {
    auto it = a_model_.find({g, h});
    if (it != a_model_.end()) return it->second;
    Series fa;
    if (is_base_family(g, h)) {
        // d^n/dt^n F_A = omega0^{2g+h-2} (dz/dt)^n F_n, integrated n times in t
        int n = base_family_start(g, h);
        const auto& gens = store_.basis() == Basis::J ? gens_.J : gens_.I;
        Series zs = evaluate(store_.amplitude(g, h, n), gens, opt_.order2);
        Series dzdt = gens_.theta_t.inverse().shifted(2);
        zs = zs * dzdt.pow(static_cast<long>(n));
        Series d = to_q(zs, g, h);
        std::vector<Rational> c(d.order2());
        for (int D = 1; D < d.order2(); ++D) {
            Rational x = d.coeff(D);
            if (sgn(x) != 0) c[D] = x / rpow(make_rational(D, 2), n);
        }
        fa = Series::from_half_grid(Var::q, 0, std::move(c), d.order2());
    } else {
        resolve(g, h);
        fa = a_model_of(store_.amplitude(g, h, 0), g, h);
    }
    return a_model_.emplace(GH{g, h}, std::move(fa)).first->second;
}

const BpsColumn& Solver::bps(int g, int h) {
    auto it = bps_.find({g, h});
    if (it != bps_.end()) return it->second;
    for (int gp = 0; gp < g; ++gp) bps(gp, h);
    const Series& fa = a_model(g, h);
    BpsColumn col = extract_bps(g, h, opt_.d_max, fa, bps_);
    return bps_.emplace(GH{g, h}, std::move(col)).first->second;
}

std::vector<Rational> Solver::fix_ambiguity(int g, int h, const RingElement& fd, Provenance& prov) {
    AmbiguityAnsatz an = make_ansatz(g, h);
    std::size_t nun = an.unknowns();
    bool closed = h == 0;
    if (closed && g != 2) throw std::invalid_argument("closed-sector fixing only implemented at genus two");
    for (int gp = 0; gp < g; ++gp) bps(gp, h);

    // Highest D used by the vanishing conditions.
    bool constant_row = h % 2 == 0;
    int rows_from_d = static_cast<int>(nun) - (constant_row ? 1 : 0);
    int first_d = h % 2 == 0 ? 2 : 1;
    int last_d = first_d + 2 * (rows_from_d - 1);
    if (last_d > opt_.d_max) throw SeriesError("d_max too small to fix the ambiguity of " + gh_str(g, h));

    Series fa_fd = a_model_of(fd, g, h);
    BpsColumn n_fd = extract_bps(g, h, last_d, fa_fd, bps_);
    // Linear parts: lower-genus columns are already accounted for in n_fd.
    BpsTable empty_lower;
    for (int gp = 0; gp < g; ++gp) empty_lower[{gp, h}] = {};
    std::vector<Series> fa_b;
    std::vector<BpsColumn> n_b;
    for (const auto& b : an.basis) {
        fa_b.push_back(a_model_of(b, g, h));
        n_b.push_back(extract_bps(g, h, last_d, fa_b.back(), empty_lower));
    }

    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    if (constant_row) {
        std::vector<Rational> row;
        for (const auto& s : fa_b) row.push_back(s.coeff(0));
        rows.push_back(row);
        Rational target = closed ? make_rational(ModelConstants::euler_characteristic, 5760) : Rational(0);
        rhs.push_back(target - fa_fd.coeff(0));
        prov.conditions.push_back(closed ? "F_A constant term = " + to_string(target) : "F_A constant term = 0");
    }
    for (int D = first_d; D <= last_d; D += 2) {
        std::vector<Rational> row;
        for (const auto& c : n_b) row.push_back(c.at(D));
        rows.push_back(row);
        rhs.push_back(-n_fd.at(D));
        prov.conditions.push_back("n_" + std::to_string(D) + " = 0");
    }
    return solve_linear(std::move(rows), std::move(rhs));
}

FieldElement Solver::ambiguity_function(int g, int h) {
    if (g == 0 && h == 2) return field_disc(-1) * FieldElement(make_rational(75, 2));
    resolve(g, h);
    return make_ansatz(g, h).combine(store_.ambiguity(g, h));
}

std::vector<RingElement> Solver::pde_residual(int g, int h) {
    resolve(g, h);
    auto P = [&](int a, int b, int n) {
        if (a < 0 || b < 0) return RingElement(Basis::J);
        if (!is_base_family(a, b)) resolve(a, b);
        return change_basis(store_.normalized(a, b, n), Basis::J);
    };
    RingElement p = P(g, h, 0);
    RingElement y = h >= 1 ? P(g, h - 1, 1) : RingElement(Basis::J);
    auto excluded = [](int a, int b) { return a == 0 && b <= 1; };
    RingElement rhs(Basis::J);
    for (int g1 = 0; g1 <= g; ++g1)
        for (int h1 = 0; h1 <= h; ++h1) {
            int g2 = g - g1, h2 = h - h1;
            if (excluded(g1, h1) || excluded(g2, h2)) continue;
            rhs += P(g1, h1, 1) * P(g2, h2, 1);
        }
    if (g >= 1) rhs += P(g - 1, h, 2);
    rhs = rhs * FieldElement(make_rational(-1, 2));
    if (h >= 1) {
        RingElement c = RingElement::generator(Basis::J, gen::u) * RingElement::generator(Basis::J, gen::Q0) -
                        RingElement::generator(Basis::J, gen::Q1);
        rhs += c * y;
    }
    if (rhs.degree_in(gen::u) > 2 || y.degree_in(gen::u) > 1)
        throw std::logic_error("anomaly right-hand side of " + gh_str(g, h) + " has unexpected u-degree");
    auto part = [](const RingElement& e, int k) { return coefficient_in(e, gen::u, k); };
    RingElement W0 = part(rhs, 0), W1 = part(rhs, 1), W2 = part(rhs, 2);
    RingElement Y0 = part(y, 0), Y1 = part(y, 1);
    std::vector<RingElement> res;
    res.push_back(partial_derive(p, gen::u));
    res.push_back(partial_derive(p, gen::m1) - Y0);
    res.push_back(partial_derive(p, gen::m2) - Y1);
    res.push_back(partial_derive(p, gen::v1) - W0);
    res.push_back(partial_derive(p, gen::v2) + W1 - W2 * field_X());
    res.push_back(partial_derive(p, gen::v3) + W2);
    return res;
}

}  // namespace ehae
