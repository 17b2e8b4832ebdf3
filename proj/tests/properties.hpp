#pragma once

// Randomized invariants. Each check returns the number of failing cases and
// the first failure, so the unit tests and the acceptance run share them.

#include "generators.hpp"

#include "ehae/cache.hpp"
#include "ehae/geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace props {

using namespace ehae;
using gen_test::Gen;

struct Outcome {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first;
};

inline Outcome run(const std::string& name, int cases, std::uint64_t seed,
                   const std::function<std::string(Gen&, int)>& body) {
    Outcome o{name, cases, 0, {}};
    Gen rng(seed);
    for (int i = 0; i < cases; ++i) {
        std::string err;
        try {
            err = body(rng, i);
        } catch (const std::exception& e) {
            err = std::string("exception: ") + e.what();
        }
        if (!err.empty()) {
            if (!o.failures) o.first = "case " + std::to_string(i) + ": " + err;
            ++o.failures;
        }
    }
    return o;
}

inline const GeneratorSeries& series_at(int order2) {
    static const GeneratorSeries gs = compute_generator_series(compute_periods(order2));
    return gs;
}

inline Basis any_basis(Gen& g) { return g.coin() ? Basis::I : Basis::J; }

inline Outcome theta_leibniz(int cases, std::uint64_t seed) {
    return run("theta-Leibniz", cases, seed, [](Gen& g, int) -> std::string {
        Basis b = any_basis(g);
        RingElement x = g.ring(b, 3, 2), y = g.ring(b, 3, 2);
        RingElement lhs = theta_derive(x * y);
        RingElement rhs = theta_derive(x) * y + x * theta_derive(y);
        return lhs == rhs ? "" : "theta(xy) != theta(x)y + x theta(y) for " + serialize(x) + " * " + serialize(y);
    });
}

inline Outcome evaluate_commutes_with_theta(int cases, std::uint64_t seed) {
    return run("evaluate-theta", cases, seed, [](Gen& g, int) -> std::string {
        const int order2 = 24;
        const GeneratorSeries& gs = series_at(order2);
        Basis b = any_basis(g);
        RingElement x = g.ring(b, 3, 2);
        const auto& gens = b == Basis::I ? gs.I : gs.J;
        Series lhs = evaluate(theta_derive(x), gens, order2);
        Series rhs = evaluate(x, gens, order2).theta();
        int upto = std::min(lhs.order2(), rhs.order2());
        return lhs.equals_through(rhs, upto) ? "" : "evaluate(theta x) != theta(evaluate x) for " + serialize(x);
    });
}

inline Outcome basis_round_trip(int cases, std::uint64_t seed) {
    return run("I<->J round trip", cases, seed, [](Gen& g, int) -> std::string {
        Basis b = any_basis(g);
        Basis other = b == Basis::I ? Basis::J : Basis::I;
        RingElement x = g.ring(b, 4, 3);
        RingElement back = change_basis(change_basis(x, other), b);
        return back == x ? "" : "round trip changed " + serialize(x);
    });
}

inline Outcome mixed_partials(int cases, std::uint64_t seed) {
    return run("mixed partials", cases, seed, [](Gen& g, int) -> std::string {
        RingElement x = g.ring(any_basis(g), 5, 4);
        int i = g.uniform(0, kGenerators - 1), j = g.uniform(0, kGenerators - 1);
        RingElement a = partial_derive(partial_derive(x, i), j);
        RingElement c = partial_derive(partial_derive(x, j), i);
        return a == c ? "" : "d" + std::to_string(i) + "d" + std::to_string(j) + " differs on " + serialize(x);
    });
}

inline Outcome mirror_round_trip(int cases, std::uint64_t seed) {
    return run("mirror-map round trip", cases, seed, [](Gen& g, int) -> std::string {
        const int order2 = 24;
        static const PeriodSet ps = compute_periods(order2);
        int off = g.uniform(1, 4);
        int ord = g.uniform(off + 2, order2);
        Series f = g.coin() ? g.half_series(Var::z, off, ord) : g.series(Var::z, ord / 2).shifted(2);
        f = f.truncated(std::min(f.order2(), order2));
        if (f.is_zero()) return "";
        Series q = substitute(f, ps.z_of_q);
        Series back = substitute(q, ps.q_of_z);
        int upto = std::min(back.order2(), f.order2());
        return back.equals_through(f, upto) ? "" : "z -> q -> z changed " + f.to_string();
    });
}

inline Outcome bps_round_trip(int cases, std::uint64_t seed) {
    return run("BPS multi-cover round trip", cases, seed, [](Gen& g, int) -> std::string {
        int genus = g.uniform(0, 2);
        int h = g.uniform(0, 4);
        int d_max = g.uniform(4, 16);
        BpsTable table = g.bps_table(genus, h, d_max);
        std::map<int, Rational> fa = resum_bps(genus, h, d_max, table);
        BpsTable lower = table;
        lower.erase({genus, h});
        BpsColumn col = extract_bps(genus, h, d_max, lower, [&](int D) { return fa.at(D); });
        return col == table.at({genus, h}) ? "" : "extract(resum(n)) != n at (" + std::to_string(genus) + "," +
                                                       std::to_string(h) + ")";
    });
}

inline Outcome serialization_round_trip(int cases, std::uint64_t seed) {
    return run("serialization round trip", cases, seed, [](Gen& g, int i) -> std::string {
        RingElement x = g.ring(any_basis(g), 5, 5);
        std::string s = serialize(x);
        RingElement back = parse_ring_element(s);
        if (!(back == x) || !(back.weights() == x.weights())) return "ring text form does not round trip";
        std::vector<Rational> a;
        for (int k = g.uniform(0, 4); k > 0; --k) a.push_back(g.rational(100000));
        int gg = i % 2, hh = 1 + i % 5;
        auto [p, amb] = decode_entry(encode_entry(gg, hh, x, a), gg, hh);
        if (!(p == x) || amb != a) return "cache entry does not round trip";
        return "";
    });
}

// Series-level invariants.
inline Outcome series_ring_laws(int cases, std::uint64_t seed) {
    return run("series ring laws", cases, seed, [](Gen& g, int) -> std::string {
        int ord = g.uniform(3, 10);
        Series a = g.half_series(Var::z, g.uniform(-2, 2), 2 * ord);
        Series b = g.half_series(Var::z, g.uniform(-2, 2), 2 * ord);
        Series c = g.series(Var::z, ord);
        if (!(a * b).equals_through(b * a, std::min((a * b).order2(), (b * a).order2())))
            return "product not commutative";
        Series l = (a * b) * c, r = a * (b * c);
        if (!l.equals_through(r, std::min(l.order2(), r.order2()))) return "product not associative";
        Series t = (a * b).theta(), u = a.theta() * b + a * b.theta();
        if (!t.equals_through(u, std::min(t.order2(), u.order2()))) return "theta not a derivation";
        if (!b.is_zero()) {
            Series q = (a / b) * b;
            int upto = std::min(q.order2(), a.order2());
            if (!q.equals_through(a, upto)) return "division does not invert multiplication";
        }
        return "";
    });
}

inline std::vector<Outcome> all(int cases, std::uint64_t seed) {
    return {
        theta_leibniz(cases, seed),
        evaluate_commutes_with_theta(cases, seed + 1),
        basis_round_trip(cases, seed + 2),
        mixed_partials(cases, seed + 3),
        mirror_round_trip(cases, seed + 4),
        bps_round_trip(cases, seed + 5),
        serialization_round_trip(cases, seed + 6),
    };
}

}  // namespace props
