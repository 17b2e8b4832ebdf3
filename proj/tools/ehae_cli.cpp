#include "golden_values.hpp"

#include "ehae/bps.hpp"
#include "ehae/cache.hpp"
#include "ehae/feynman.hpp"
#include "ehae/geometry.hpp"
#include "ehae/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ehae;
using json = nlohmann::json;

namespace {

struct RunConfig {
    std::string order = "16";  // z truncation, half-integers allowed
    int d_max = 20;
    int g_max = 0;
    int g = 0;
    int h = 0;
    std::string cache_dir;
    std::string out = "text";
    bool list = false;
    bool genus_two = false;
    std::string suite = "all";
};

constexpr int kGuard = 4;

int order2_of(const std::string& s) {
    Rational r = parse_rational(s);
    Rational twice = r * 2;
    if (!is_integer(twice) || sgn(r) < 0) throw CLI::ValidationError("--order", "must be a non-negative half-integer");
    return static_cast<int>(twice.get_num().get_si());
}

SolverOptions solver_options(const RunConfig& cfg) {
    int order2 = order2_of(cfg.order);
    if (order2 < cfg.d_max + 2 * kGuard)
        throw std::invalid_argument("--order " + cfg.order + " is below d_max/2 + " + std::to_string(kGuard));
    SolverOptions o;
    o.order2 = order2;
    o.d_max = cfg.d_max;
    o.genus_two = cfg.genus_two;
    return o;
}

AmplitudeCache open_cache(const RunConfig& cfg) {
    return AmplitudeCache(cfg.cache_dir.empty() ? AmplitudeCache::default_root() : std::filesystem::path(cfg.cache_dir));
}

std::string ratfn_factored(const RatFn& r) {
    if (r.is_zero()) return "0";
    Rational c = r.scalar();
    IntPoly num = r.num();
    for (auto& x : num) x *= c.get_num();
    IntPoly shifted(r.zexp() > 0 ? r.zexp() : 0, Integer(0));
    shifted.insert(shifted.end(), num.begin(), num.end());
    std::string out = "(" + poly_to_string(shifted) + ")";
    std::string den;
    Integer cd = c.get_den();
    if (cd != 1) den = cd.get_str();
    if (r.zexp() < 0) den += std::string(den.empty() ? "" : "*") + "z^" + std::to_string(-r.zexp());
    if (r.dexp() > 0)
        den += std::string(den.empty() ? "" : "*") + "(1-3125*z)" + (r.dexp() > 1 ? "^" + std::to_string(r.dexp()) : "");
    if (!den.empty()) out += "/(" + den + ")";
    return out;
}

std::string field_factored(const FieldElement& f) {
    if (f.is_zero()) return "0";
    std::string out;
    if (!f.even().is_zero()) out = ratfn_factored(f.even());
    if (!f.odd().is_zero()) out += std::string(out.empty() ? "" : " + ") + "sqrt(z)*" + ratfn_factored(f.odd());
    return out;
}

std::vector<std::string> row(const Series& s, int first, int last, int log_power = 0) {
    std::vector<std::string> v;
    for (int n = first; n <= last; ++n) v.push_back(s.coeff_int(n, log_power).get_str());
    return v;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
}

int cmd_periods(const RunConfig& cfg) {
    int order2 = order2_of(cfg.order);
    int top = order2 / 2;
    PeriodSet ps = compute_periods(std::max(2 * top + 4, 6));
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    rows.push_back({"omega0", row(ps.omega[0], 0, top)});
    for (int i = 1; i < 4; ++i)
        for (int k = 0; k < i; ++k)
            rows.push_back({"omega" + std::to_string(i) + " log^" + std::to_string(k), row(ps.omega[i], 0, top, k)});
    rows.push_back({"t-log(z)", row(ps.t_regular, 0, top)});
    rows.push_back({"z(q)", row(ps.z_of_q, 1, top + 1)});
    if (cfg.out == "json") {
        json j = json::object();
        for (const auto& [name, r] : rows) j[name] = r;
        std::cout << j.dump(2) << "\n";
    } else if (cfg.out == "csv") {
        std::cout << "series,n,coefficient\n";
        for (const auto& [name, r] : rows) {
            int first = name == "z(q)" ? 1 : 0;
            for (std::size_t i = 0; i < r.size(); ++i) std::cout << name << "," << first + i << "," << r[i] << "\n";
        }
    } else {
        for (const auto& [name, r] : rows) std::cout << name << ": " << join(r) << "\n";
    }
    return 0;
}

int cmd_graphs(const RunConfig& cfg) {
    auto graphs = enumerate_graphs(cfg.g, cfg.h);
    std::cout << graphs.size() << "\n";
    if (cfg.list)
        for (const auto& G : graphs) std::cout << G.to_string() << " " << aut_order(G).get_str() << "\n";
    return 0;
}

int cmd_solve(const RunConfig& cfg) {
    Solver solver(solver_options(cfg));
    AmplitudeCache cache = open_cache(cfg);
    solver.set_persistence(cache.persistence());
    solver.resolve(cfg.g, cfg.h);
    const auto& a = solver.store().ambiguity(cfg.g, cfg.h);
    const auto& prov = solver.store().provenance(cfg.g, cfg.h);
    FieldElement f = solver.ambiguity_function(cfg.g, cfg.h);
    std::vector<std::string> as;
    for (const auto& x : a) as.push_back(x.get_str());
    if (cfg.out == "json") {
        json j = {{"g", cfg.g}, {"h", cfg.h}, {"f", field_factored(f)}, {"a", as},
                  {"conditions", prov.conditions}, {"cache", cache.root().string()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "f^(" << cfg.g << "," << cfg.h << ") = " << field_factored(f) << "\n";
        std::cout << "a = " << join(as) << "\n";
        std::cout << "conditions: ";
        for (std::size_t i = 0; i < prov.conditions.size(); ++i) std::cout << (i ? "; " : "") << prov.conditions[i];
        std::cout << "\ncache: " << cache.root().string() << "\n";
    }
    return 0;
}

int cmd_bps(const RunConfig& cfg) {
    Solver solver(solver_options(cfg));
    AmplitudeCache cache = open_cache(cfg);
    solver.set_persistence(cache.persistence());
    const BpsColumn& col = solver.bps(cfg.g_max, cfg.h);
    int bad = first_non_integral(col);
    if (bad >= 0)
        std::cerr << "warning: n_" << bad << "^(" << cfg.g_max << "," << cfg.h << ") is not an integer\n";
    if (cfg.out == "json") {
        json entries = json::array();
        for (const auto& [d, n] : col) entries.push_back({{"d", d}, {"n", n.get_str()}});
        json j = {{"g", cfg.g_max}, {"h", cfg.h}, {"entries", entries}};
        std::cout << j.dump() << "\n";
    } else if (cfg.out == "csv") {
        std::cout << "d,n\n";
        for (const auto& [d, n] : col) std::cout << d << "," << n.get_str() << "\n";
    } else {
        std::cout << "n_d^(" << cfg.g_max << "," << cfg.h << ")\n";
        for (const auto& [d, n] : col) std::cout << d << " " << n.get_str() << "\n";
    }
    return bad >= 0 ? 3 : 0;
}

struct Report {
    int failed = 0;
    void line(bool ok, const std::string& what, double secs) {
        if (!ok) ++failed;
        std::ostringstream t;
        t.precision(3);
        t << std::fixed << secs;
        std::cout << (ok ? "PASS " : "FAIL ") << what << "  [" << t.str() << "s]" << std::endl;
    }
};

template <class F>
void timed(Report& rep, const std::string& name, F check) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = check(detail);
    } catch (const std::exception& e) {
        detail = std::string("error: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.line(ok, name + (detail.empty() ? "" : " " + detail), dt);
}

int cmd_verify(const RunConfig& cfg) {
    Report rep;
    auto want = [&](const std::string& s) { return cfg.suite == "all" || cfg.suite == s; };
    if (want("cache")) {
        AmplitudeCache cache = open_cache(cfg);
        for (const auto& name : cache.audit())
            rep.line(false, "cache entry " + name + " is corrupt", 0);
        if (cache.audit().empty()) rep.line(true, "cache " + cache.root().string(), 0);
    }
    if (want("graphs"))
        for (const auto& [gh, count] : golden::graph_counts())
            timed(rep, "graphs (" + std::to_string(gh.first) + "," + std::to_string(gh.second) + ") = " +
                           std::to_string(count),
                  [&, gh = gh, count = count](std::string& d) {
                      auto n = enumerate_graphs(gh.first, gh.second).size();
                      d = "got " + std::to_string(n);
                      return static_cast<int>(n) == count;
                  });
    if (want("periods"))
        timed(rep, "period heads", [](std::string&) {
            PeriodSet ps = compute_periods(32);
            return ps.omega[0].coeff_int(1) == 120 && ps.omega[0].coeff_int(2) == 113400 &&
                   ps.omega[1].coeff_int(1) == 770 && ps.omega[1].coeff_int(2) == 810225 &&
                   ps.t_regular.coeff_int(3) == make_rational(3225308000, 3) && ps.z_of_q.coeff_int(1) == 1 &&
                   ps.z_of_q.coeff_int(2) == -770 && ps.z_of_q.coeff_int(3) == 171525;
        });
    bool need_solver = want("residuals") || want("reference") || want("tables");
    if (!need_solver) return rep.failed ? 1 : 0;
    Solver solver(solver_options(cfg));
    if (want("residuals"))
        for (const auto& [g, h] : in_scope_list())
            timed(rep, "residuals (" + std::to_string(g) + "," + std::to_string(h) + ")", [&, g = g, h = h](std::string& d) {
                auto res = solver.pde_residual(g, h);
                std::size_t nz = 0;
                for (const auto& r : res) nz += r.size();
                d = nz ? std::to_string(nz) + " surviving terms" : "";
                return nz == 0;
            });
    if (want("reference")) {
        timed(rep, "reference P(0,4)", [&](std::string& d) {
            std::ifstream in(std::string(EHAE_DATA_DIR) + "/p04_reference.txt");
            if (!in) {
                d = "reference data not found";
                return false;
            }
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            RingElement ref = parse_ring_element(text);
            solver.resolve(0, 4);
            RingElement ours = change_basis(solver.store().normalized(0, 4, 0), Basis::J);
            RingElement diff = ours - ref;
            std::size_t nonconst = 0;
            for (const auto& t : diff.terms())
                if (t.mono != 0) ++nonconst;
            d = std::to_string(ref.size()) + " monomials, " + std::to_string(diff.size()) + " differ";
            if (!diff.is_zero()) d += " (" + std::to_string(nonconst) + " non-constant)";
            return diff.is_zero();
        });
        timed(rep, "reference f(0,4)", [&](std::string& d) {
            IntPoly num;
            for (const auto& s : golden::f04_numerator()) num.push_back(Integer(s));
            FieldElement expected(RatFn::make(make_rational(1, 10000), 0, num, 2));
            FieldElement ours = solver.ambiguity_function(0, 4);
            d = "computed " + field_factored(ours);
            return ours == expected;
        });
    }
    if (want("tables"))
        for (const auto& col : golden::bps_columns())
            timed(rep, "table (" + std::to_string(col.g) + "," + std::to_string(col.h) + ")", [&](std::string& d) {
                const BpsColumn& got = solver.bps(col.g, col.h);
                for (std::size_t i = 0; i < col.n.size(); ++i) {
                    int D = col.d_first + 2 * static_cast<int>(i);
                    auto it = got.find(D);
                    if (it == got.end() || it->second != Rational(Integer(col.n[i]))) {
                        d = "first mismatch at d=" + std::to_string(D);
                        return false;
                    }
                }
                return true;
            });
    return rep.failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open and closed amplitudes of the real quintic from the extended anomaly equation"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--order", cfg.order, "truncation order in z (half-integers allowed)");
        sub->add_option("--cache", cfg.cache_dir, std::string("cache directory (default $") + kCacheEnv + " or ./ehae-cache)");
        sub->add_option("--out", cfg.out, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--dmax", cfg.d_max, "largest degree d")->check(CLI::PositiveNumber);
        sub->add_flag("--genus-two", cfg.genus_two, "allow closed genus-two fixing and (2,1)");
    };

    auto* periods = app.add_subcommand("periods", "print period and mirror-map coefficients");
    add_common(periods);

    auto* graphs = app.add_subcommand("graphs", "count (or list) diagrams of a given (g,h)");
    graphs->add_option("--g", cfg.g)->required();
    graphs->add_option("--h", cfg.h)->required();
    graphs->add_flag("--list", cfg.list, "print each class with its symmetry factor");

    auto* solve = app.add_subcommand("solve", "resolve F^(g,h) and print its ambiguity");
    add_common(solve);
    solve->add_option("--g", cfg.g)->required();
    solve->add_option("--h", cfg.h)->required();

    auto* bps = app.add_subcommand("bps", "BPS numbers n_d^(gmax,h)");
    add_common(bps);
    bps->add_option("--h", cfg.h)->required();
    bps->add_option("--gmax", cfg.g_max, "genus of the printed column");

    auto* verify = app.add_subcommand("verify", "run the golden checks");
    add_common(verify);
    verify->add_option("--suite", cfg.suite)
        ->check(CLI::IsMember({"all", "graphs", "periods", "residuals", "reference", "tables", "cache"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*periods) return cmd_periods(cfg);
        if (*graphs) return cmd_graphs(cfg);
        if (*solve) return cmd_solve(cfg);
        if (*bps) return cmd_bps(cfg);
        if (*verify) return cmd_verify(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
