#pragma once

#include "ehae/bps.hpp"
#include "ehae/feynman.hpp"
#include "ehae/geometry.hpp"
#include "ehae/ring.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ehae {

using GH = std::pair<int, int>;

// Families given in closed form: (0,0) from n=3, (1,0) from n=1, (0,1) from
// n=2, (0,2) from n=1.
bool is_base_family(int g, int h);
int base_family_start(int g, int h);

// In-scope open amplitudes: h >= 1, 2g+h-2 <= 4, not a base family, and not
// (2,1). With `genus_two` the closed (2,0) and the open (2,1) are accepted.
bool in_scope(int g, int h, bool genus_two = false);
std::vector<GH> in_scope_list();

// Non-base (g',h') whose full amplitude is needed by the diagrams of (g,h),
// including (g,h), in resolution order.
std::vector<GH> dependency_closure(int g, int h);

// Resolution order: increasing 2g+h-2, then increasing h.
bool resolution_less(const GH& a, const GH& b);

struct AmbiguityAnsatz {
    int g = 0;
    int h = 0;
    std::vector<FieldElement> basis;  // z^i / Delta^{2g-2+h}, times sqrt z for odd h
    std::size_t unknowns() const { return basis.size(); }
    FieldElement combine(const std::vector<Rational>& a) const;
};

AmbiguityAnsatz make_ansatz(int g, int h);

struct Provenance {
    std::vector<std::string> conditions;
    bool from_cache = false;
};

// F^{(g,h)}_n in one basis, n >= the family start; derived entries come from
// cov_derive and are memoized.
class AmplitudeStore {
public:
    explicit AmplitudeStore(Basis b = Basis::J);

    Basis basis() const { return basis_; }
    bool resolved(int g, int h) const;
    // Full F^{(g,h)} (n = 0) for a non-base family, with its ambiguity data.
    void set_full(int g, int h, RingElement full, std::vector<Rational> ambiguity, Provenance prov);
    const RingElement& amplitude(int g, int h, int n);
    // P_n = (z^3 C)^{g+h-1} z^{h/2} z^n F_n; zero when 2g-2+h+n <= 0.
    RingElement normalized(int g, int h, int n);
    const std::vector<Rational>& ambiguity(int g, int h) const;
    const Provenance& provenance(int g, int h) const;
    std::vector<GH> resolved_families() const;
    AmplitudeLookup lookup();

private:
    Basis basis_;
    std::map<std::tuple<int, int, int>, RingElement> amp_;
    std::map<GH, std::vector<Rational>> ambiguity_;
    std::map<GH, Provenance> provenance_;
};

// F = P / ((z^3 C)^{g+h-1} z^{h/2}).
FieldElement normalization_factor(int g, int h, int n);

// Hooks used by the solver to reuse and persist resolved amplitudes.
struct AmplitudePersistence {
    // Returns P^{(g,h)}_0 and the ambiguity coefficients if available.
    std::function<std::optional<std::pair<RingElement, std::vector<Rational>>>(int g, int h)> load;
    std::function<void(int g, int h, const RingElement& p0, const std::vector<Rational>& a)> save;
};

struct SolverOptions {
    int order2 = 32;        // series truncation in half units of z
    int d_max = 20;         // largest p-exponent needed
    bool genus_two = false; // allow the closed (2,0) fixing and (2,1)
};

class Solver {
public:
    explicit Solver(SolverOptions opt);

    const SolverOptions& options() const { return opt_; }
    const PeriodSet& periods() const { return periods_; }
    const GeneratorSeries& generators() const { return gens_; }
    AmplitudeStore& store() { return store_; }
    void set_persistence(AmplitudePersistence p) { persist_ = std::move(p); }

    // Resolves the dependency closure of (g,h).
    void resolve(int g, int h);

    // F_A^{(g,h)} as a series in q on the half grid; the p^D coefficient is
    // the q^{D/2} one. Covers D <= d_max.
    const Series& a_model(int g, int h);
    // A-model image of F_FD + sum a_i b_i split into its parts.
    Series a_model_of(const RingElement& full, int g, int h);
    Series a_model_of(const FieldElement& f, int g, int h);

    // BPS column of (g,h) through d_max (resolving whatever is needed).
    const BpsColumn& bps(int g, int h);
    const BpsTable& bps_table() const { return bps_; }

    // Six residuals of the polynomial anomaly equations for P^{(g,h)} (J basis).
    std::vector<RingElement> pde_residual(int g, int h);

    FieldElement ambiguity_function(int g, int h);

private:
    SolverOptions opt_;
    PeriodSet periods_;
    GeneratorSeries gens_;
    AmplitudeStore store_;
    AmplitudePersistence persist_;
    std::map<GH, Series> a_model_;
    BpsTable bps_;
    int bps_depth_ = 0;

    void solve_one(int g, int h);
    std::vector<Rational> fix_ambiguity(int g, int h, const RingElement& fd, Provenance& prov);
    Series to_q(const Series& zseries, int g, int h) const;
};

// Exact Gaussian elimination; throws std::runtime_error if singular.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace ehae
