#include "ehae/feynman.hpp"

#include "ehae/geometry.hpp"
#include "ehae/propagators.hpp"


#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ehae {

void FeynmanGraph::slots(std::vector<int>& n, std::vector<int>& m) const {
    n.assign(vertices.size(), 0);
    m.assign(vertices.size(), 0);
    for (const auto& e : inner) {
        if (e.type == 2) {
            ++n[e.a];
            ++n[e.b];
        } else if (e.type == 0) {
            ++m[e.a];
            ++m[e.b];
        } else {
            ++n[e.a];
            ++m[e.b];
        }
    }
    for (const auto& l : outer) {
        if (l.type == 1) ++n[l.v];
        else ++m[l.v];
    }
}

bool FeynmanGraph::connected() const {
    std::vector<int> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : inner) parent[find(e.a)] = find(e.b);
    int root = find(0);
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (find(static_cast<int>(i)) != root) return false;
    return true;
}

std::string FeynmanGraph::to_string() const {
    static const char* inner_names[] = {"S", "Sz", "Szz"};
    static const char* outer_names[] = {"D", "Dz"};
    std::ostringstream os;
    os << "V[";
    for (std::size_t i = 0; i < vertices.size(); ++i) os << (i ? " " : "") << "(" << vertices[i].g << "," << vertices[i].h << ")";
    os << "] E[";
    for (std::size_t i = 0; i < inner.size(); ++i)
        os << (i ? " " : "") << inner_names[inner[i].type] << ":" << inner[i].a << (inner[i].type == 1 ? ">" : "-") << inner[i].b;
    os << "] L[";
    for (std::size_t i = 0; i < outer.size(); ++i) os << (i ? " " : "") << outer_names[outer[i].type] << ":" << outer[i].v;
    os << "]";
    return os.str();
}

bool vertex_nonzero(int g, int h, int n, int m) {
    if (g == 0 && h == 0) return n >= 3;
    if (g == 0 && h == 1) return n >= 2;
    if ((g == 0 && h == 2) || (g == 1 && h == 0)) return n + m >= 1;
    return true;
}

bool satisfies_conditions(const FeynmanGraph& G, int g, int h) {
    if (G.vertices.empty() || !G.connected()) return false;
    std::vector<int> n, m;
    G.slots(n, m);
    int sum_g = 0, sum_h = 0;
    for (std::size_t i = 0; i < G.vertices.size(); ++i) {
        const auto& v = G.vertices[i];
        if (n[i] + m[i] <= 0) return false;
        if (!vertex_nonzero(v.g, v.h, n[i], m[i])) return false;
        sum_g += v.g;
        sum_h += v.h;
    }
    int ein = static_cast<int>(G.inner.size());
    int nv = static_cast<int>(G.vertices.size());
    return sum_g + ein - nv + 1 == g && sum_h + static_cast<int>(G.outer.size()) == h;
}

namespace {

void normalize_edge(InnerEdge& e) {
    if (e.type != 1 && e.a > e.b) std::swap(e.a, e.b);
}

// Graph with vertex i relabelled perm[i]; edges and legs sorted.
FeynmanGraph relabel(const FeynmanGraph& G, const std::vector<int>& perm) {
    FeynmanGraph r;
    r.vertices.resize(G.vertices.size());
    for (std::size_t i = 0; i < G.vertices.size(); ++i) r.vertices[perm[i]] = G.vertices[i];
    for (auto e : G.inner) {
        e.a = perm[e.a];
        e.b = perm[e.b];
        normalize_edge(e);
        r.inner.push_back(e);
    }
    for (auto l : G.outer) {
        l.v = perm[l.v];
        r.outer.push_back(l);
    }
    std::sort(r.inner.begin(), r.inner.end());
    std::sort(r.outer.begin(), r.outer.end());
    return r;
}

std::vector<int> encode(const FeynmanGraph& G) {
    std::vector<int> k;
    k.reserve(2 * G.vertices.size() + 3 * G.inner.size() + 2 * G.outer.size() + 3);
    k.push_back(static_cast<int>(G.vertices.size()));
    for (const auto& v : G.vertices) {
        k.push_back(v.g);
        k.push_back(v.h);
    }
    k.push_back(static_cast<int>(G.inner.size()));
    for (const auto& e : G.inner) {
        k.push_back(e.type);
        k.push_back(e.a);
        k.push_back(e.b);
    }
    k.push_back(static_cast<int>(G.outer.size()));
    for (const auto& l : G.outer) {
        k.push_back(l.type);
        k.push_back(l.v);
    }
    return k;
}

FeynmanGraph decode(const std::vector<int>& k) {
    FeynmanGraph G;
    std::size_t p = 0;
    int nv = k[p++];
    for (int i = 0; i < nv; ++i) {
        G.vertices.push_back(Vertex{k[p], k[p + 1]});
        p += 2;
    }
    int ne = k[p++];
    for (int i = 0; i < ne; ++i) {
        G.inner.push_back(InnerEdge{k[p], k[p + 1], k[p + 2]});
        p += 3;
    }
    int nl = k[p++];
    for (int i = 0; i < nl; ++i) {
        G.outer.push_back(OuterLeg{k[p], k[p + 1]});
        p += 2;
    }
    return G;
}

int min_valence(const Vertex& v) {
    if (v.g == 0 && v.h == 0) return 3;
    if (v.g == 0 && v.h == 1) return 2;
    return 1;
}

struct Enumerator {
    int g = 0, h = 0;
    std::set<std::vector<int>> classes;
    std::vector<Vertex> labels;
    std::vector<InnerEdge> candidates;
    FeynmanGraph cur;
    int ein = 0, eout = 0;
    std::vector<int> n, m;

    void run() {
        int maxv = std::max(2 * g - 2 + h, 1);
        std::vector<Vertex> all;
        for (int a = 0; a <= g; ++a)
            for (int b = 0; b <= h; ++b)
                if (!(a == g && b == h)) all.push_back(Vertex{a, b});
        for (int nv = 1; nv <= maxv; ++nv) {
            labels.assign(nv, Vertex{});
            choose_labels(all, 0, 0, nv);
        }
    }

    void choose_labels(const std::vector<Vertex>& all, int pos, std::size_t start, int nv) {
        if (pos == nv) {
            int sg = 0, sh = 0, need = 0;
            for (const auto& v : labels) {
                sg += v.g;
                sh += v.h;
                need += min_valence(v);
            }
            ein = g - 1 + nv - sg;
            eout = h - sh;
            if (ein < 0 || eout < 0) return;
            if (need > 2 * ein + eout) return;
            candidates.clear();
            for (int t : {0, 2})
                for (int a = 0; a < nv; ++a)
                    for (int b = a; b < nv; ++b) candidates.push_back(InnerEdge{t, a, b});
            for (int a = 0; a < nv; ++a)
                for (int b = 0; b < nv; ++b) candidates.push_back(InnerEdge{1, a, b});
            cur = FeynmanGraph{};
            cur.vertices = labels;
            choose_edges(0, 0);
            return;
        }
        for (std::size_t i = start; i < all.size(); ++i) {
            labels[pos] = all[i];
            choose_labels(all, pos + 1, i, nv);
        }
    }

    void choose_edges(int pos, std::size_t start) {
        if (pos == ein) {
            if (!cur.connected()) return;
            cur.outer.clear();
            cur.slots(n, m);
            // legs still required so every vertex reaches its minimum n
            int deficit = 0;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                const auto& v = labels[i];
                int req = (v.g == 0 && v.h == 0) ? 3 : (v.g == 0 && v.h == 1) ? 2 : 0;
                deficit += std::max(0, req - n[i]);
            }
            if (deficit > eout) return;
            choose_legs(0, eout);
            return;
        }
        for (std::size_t i = start; i < candidates.size(); ++i) {
            cur.inner.push_back(candidates[i]);
            choose_edges(pos + 1, i);
            cur.inner.pop_back();
        }
    }

    // distribute `left` legs over vertices >= v: a Delta legs and b Delta^z legs each
    void choose_legs(std::size_t v, int left) {
        if (v == labels.size()) {
            if (left != 0) return;
            std::vector<int> nn, mm;
            cur.slots(nn, mm);
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (nn[i] + mm[i] <= 0 || !vertex_nonzero(labels[i].g, labels[i].h, nn[i], mm[i])) return;
            classes.insert(canonical_key(cur));
            return;
        }
        for (int a = 0; a <= left; ++a)
            for (int b = 0; a + b <= left; ++b) {
                if (v + 1 == labels.size() && a + b != left) continue;
                for (int i = 0; i < a; ++i) cur.outer.push_back(OuterLeg{0, static_cast<int>(v)});
                for (int i = 0; i < b; ++i) cur.outer.push_back(OuterLeg{1, static_cast<int>(v)});
                choose_legs(v + 1, left - a - b);
                cur.outer.resize(cur.outer.size() - a - b);
            }
    }
};

std::mutex g_graph_cache_mutex;
std::map<std::pair<int, int>, std::vector<FeynmanGraph>> g_graph_cache;

}  // namespace

std::vector<int> canonical_key(const FeynmanGraph& G) {
    std::vector<int> perm(G.vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
        std::vector<int> k = encode(relabel(G, perm));
        if (best.empty() || k < best) best = std::move(k);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Integer aut_order(const FeynmanGraph& G) {
    std::vector<int> perm(G.vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> base = encode(relabel(G, perm));
    Integer count = 0;
    do {
        if (encode(relabel(G, perm)) == base) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    FeynmanGraph s = relabel(G, perm);
    // identical inner edges and identical legs can be permuted among themselves
    auto multiplicity_factor = [](const auto& sorted) {
        Integer f = 1;
        std::size_t i = 0;
        while (i < sorted.size()) {
            std::size_t j = i;
            while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
            f *= factorial(static_cast<unsigned>(j - i));
            i = j;
        }
        return f;
    };
    count *= multiplicity_factor(s.inner);
    count *= multiplicity_factor(s.outer);
    for (const auto& e : G.inner)
        if (e.a == e.b && e.type != 1) count *= 2;
    return count;
}

std::vector<FeynmanGraph> enumerate_graphs(int g, int h) {
    if (g < 0 || h < 0 || 2 * g - 2 + h < 1)
        throw std::invalid_argument("diagram set undefined for (g,h) = (" + std::to_string(g) + "," + std::to_string(h) +
                                    "): base amplitudes (0,0), (1,0), (0,1), (0,2) are given in closed form");
    {
        std::lock_guard<std::mutex> lock(g_graph_cache_mutex);
        auto it = g_graph_cache.find({g, h});
        if (it != g_graph_cache.end()) return it->second;
    }
    Enumerator en;
    en.g = g;
    en.h = h;
    en.run();
    std::vector<FeynmanGraph> out;
    out.reserve(en.classes.size());
    for (const auto& k : en.classes) out.push_back(decode(k));
    std::lock_guard<std::mutex> lock(g_graph_cache_mutex);
    g_graph_cache[{g, h}] = out;
    return out;
}

RingElement vertex_factor(const VertexFactorKey& key, const AmplitudeLookup& amp, Basis b) {
    if (key.n < 0 || key.m < 0) throw std::invalid_argument("negative slot count");
    if (!vertex_nonzero(key.g, key.h, key.n, key.m)) return RingElement(b);
    if (key.n == 0 && ((key.g == 0 && key.h == 2) || (key.g == 1 && key.h == 0))) {
        Rational base = key.g == 0 ? make_rational(-ModelConstants::branes, 2)
                                   : Rational(make_rational(ModelConstants::euler_characteristic, 24) - 1);
        return RingElement::constant(b, FieldElement(Rational(base * factorial(key.m - 1))));
    }
    RingElement f = amp(key.g, key.h, key.n);
    if (f.basis() != b) f = change_basis(f, b);
    Integer k = 1;
    int chi = 2 * key.g - 2 + key.h + key.n;
    for (int j = 0; j < key.m; ++j) k *= chi + j;
    if (k == 1) return f;
    return f * FieldElement(Rational(k));
}

std::vector<VertexFactorKey> required_vertex_factors(int g, int h) {
    std::set<VertexFactorKey> keys;
    for (const auto& G : enumerate_graphs(g, h)) {
        std::vector<int> n, m;
        G.slots(n, m);
        for (std::size_t i = 0; i < G.vertices.size(); ++i)
            keys.insert(VertexFactorKey{G.vertices[i].g, G.vertices[i].h, n[i], m[i]});
    }
    return {keys.begin(), keys.end()};
}

namespace {

RingElement graph_term(const FeynmanGraph& G, const std::map<VertexFactorKey, RingElement>& vf, const Propagators& p,
                       Basis b) {
    std::vector<const RingElement*> factors;
    RingElement edges = RingElement::constant(b, FieldElement(Rational(Rational(-1) / Rational(aut_order(G)))));
    for (const auto& e : G.inner) {
        if (e.type == 0) edges = edges * p.S * FieldElement(Rational(-2));
        else if (e.type == 1) edges = edges * -p.S_z;
        else edges = edges * -p.S_zz;
    }
    for (const auto& l : G.outer) edges = edges * (l.type == 0 ? p.Delta : p.Delta_z);
    std::vector<int> n, m;
    G.slots(n, m);
    for (std::size_t i = 0; i < G.vertices.size(); ++i)
        factors.push_back(&vf.at(VertexFactorKey{G.vertices[i].g, G.vertices[i].h, n[i], m[i]}));
    std::sort(factors.begin(), factors.end(), [](const RingElement* x, const RingElement* y) { return x->size() < y->size(); });
    RingElement r = edges;
    for (const RingElement* f : factors) {
        if (f->is_zero()) return RingElement(b);
        r = r * *f;
    }
    return r;
}

RingElement sum_impl(int g, int h, const AmplitudeLookup& amp, Basis b, bool parallel) {
    std::vector<FeynmanGraph> graphs = enumerate_graphs(g, h);
    std::map<VertexFactorKey, RingElement> vf;
    for (const auto& key : required_vertex_factors(g, h)) vf.emplace(key, vertex_factor(key, amp, b));
    Propagators p = propagators_in(b);
    std::vector<RingElement> terms(graphs.size());
    long count = static_cast<long>(graphs.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i) terms[i] = graph_term(graphs[i], vf, p, b);
    } else {
        for (long i = 0; i < count; ++i) terms[i] = graph_term(graphs[i], vf, p, b);
    }
    RingElement total(b);
    for (auto& t : terms) total += t;
    return total.with_weights(Weights{0, 2 * g - 2 + h});
}

}  // namespace

RingElement sum_feynman(int g, int h, const AmplitudeLookup& amp, Basis b) { return sum_impl(g, h, amp, b, true); }

RingElement sum_feynman_serial(int g, int h, const AmplitudeLookup& amp, Basis b) {
    return sum_impl(g, h, amp, b, false);
}

}  // namespace ehae
