#pragma once

#include "ehae/ring.hpp"

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace ehae {

struct Vertex {
    int g = 0;
    int h = 0;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// type 0: S     (m slot at both ends, weight -2S)
// type 1: S^z   (n slot at a, m slot at b, weight -S^z)
// type 2: S^zz  (n slot at both ends, weight -S^zz)
struct InnerEdge {
    int type = 0;
    int a = 0;
    int b = 0;
    friend auto operator<=>(const InnerEdge&, const InnerEdge&) = default;
};

// type 0: Delta (m slot), type 1: Delta^z (n slot)
struct OuterLeg {
    int type = 0;
    int v = 0;
    friend auto operator<=>(const OuterLeg&, const OuterLeg&) = default;
};

struct FeynmanGraph {
    std::vector<Vertex> vertices;
    std::vector<InnerEdge> inner;
    std::vector<OuterLeg> outer;

    // n_v (z-index slots) and m_v per vertex.
    void slots(std::vector<int>& n, std::vector<int>& m) const;
    bool connected() const;
    std::string to_string() const;
};

// Zero rows of the vertex-factor table.
bool vertex_nonzero(int g, int h, int n, int m);

// Conditions (connected, valence, nonvanishing, genus/boundary count).
bool satisfies_conditions(const FeynmanGraph& G, int g, int h);

// One representative per isomorphism class, in canonical form, sorted.
std::vector<FeynmanGraph> enumerate_graphs(int g, int h);

// Canonical key: minimum over vertex permutations.
std::vector<int> canonical_key(const FeynmanGraph& G);

// 2^{#S and S^zz self-loops} * |Aut|, Aut including identical-edge swaps.
Integer aut_order(const FeynmanGraph& G);

struct VertexFactorKey {
    int g = 0;
    int h = 0;
    int n = 0;
    int m = 0;
    friend auto operator<=>(const VertexFactorKey&, const VertexFactorKey&) = default;
};

// Returns F^{(g,h)}_n for the requested family (must be available).
using AmplitudeLookup = std::function<RingElement(int g, int h, int n)>;

RingElement vertex_factor(const VertexFactorKey& key, const AmplitudeLookup& amp, Basis b);

// F_FD = - sum_G F_G / #A_G, weights (0, 2g-2+h).
RingElement sum_feynman(int g, int h, const AmplitudeLookup& amp, Basis b);
// Same sum without any threading.
RingElement sum_feynman_serial(int g, int h, const AmplitudeLookup& amp, Basis b);

// Vertex factors needed by the diagrams of (g,h).
std::vector<VertexFactorKey> required_vertex_factors(int g, int h);

}  // namespace ehae
