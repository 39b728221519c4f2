#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperdesign/decomposition.hpp"
#include "hyperdesign/gadgets.hpp"
#include "hyperdesign/integral.hpp"

namespace hd {

struct AbsorberMatch {
    VertexSet f;            // the ground r-set
    std::size_t negative;   // element index with sign -1
    std::size_t positive;   // element index with sign +1
};

/// How an absorber was assembled: the valuation, its expansion into signed
/// elements (one booster each), and the matchings M_f (one hinge each).
struct AbsorberStructure {
    IntegralValuation phi;
    VertexSet ground_fresh;          // vertices added for padding and for Phi
    std::vector<VertexSet> elements; // Phi+ then Phi-, with multiplicity
    std::vector<int> sign;
    std::vector<AbsorberMatch> matches;
    /// For each edge of L, the positive element left unmatched.
    std::vector<std::pair<VertexSet, std::size_t>> unmatched;
    std::size_t booster_vertices = 0;
    std::size_t hinge_vertices = 0;
};

struct Absorber {
    RootedGadget gadget;  // rooted at V(L) = 0..v(L)-1
    Hypergraph target;    // L
    int q = 0;
    CliqueFamily a1;      // decomposes A
    CliqueFamily a2;      // decomposes A + L
    AbsorberStructure structure;
};

/// Absorber for a K_q^r-divisible uniform L, assembled from an
/// edge-intersecting integral decomposition, orthogonal boosters and hinges.
Absorber build_absorber(const Hypergraph& l, int q);

struct AbsorberReport {
    bool roots_independent = false;
    bool a1_decomposes = false;
    bool a2_decomposes = false;
    bool edge_intersecting = false;
    bool partite_degenerate = false;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t layers = 0;
    std::size_t boosters = 0;
    std::size_t hinges = 0;
    bool ok() const { return roots_independent && a1_decomposes && a2_decomposes && edge_intersecting && partite_degenerate; }
};
AbsorberReport verify_absorber(const Absorber& a);

/// Writes gadget.txt (graph, annotations, a1, a2), target.txt and
/// manifest.txt into `dir`, creating it if needed.
void write_absorber_bundle(const std::string& dir, const Absorber& a);

/// Exhaustive omni-absorber for X: one private absorber per divisible
/// L inside X, each on its own fresh vertices.
struct OmniAbsorber {
    Hypergraph x;
    int q = 0;
    Hypergraph graph;                  // A, on V(X) plus fresh vertices
    std::vector<Hypergraph> divisible; // every K_q^r-divisible L inside X
    std::vector<CliqueFamily> a1;      // per divisible L
    std::vector<CliqueFamily> a2;
    std::vector<std::size_t> layer_count;
    CliqueFamily family;               // F_A: every clique used by some a1/a2

    /// Q_A(L) = a2(A_L) + a1(A_L') for every other L'. L must be a
    /// divisible subgraph of X.
    CliqueFamily decomposition_for(const Hypergraph& l) const;
    /// Largest number of F_A members containing a single edge of A + X.
    std::size_t refinement() const;
};

OmniAbsorber build_omni_absorber_exhaustive(const Hypergraph& x, int q, std::size_t edge_cap = 10);

struct OmniReport {
    std::size_t divisible_subgraphs = 0;
    std::size_t verified = 0;
    std::size_t refinement = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    bool ok() const { return verified == divisible_subgraphs; }
};
/// Checks Q_A(L) against A + L for every divisible L.
OmniReport verify_omni_absorber(const OmniAbsorber& omni);

}  // namespace hd
