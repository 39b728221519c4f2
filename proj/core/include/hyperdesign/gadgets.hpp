#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hyperdesign/decomposition.hpp"
#include "hyperdesign/hypergraph.hpp"

namespace hd {

/// One layer V_i of a layered gadget with its q-part coloring; part[k] is
/// the part of vertices[k].
struct Layer {
    VertexSet vertices;
    std::vector<int> part;
};

/// A hypergraph with a distinguished independent root set. `vertices` is
/// V(H) (isolated vertices allowed). `color` holds a part index per vertex
/// label, -1 where none is assigned.
struct RootedGadget {
    Hypergraph graph;
    VertexSet vertices;
    VertexSet roots;
    std::vector<int> color;
    std::vector<Layer> layers;

    VertexSet non_roots() const;
};

struct Booster {
    RootedGadget gadget;  // rooted at V(S)
    VertexSet target;     // S
    CliqueFamily on;      // decomposes B + S, S not used
    CliqueFamily off;     // decomposes B
    int prime = 0;
    bool orthogonal = false;
    int rounds = 0;
    /// Number of on-cliques meeting an edge of S, before each round and at the end.
    std::vector<int> history;
};

struct Hinge {
    RootedGadget gadget;  // rooted at V(S1) + V(S2)
    VertexSet s1;
    VertexSet s2;
    VertexSet edge;    // the shared r-edge e
    VertexSet middle;  // the intermediate clique
    CliqueFamily left;   // decomposes H + (S1 - e)
    CliqueFamily right;  // decomposes H + (S2 - e)
};

/// Smallest prime p with 2q-r < p < 2(2q-r).
int booster_prime(int q, int r);
/// (q-r) x q Cauchy matrix over F_p with x_i = i, y_j = q-r+j.
std::vector<std::vector<int>> cauchy_matrix(int q, int r, int p);
/// Every square submatrix has nonzero determinant mod p.
bool all_square_submatrices_invertible(const std::vector<std::vector<int>>& m, int p);

/// Anti-edge on f: q-r fresh vertices and C(f + x, r) minus f.
/// Fresh vertices are labeled after max(f).
RootedGadget build_anti_edge(const VertexSet& f, int q);
/// Fake-edge on f: fresh x_1..x_{q-r} plus one anti-edge on every
/// T in C(f + x, r) minus f.
RootedGadget build_fake_edge(const VertexSet& f, int q);

struct DegeneracyOrder {
    int degeneracy = 0;
    std::vector<Vertex> order;  // non-root vertices, first to last
};
/// Exact rooted degeneracy via smallest-last elimination.
DegeneracyOrder rooted_degeneracy_order(const RootedGadget& h);
int rooted_degeneracy(const RootedGadget& h);

/// Cauchy booster for the clique S = {0..q-1} in local labels. S is the
/// lexicographically least solution of Mv = a1, on = Q_{a2}, off = Q_{a1} - S.
/// Empty a1 means the zero vector, empty a2 the first unit vector.
Booster build_booster(int q, int r, std::vector<int> a1 = {}, std::vector<int> a2 = {});
/// Orthogonal booster by repeated splicing of boosters onto on-cliques that
/// contain at least two edges of S.
Booster build_orthogonal_booster(int q, int r, std::vector<int> a1 = {}, std::vector<int> a2 = {});

/// Hinge between S and on(B)[e] obtained from an orthogonal booster.
Hinge hinge_from_booster(const Booster& b, const VertexSet& e);
/// Independent hinge for S1 = {0..q-1} and S2 = {0..r-1} + {q..2q-r-1}.
Hinge build_hinge(int q, int r);

/// The clique of `family` containing edge e; throws if absent.
const VertexSet& clique_containing(const CliqueFamily& family, const VertexSet& e);

struct BoosterCheck {
    bool off_decomposes = false;
    bool on_decomposes = false;
    bool target_unused = false;
    bool edge_disjoint = false;
    bool orthogonal = false;
    bool partite = false;
    bool ok() const { return off_decomposes && on_decomposes && target_unused && edge_disjoint && partite; }
};
BoosterCheck verify_booster(const Booster& b);

struct HingeCheck {
    bool left_decomposes = false;
    bool right_decomposes = false;
    bool edge_disjoint = false;
    bool independent = false;
    bool partite = false;
    bool ok() const { return left_decomposes && right_decomposes && edge_disjoint && independent && partite; }
};
HingeCheck verify_hinge(const Hinge& h);

/// Roots independent in the graph.
bool roots_independent(const RootedGadget& h);
/// Every non-root vertex colored in 0..q-1 and every edge has at most one
/// non-root vertex per color.
bool is_rooted_q_partite(const RootedGadget& h, int q);
/// The layered condition with at most d*q out-of-layer vertices per layer.
/// Throws InvalidArgument when non-root vertices exist but no layers are set.
bool is_rooted_partite_degenerate(const RootedGadget& h, int d, int q);

/// For every i-subset S' of f (i < r): degree(S') mod C(q-i, r-i).
/// Returns true iff all residues equal 1.
bool fake_edge_congruences_hold(const RootedGadget& fake, const VertexSet& f, int q);

/// Gadget serialization: the hypergraph text block followed by annotation
/// lines (roots, vertices, colors, layers) and named clique families.
void write_gadget(std::ostream& out, const RootedGadget& g, const std::map<std::string, CliqueFamily>& families);
RootedGadget read_gadget(std::istream& in, std::map<std::string, CliqueFamily>* families = nullptr);

}  // namespace hd
