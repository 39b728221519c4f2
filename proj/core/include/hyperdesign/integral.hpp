#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "hyperdesign/hypergraph.hpp"

namespace hd {

/// Integer values on r-sets. Absent keys are zero.
using EdgeMap = std::map<VertexSet, std::int64_t>;

/// Integer weights on q-sets of the complete ground K_m^r.
struct IntegralValuation {
    std::size_t ground = 0;
    int q = 0;
    int r = 0;
    std::map<VertexSet, std::int64_t> weights;

    /// Adds w to the weight of Q, dropping it when the sum is zero.
    void add(const VertexSet& clique, std::int64_t w);
    void add(const IntegralValuation& other, std::int64_t factor = 1);
    /// Phi+ and Phi-: support cliques repeated |w| times, lexicographic.
    std::vector<VertexSet> positives() const;
    std::vector<VertexSet> negatives() const;
    /// Sum of |w|.
    std::int64_t l1() const;
    bool empty() const { return weights.empty(); }
};

/// A hypergraph with integer edge values psi (support inside E(graph)).
struct IntegralHypergraph {
    Hypergraph graph;
    EdgeMap psi;

    /// Every edge with value 1.
    static IntegralHypergraph unit(const Hypergraph& g);
};

/// dPhi(e) = sum of Phi(Q) over Q containing e. Zero entries are omitted.
EdgeMap boundary(const IntegralValuation& phi);

/// For every i-set T with i < r: C(q-i, r-i) divides the sum of psi over
/// r-sets containing T.
bool integral_is_divisible(const EdgeMap& psi, int r, int q);

struct WilsonOptions {
    /// Greedy l1 reduction by adding lattice kernel vectors.
    bool minimize_l1 = false;
    std::size_t max_variables = 20000;
};

/// Solves dPhi = target over the q-subsets of `ground` exactly, where target
/// lives on r-subsets of `ground` (r >= 0). Throws NotDivisible when no
/// integral solution exists, CapExceeded when C(|ground|, q) is too large.
IntegralValuation wilson_solve(const VertexSet& ground, int r, int q, const EdgeMap& target,
                               const WilsonOptions& options = {});

/// Integral decomposition of L over the ground 0..v(L)-1.
IntegralValuation wilson_decompose(const IntegralHypergraph& l, int q, const WilsonOptions& options = {});

/// Phi over q-subsets of `ground` with dPhi(f) = target(f) for every r-set
/// f with S in f in ground. Built by decomposing the link target at uniformity
/// r-|S| on ground - S and lifting P to P + S.
IntegralValuation cone_valuation(const EdgeMap& target, const VertexSet& s, const VertexSet& ground, int r, int q,
                                 const WilsonOptions& options = {});

struct EdgeIntersectingResult {
    IntegralValuation phi;
    VertexSet fresh;  // X, the q+r vertices appended after V(L)
    /// Nonzero residual r-sets after stage 0..r (the last must be 0).
    std::vector<std::size_t> residual_after_stage;
};

/// Integral decomposition of L inside K_{v(L)+q+r}^r in which every clique
/// meets V(L) inside a single edge of L.
EdgeIntersectingResult edge_intersecting_integral_decompose(const IntegralHypergraph& l, int q,
                                                            const WilsonOptions& options = {});

/// Every support clique of Phi meets V(L) (non-isolated vertices) inside
/// some edge of L.
bool is_edge_intersecting(const IntegralValuation& phi, const Hypergraph& l);

/// dPhi equals psi on E(L) and zero on every other r-set.
bool boundary_matches(const IntegralValuation& phi, const EdgeMap& psi);

/// Lines `w v1 ... vq`.
void write_valuation(std::ostream& out, const IntegralValuation& phi);
IntegralValuation read_valuation(std::istream& in, std::size_t ground, int r);

}  // namespace hd
