#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "hyperdesign/decomposition.hpp"
#include "hyperdesign/simplex.hpp"

namespace hd {

/// Exact rational values on r-sets.
using RationalEdgeMap = std::map<VertexSet, mpq_class>;

/// Rational weights on q-cliques of a ground hypergraph.
struct FractionalWeighting {
    int q = 0;
    int r = 0;
    std::map<VertexSet, mpq_class> weights;

    void add(const VertexSet& clique, const mpq_class& w);
    void add(const FractionalWeighting& other, const mpq_class& factor);
    mpq_class max_weight() const;
};

/// dpsi(e), zero entries omitted.
RationalEdgeMap boundary(const FractionalWeighting& psi);

/// Weights in [0, 1], support inside the cliques of G, and dpsi equal to the
/// target on E(G) (1 when `target` is empty) and zero elsewhere.
bool verify_fractional(const Hypergraph& g, const FractionalWeighting& psi, const RationalEdgeMap& target = {});

struct FractionalResult {
    bool feasible = false;
    FractionalWeighting psi;
    /// On infeasibility: one multiplier per edge of G (lexicographic order)
    /// certifying that no nonnegative weighting exists.
    std::vector<mpq_class> farkas;
    std::uint64_t pivots = 0;
    std::size_t cliques = 0;
};

/// Exact LP for dpsi = target on E(G), psi >= 0 over the q-cliques of G.
/// An empty target means 1 on every edge. Throws CapExceeded above
/// `clique_cap` cliques.
FractionalResult fractional_decompose(const Hypergraph& g, int q, const RationalEdgeMap& target = {},
                                      PivotRule rule = PivotRule::Dantzig, std::size_t clique_cap = 4000);

struct PackingResult {
    FractionalWeighting psi;
    /// e(G) minus the weight covered by psi, minimized.
    mpq_class uncovered = 0;
    std::uint64_t pivots = 0;
    std::size_t cliques = 0;
};

/// Maximum fractional K_q^r-packing of G: weights with boundary at most 1 on
/// every edge and the largest covered weight. Always feasible.
PackingResult fractional_packing(const Hypergraph& g, int q, PivotRule rule = PivotRule::Dantzig,
                                 std::size_t clique_cap = 4000);

/// Weights in [0, 1] on q-cliques of G with boundary at most 1 on every edge.
bool verify_fractional_packing(const Hypergraph& g, const FractionalWeighting& psi);

/// Weighted combination: lambda_e = e(G) * (phi(e) - (1 - 1/e(G))),
/// Phi'_e = lambda_e Phi0 + (1 - lambda_e) Phi_e, Phi = average of Phi'_e.
/// Phi0 decomposes G, Phi_e decomposes G - e (both fractionally).
FractionalWeighting fixed_fractional(const Hypergraph& g, int q, const RationalEdgeMap& phi,
                                     const FractionalWeighting& phi0,
                                     const std::map<VertexSet, FractionalWeighting>& phi_e);

/// Phi0 and every Phi_e solved by LP. Empty when one of them is infeasible.
struct FixedInputs {
    FractionalWeighting phi0;
    std::map<VertexSet, FractionalWeighting> phi_e;
};
std::optional<FixedInputs> fixed_fractional_inputs(const Hypergraph& g, int q);

/// True iff every phi(e) lies in [1 - 1/e(G), 1].
bool fixed_targets_in_range(const Hypergraph& g, const RationalEdgeMap& phi);

enum class SubsetMode { Enumerate, Sample };

struct LowWeightReport {
    std::size_t subsets_considered = 0;
    std::size_t subsets_used = 0;
    std::size_t via_fixed = 0;      // solved by the averaging construction
    std::size_t via_lp = 0;         // solved by a direct LP with the targets
    std::size_t distinct_shapes = 0;
    std::size_t min_count = 0;      // N_min: usable s-sets through an edge
    std::size_t max_count = 0;
    mpq_class max_weight = 0;
    /// max_weight * C(n-r, q-r).
    mpq_class c = 0;
};

struct LowWeightResult {
    FractionalWeighting psi;
    LowWeightReport report;
};

/// Sums fractional decompositions of G[S] over s-sets S with edge targets
/// N_min / N(e), where N(e) counts the usable s-sets through e, then scales
/// by 1 / N_min so every edge receives exactly 1. Throws Error naming an edge
/// that lies in no usable s-set.
LowWeightResult low_weight_fractional(const Hypergraph& g, int q, std::size_t s, SubsetMode mode = SubsetMode::Enumerate,
                                      std::size_t samples = 0, std::uint64_t seed = 1);

struct BoostReport {
    mpq_class d = 0;
    std::size_t min_edge = 0;
    std::size_t max_edge = 0;
    double mean_edge = 0;
    std::size_t sampled = 0;
};

struct BoostResult {
    CliqueFamily family;
    BoostReport report;
};

/// Includes each clique H independently with probability psi(H) * d where
/// d = C(n-r, q-r) / C. Throws InvalidArgument if some probability exceeds 1.
BoostResult boost_regularity(const Hypergraph& g, const FractionalWeighting& psi, const mpq_class& c, std::uint64_t seed);

struct InheritanceStats {
    std::size_t trials = 0;
    std::size_t good = 0;
    double fraction() const { return trials ? static_cast<double>(good) / static_cast<double>(trials) : 0.0; }
};

/// Samples s-sets S containing R uniformly; counts those with
/// min_codegree(G[S]) >= threshold.
InheritanceStats inheritance_sample(const Hypergraph& g, const VertexSet& r_set, std::size_t s, std::size_t threshold,
                                    std::size_t trials, std::uint64_t seed);
/// The same statistic over every s-set containing R.
InheritanceStats inheritance_exhaustive(const Hypergraph& g, const VertexSet& r_set, std::size_t s, std::size_t threshold);

/// G[S] relabeled to 0..|S|-1 in the order of S.
Hypergraph induced_relabeled(const Hypergraph& g, const VertexSet& s);

/// Lines `p/q v1 ... vq`.
void write_weighting(std::ostream& out, const FractionalWeighting& psi);
FractionalWeighting read_weighting(std::istream& in, int r);

}  // namespace hd
