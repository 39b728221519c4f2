#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hyperdesign/decomposition.hpp"

namespace hd {

struct ReserveReport {
    std::size_t max_codegree = 0;  // Delta(X)
    double bound = 0;              // 2pn
    std::size_t attempts = 0;
    std::uint64_t seed_used = 0;
    /// For e in G - X: q-cliques of X + e containing e.
    std::map<VertexSet, std::size_t> extension_counts;
    std::size_t min_extension = 0;
};

struct ReserveResult {
    Hypergraph x;
    ReserveReport report;
};

/// Keeps each edge of G with probability p; redraws with derived seeds while
/// Delta(X) > 2pn. Throws BudgetExhausted after `max_attempts` draws.
ReserveResult sample_reserves(const Hypergraph& g, int q, double p, std::uint64_t seed, std::size_t max_attempts = 100);

/// Number of q-cliques of X + {e} that contain e.
std::size_t count_extensions(const Hypergraph& x, const VertexSet& e, int q);

struct NibbleResult {
    CliqueFamily packing;
    std::vector<VertexSet> leave;  // uncovered edges of G
    std::size_t rounds = 0;
    std::size_t nibble_cliques = 0;
    std::size_t cover_cliques = 0;
    std::vector<std::size_t> covered_per_round;
    bool success() const { return leave.empty(); }
};

/// Random bites from H (each live clique kept with probability
/// bite / max live clique degree, conflicts dropped in order), then a greedy
/// cover-down of each remaining edge of G by the least q-set whose other
/// r-subsets are unused edges of X.
NibbleResult nibble_with_reserves(const Hypergraph& g, const Hypergraph& x, const CliqueFamily& h, double bite,
                                  std::uint64_t seed, std::size_t max_rounds = 200);

/// Packing of G + X, and covered edges of G plus the leave equal E(G) exactly.
bool verify_nibble(const Hypergraph& g, const Hypergraph& x, const NibbleResult& res);

}  // namespace hd
