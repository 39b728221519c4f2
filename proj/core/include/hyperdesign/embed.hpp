#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperdesign/gadgets.hpp"

namespace hd {

constexpr Vertex kUnmapped = UINT32_MAX;

/// Label map of a gadget into a host: map[v] for v in V(H), kUnmapped for
/// labels outside V(H).
using Embedding = std::vector<Vertex>;

/// Roots go to `root_image` (aligned with H.roots), the map is injective on
/// V(H) and every edge of H lands on an edge of G.
bool is_valid_embedding(const Hypergraph& g, const RootedGadget& h, const std::vector<Vertex>& root_image,
                        const Embedding& map);

/// Greedy extension in rooted degeneracy order, least eligible host vertex
/// first. Empty when some step has no eligible vertex (the count may still be
/// positive).
std::optional<Embedding> embed_greedy(const Hypergraph& g, const RootedGadget& h, const std::vector<Vertex>& root_image);

/// Number of extensions of the root image, by backtracking in rooted
/// degeneracy order. Throws CapExceeded after `cap` search nodes.
std::uint64_t count_embeddings(const Hypergraph& g, const RootedGadget& h, const std::vector<Vertex>& root_image,
                               std::uint64_t cap = 100'000'000);

enum class EmbedMode { Greedy, Count };

struct DegenerateEmbedding {
    std::optional<Embedding> embedding;  // Greedy mode
    std::uint64_t count = 0;             // Count mode
};

/// Dispatches to embed_greedy or count_embeddings.
DegenerateEmbedding embed_degenerate(const Hypergraph& g, const RootedGadget& h, const std::vector<Vertex>& root_image,
                                     EmbedMode mode, std::uint64_t cap = 100'000'000);

/// The same count by nested enumeration over the gadget layers.
std::uint64_t count_layered_embeddings(const Hypergraph& g, const RootedGadget& h,
                                       const std::vector<Vertex>& root_image, std::uint64_t cap = 100'000'000);

/// A bipartite hypergraph: each A-vertex owns a list of candidate edges,
/// each a set of B-vertex ids.
struct BipartiteHypergraph {
    std::size_t b_count = 0;
    std::vector<std::vector<std::vector<std::size_t>>> candidates;  // [a][k] -> B ids
};

struct MatchingResult {
    enum class Status { Found, Nonexistent, BudgetExhausted };
    Status status = Status::Nonexistent;
    std::vector<std::size_t> choice;  // candidate index per A-vertex
    std::uint64_t nodes = 0;
    std::size_t min_a_degree = 0;
    std::size_t max_b_degree = 0;
    std::size_t rank = 0;
    /// min d(a) >= 8 * rank * max d(b).
    bool degree_condition = false;
    bool found() const { return status == Status::Found; }
};

/// A-perfect matching by backtracking (fewest live candidates first) with
/// memoized failing states.
MatchingResult finishing_matching(const BipartiteHypergraph& b, std::uint64_t budget = 1'000'000);

/// Chosen candidates are pairwise disjoint and one per A-vertex.
bool is_a_perfect_matching(const BipartiteHypergraph& b, const std::vector<std::size_t>& choice);

/// Subgraphs H of J, each with a rooted supergraph W_H. W_H is rooted at
/// V(H) in J's labels; its other labels are private to W_H.
struct SupergraphSystem {
    Hypergraph base;
    std::vector<Hypergraph> family;
    std::vector<RootedGadget> supers;
};

struct SystemEmbedding {
    MatchingResult matching;
    std::vector<Embedding> maps;  // per family member
    std::size_t slot_capacity = 0;
    std::size_t c_bound = 0;             // max over members of max(e(W_H), v(W_H))
    std::size_t max_codegree_load = 0;   // images containing one (r-1)-set, worst case
    std::size_t candidates = 0;
    bool found() const { return matching.found(); }
};

/// Embeds every W_H into G so that images are pairwise edge-disjoint,
/// non-root images avoid V(J) and are pairwise disjoint, and image edges meet
/// E(J) only in E(H). Candidates come from randomized greedy embeddings; B
/// holds the new image edges, the non-root host vertices and (r-1)-set slots
/// times [T].
SystemEmbedding embed_supergraph_system(const Hypergraph& g, const SupergraphSystem& sys, std::size_t slot_capacity,
                                        std::uint64_t seed, std::size_t tries_per_member = 16,
                                        std::uint64_t budget = 1'000'000);

/// Checks the conclusions of embed_supergraph_system independently.
bool verify_system_embedding(const Hypergraph& g, const SupergraphSystem& sys, const SystemEmbedding& emb);

const char* to_string(MatchingResult::Status s);

}  // namespace hd
