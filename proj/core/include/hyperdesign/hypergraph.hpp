#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <unordered_set>
#include <vector>

#include "hyperdesign/types.hpp"

namespace hd {

/// Membership index for the edges of one uniformity. Uses a bitset over colex
/// ranks while that stays small, and a hash set of ranks otherwise.
class EdgeIndex {
public:
    bool contains(std::span<const Vertex> sorted) const;
    void insert(std::span<const Vertex> sorted);
    void erase(std::span<const Vertex> sorted);

private:
    static constexpr std::uint64_t kBitsetLimit = std::uint64_t{1} << 27;

    std::vector<std::uint64_t> bits_;
    std::unordered_set<std::uint64_t> ranks_;
    std::set<VertexSet> overflow_;  // edges whose rank does not fit in 64 bits
    bool use_bits_ = true;
};

/// An r-bounded hypergraph on vertices 0..n-1. Edges are sorted vertex lists
/// of size 1..r_max with no duplicates. Iteration order is lexicographic.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::size_t n, int r_max);

    static Hypergraph complete(std::size_t n, int r);
    /// K_n^{[r]}: every nonempty subset of size at most r.
    static Hypergraph complete_bounded(std::size_t n, int r);
    static Hypergraph cycle(std::size_t n);
    /// K_{parts*part_size}^r; part j holds vertices j*part_size .. (j+1)*part_size-1.
    static Hypergraph complete_partite(std::size_t parts, std::size_t part_size, int r);
    static Hypergraph from_edges(std::size_t n, int r_max, const std::vector<VertexSet>& edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t edge_count(int size) const;
    int rank() const { return r_max_; }
    /// True iff every edge has size exactly rank().
    bool uniform() const;

    /// Appends k fresh vertices and returns the label of the first.
    Vertex add_vertices(std::size_t k);
    /// Adds an edge (sorted internally). Returns false if it was present.
    bool add_edge(VertexSet e);
    bool remove_edge(const VertexSet& e);
    bool has_edge(std::span<const Vertex> sorted) const;
    bool has_edge(const VertexSet& sorted) const { return has_edge(std::span<const Vertex>(sorted)); }

    const std::set<VertexSet>& edges() const { return edges_; }

    /// G^{(i)}: the edges of size exactly i, on the same vertex set.
    Hypergraph uniformity_layer(int i) const;
    /// Adds every edge of `other` (vertex count grows if needed).
    void merge(const Hypergraph& other);
    /// Edges of G inside S, keeping labels.
    std::size_t induced_edge_count(const VertexSet& s) const;
    /// The non-isolated vertices.
    VertexSet support() const;

    bool operator==(const Hypergraph& other) const
    {
        return n_ == other.n_ && r_max_ == other.r_max_ && edges_ == other.edges_;
    }

private:
    void check_edge(const VertexSet& e) const;
    EdgeIndex& index_for(std::size_t size);

    std::size_t n_ = 0;
    int r_max_ = 1;
    std::set<VertexSet> edges_;
    std::vector<EdgeIndex> index_;  // index_[k] for edges of size k
};

/// |G(S)|: the number of edges containing S.
std::size_t degree(const Hypergraph& g, const VertexSet& s);

/// Minimum (r-1)-set degree of a uniform hypergraph.
std::size_t min_codegree(const Hypergraph& g);
/// Maximum (r-1)-set degree, Delta(G).
std::size_t max_codegree(const Hypergraph& g);

/// Every i-set T (0 <= i < r) has C(q-i, r-i) | degree(G, T).
bool is_divisible(const Hypergraph& g, int q);

/// { e \ S : S subset of e }, on the same labels (vertices of S end up isolated).
Hypergraph link(const Hypergraph& g, const VertexSet& s);

/// All q-cliques of a uniform hypergraph in lexicographic order.
std::vector<VertexSet> enumerate_cliques(const Hypergraph& g, int q);
/// q-cliques containing the given r-edge (sorted), lexicographic.
std::vector<VertexSet> cliques_through(const Hypergraph& g, const VertexSet& edge, int q);

/// F(t): vertex v becomes v*t .. v*t+t-1; each s-edge becomes t^s edges.
Hypergraph blow_up(const Hypergraph& f, std::size_t t);

/// Hypergraph relabeled by `map` (old label -> new label) on `new_n` vertices.
Hypergraph relabel(const Hypergraph& g, std::span<const Vertex> map, std::size_t new_n);
VertexSet relabel(const VertexSet& s, std::span<const Vertex> map);

/// All r-subsets of the given q-set.
std::vector<VertexSet> clique_edges(const VertexSet& clique, int r);

}  // namespace hd
