#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hyperdesign/types.hpp"

namespace hd {

/// Exact binomial coefficient; throws on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Colex rank of a sorted k-set: sum of C(v_j, j+1). Independent of the
/// ambient vertex count. Empty when the rank would overflow 64 bits.
std::optional<std::uint64_t> colex_rank(std::span<const Vertex> sorted);

/// Calls `visit` with every k-subset of `items` (which must be sorted) in
/// lexicographic order. Stops early if `visit` returns false.
void for_each_subset(std::span<const Vertex> items, std::size_t k,
                     const std::function<bool(const VertexSet&)>& visit);

/// All k-subsets of `items`, lexicographic.
std::vector<VertexSet> subsets(std::span<const Vertex> items, std::size_t k);

/// All k-subsets of {0..n-1}, lexicographic.
std::vector<VertexSet> subsets_of_range(std::size_t n, std::size_t k);

VertexSet range_set(std::size_t n);
VertexSet range_set(Vertex begin, Vertex end);

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& small, const VertexSet& big);
bool contains(const VertexSet& s, Vertex v);

/// Sorts and removes duplicates in place; returns the argument.
VertexSet normalized(VertexSet s);

}  // namespace hd
