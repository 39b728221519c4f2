#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperdesign/hypergraph.hpp"

namespace hd {

/// A list of q-cliques. The ground hypergraph is passed explicitly wherever
/// a check needs it.
struct CliqueFamily {
    int q = 0;
    std::vector<VertexSet> cliques;

    std::size_t size() const { return cliques.size(); }
    bool empty() const { return cliques.empty(); }
    void append(const CliqueFamily& other);
};

/// The r-subsets of the cliques partition E(G) exactly (r = G.rank()).
bool verify_decomposition(const Hypergraph& g, const CliqueFamily& family);
/// Empty when `family` decomposes G, otherwise a short description of the
/// first defect found.
std::optional<std::string> decomposition_defect(const Hypergraph& g, const CliqueFamily& family);

/// Pairwise edge-disjoint cliques, each fully inside G.
bool verify_packing(const Hypergraph& g, const CliqueFamily& family);
std::optional<std::string> packing_defect(const Hypergraph& g, const CliqueFamily& family);

/// Exact cover by dancing links. Columns 0..primary-1 must be covered exactly
/// once, the remaining (secondary) columns at most once.
class ExactCover {
public:
    ExactCover(std::size_t primary, std::size_t secondary);

    /// Adds a row; returns its index. Column indices may be in any order.
    std::size_t add_row(const std::vector<std::size_t>& columns);

    enum class Status { Found, Nonexistent, BudgetExhausted };

    /// Searches for one cover, branching on the column with fewest rows.
    /// `budget` bounds the number of search nodes.
    Status solve(std::uint64_t budget);
    const std::vector<std::size_t>& solution() const { return solution_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    struct Node {
        std::size_t left, right, up, down, column, row;
    };

    void cover(std::size_t c);
    void uncover(std::size_t c);
    bool search(std::uint64_t budget);

    std::vector<Node> nodes_list_;
    std::vector<std::size_t> column_size_;
    std::size_t primary_;
    std::size_t row_count_ = 0;
    std::vector<std::size_t> partial_;
    std::vector<std::size_t> solution_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

struct ExactCoverResult {
    ExactCover::Status status = ExactCover::Status::Nonexistent;
    std::optional<CliqueFamily> decomposition;
    std::uint64_t nodes = 0;
};

/// Complete backtracking search for a K_q^r-decomposition of G.
ExactCoverResult exact_cover_decompose(const Hypergraph& g, int q, std::uint64_t budget = 50'000'000);

/// Number of subgraphs of G isomorphic to F (distinct images, vertex set and
/// edge set). Throws CapExceeded when the search visits more than `cap` nodes.
std::uint64_t count_copies(const Hypergraph& g, const Hypergraph& f, std::uint64_t cap = 200'000'000);

const char* to_string(ExactCover::Status s);

}  // namespace hd
