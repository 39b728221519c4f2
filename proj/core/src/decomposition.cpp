#include "hyperdesign/decomposition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hyperdesign/combinatorics.hpp"

namespace hd {

void CliqueFamily::append(const CliqueFamily& other)
{
    if (q == 0) q = other.q;
    if (other.q != 0 && other.q != q) throw InvalidArgument("clique families of different orders");
    cliques.insert(cliques.end(), other.cliques.begin(), other.cliques.end());
}

namespace {

void check_family(const Hypergraph& g, const CliqueFamily& family)
{
    for (const auto& c : family.cliques) {
        if (c.size() != static_cast<std::size_t>(family.q)) {
            throw InvalidArgument("clique " + to_string(c) + " does not have " + std::to_string(family.q) + " vertices");
        }
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= g.vertex_count()) throw InvalidArgument("clique " + to_string(c) + " leaves the ground");
            if (i && c[i - 1] >= c[i]) throw InvalidArgument("clique " + to_string(c) + " is not a sorted set");
        }
    }
}

// Counts how often each r-subset is covered; reports the first problem.
std::optional<std::string> coverage_defect(const Hypergraph& g, const CliqueFamily& family, bool exact)
{
    check_family(g, family);
    const auto r = static_cast<std::size_t>(g.rank());
    std::set<VertexSet> covered;
    for (const auto& c : family.cliques) {
        std::optional<std::string> problem;
        for_each_subset(c, r, [&](const VertexSet& e) {
            if (!g.has_edge(e)) {
                problem = "clique " + to_string(c) + " uses non-edge " + to_string(e);
                return false;
            }
            if (!covered.insert(e).second) {
                problem = "edge " + to_string(e) + " covered twice";
                return false;
            }
            return true;
        });
        if (problem) return problem;
    }
    if (exact) {
        for (const auto& e : g.edges()) {
            if (e.size() != r) return "edge " + to_string(e) + " has the wrong size";
            if (!covered.count(e)) return "edge " + to_string(e) + " is not covered";
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> decomposition_defect(const Hypergraph& g, const CliqueFamily& family)
{
    if (family.q <= g.rank() && !family.cliques.empty()) return "clique order must exceed the uniformity";
    if (family.cliques.empty()) {
        if (g.edge_count() == 0) return std::nullopt;
        return "empty family does not cover " + std::to_string(g.edge_count()) + " edges";
    }
    return coverage_defect(g, family, true);
}

bool verify_decomposition(const Hypergraph& g, const CliqueFamily& family)
{
    return !decomposition_defect(g, family);
}

std::optional<std::string> packing_defect(const Hypergraph& g, const CliqueFamily& family)
{
    return coverage_defect(g, family, false);
}

bool verify_packing(const Hypergraph& g, const CliqueFamily& family)
{
    return !packing_defect(g, family);
}

// --- ExactCover ------------------------------------------------------------

ExactCover::ExactCover(std::size_t primary, std::size_t secondary) : primary_(primary)
{
    const std::size_t columns = primary + secondary;
    // Node 0 is the root header; nodes 1..columns are column headers.
    nodes_list_.resize(columns + 1);
    column_size_.assign(columns + 1, 0);
    for (std::size_t i = 0; i <= columns; ++i) {
        nodes_list_[i] = Node{i, i, i, i, i, SIZE_MAX};
    }
    // Only primary columns are linked into the header row.
    std::size_t prev = 0;
    for (std::size_t c = 1; c <= primary; ++c) {
        nodes_list_[prev].right = c;
        nodes_list_[c].left = prev;
        prev = c;
    }
    nodes_list_[prev].right = 0;
    nodes_list_[0].left = prev;
}

std::size_t ExactCover::add_row(const std::vector<std::size_t>& columns)
{
    const std::size_t row = row_count_++;
    std::size_t first = SIZE_MAX;
    for (std::size_t col : columns) {
        const std::size_t c = col + 1;
        if (c >= column_size_.size()) throw InvalidArgument("exact cover column out of range");
        const std::size_t id = nodes_list_.size();
        Node node{id, id, nodes_list_[c].up, c, c, row};
        nodes_list_.push_back(node);
        nodes_list_[nodes_list_[c].up].down = id;
        nodes_list_[c].up = id;
        ++column_size_[c];
        if (first == SIZE_MAX) {
            first = id;
        } else {
            nodes_list_[id].left = nodes_list_[first].left;
            nodes_list_[id].right = first;
            nodes_list_[nodes_list_[first].left].right = id;
            nodes_list_[first].left = id;
        }
    }
    return row;
}

void ExactCover::cover(std::size_t c)
{
    auto& n = nodes_list_;
    n[n[c].right].left = n[c].left;
    n[n[c].left].right = n[c].right;
    for (std::size_t i = n[c].down; i != c; i = n[i].down) {
        for (std::size_t j = n[i].right; j != i; j = n[j].right) {
            n[n[j].down].up = n[j].up;
            n[n[j].up].down = n[j].down;
            --column_size_[n[j].column];
        }
    }
}

void ExactCover::uncover(std::size_t c)
{
    auto& n = nodes_list_;
    for (std::size_t i = n[c].up; i != c; i = n[i].up) {
        for (std::size_t j = n[i].left; j != i; j = n[j].left) {
            ++column_size_[n[j].column];
            n[n[j].down].up = j;
            n[n[j].up].down = j;
        }
    }
    n[n[c].right].left = c;
    n[n[c].left].right = c;
}

bool ExactCover::search(std::uint64_t budget)
{
    if (++nodes_ > budget) {
        exhausted_ = true;
        return false;
    }
    auto& n = nodes_list_;
    if (n[0].right == 0) {
        solution_ = partial_;
        return true;
    }
    std::size_t best = n[0].right;
    for (std::size_t c = n[best].right; c != 0; c = n[c].right) {
        if (column_size_[c] < column_size_[best]) best = c;
    }
    if (column_size_[best] == 0) return false;
    cover(best);
    for (std::size_t i = n[best].down; i != best; i = n[i].down) {
        partial_.push_back(n[i].row);
        for (std::size_t j = n[i].right; j != i; j = n[j].right) cover(n[j].column);
        const bool found = search(budget);
        for (std::size_t j = n[i].left; j != i; j = n[j].left) uncover(n[j].column);
        partial_.pop_back();
        if (found) {
            uncover(best);
            return true;
        }
        if (exhausted_) break;
    }
    uncover(best);
    return false;
}

ExactCover::Status ExactCover::solve(std::uint64_t budget)
{
    nodes_ = 0;
    exhausted_ = false;
    solution_.clear();
    partial_.clear();
    if (search(budget)) return Status::Found;
    return exhausted_ ? Status::BudgetExhausted : Status::Nonexistent;
}

const char* to_string(ExactCover::Status s)
{
    switch (s) {
    case ExactCover::Status::Found: return "found";
    case ExactCover::Status::Nonexistent: return "nonexistent";
    case ExactCover::Status::BudgetExhausted: return "budget-exhausted";
    }
    return "unknown";
}

ExactCoverResult exact_cover_decompose(const Hypergraph& g, int q, std::uint64_t budget)
{
    if (!g.uniform()) throw InvalidArgument("exact cover needs a uniform hypergraph");
    if (q <= g.rank()) throw InvalidArgument("clique order must exceed the uniformity");
    const auto r = static_cast<std::size_t>(g.rank());
    std::map<VertexSet, std::size_t> column;
    for (const auto& e : g.edges()) column.emplace(e, column.size());
    ExactCover problem(column.size(), 0);
    const auto cliques = enumerate_cliques(g, q);
    for (const auto& c : cliques) {
        std::vector<std::size_t> cols;
        for_each_subset(c, r, [&](const VertexSet& e) {
            cols.push_back(column.at(e));
            return true;
        });
        problem.add_row(cols);
    }
    ExactCoverResult result;
    result.status = problem.solve(budget);
    result.nodes = problem.nodes();
    if (result.status == ExactCover::Status::Found) {
        CliqueFamily family{q, {}};
        for (std::size_t row : problem.solution()) family.cliques.push_back(cliques[row]);
        std::sort(family.cliques.begin(), family.cliques.end());
        if (auto defect = decomposition_defect(g, family)) throw Error("exact cover produced an invalid decomposition: " + *defect);
        result.decomposition = std::move(family);
    }
    return result;
}

// --- count_copies ----------------------------------------------------------

namespace {

struct CopyCounter {
    const Hypergraph& g;
    const Hypergraph& f;
    std::uint64_t cap;
    std::uint64_t visited = 0;
    std::vector<std::vector<const VertexSet*>> closing;  // edges of F whose max vertex is v
    std::vector<Vertex> image;
    std::vector<char> used;
    std::set<std::vector<Vertex>> images;

    void run()
    {
        const std::size_t k = f.vertex_count();
        closing.assign(k, {});
        for (const auto& e : f.edges()) closing[e.back()].push_back(&e);
        image.assign(k, 0);
        used.assign(g.vertex_count(), 0);
        place(0);
    }

    void place(std::size_t v)
    {
        if (++visited > cap) throw CapExceeded("count_copies search exceeded " + std::to_string(cap) + " nodes");
        if (v == f.vertex_count()) {
            record();
            return;
        }
        for (Vertex x = 0; x < g.vertex_count(); ++x) {
            if (used[x]) continue;
            image[v] = x;
            bool ok = true;
            for (const VertexSet* e : closing[v]) {
                VertexSet mapped;
                mapped.reserve(e->size());
                for (Vertex u : *e) mapped.push_back(image[u]);
                std::sort(mapped.begin(), mapped.end());
                if (!g.has_edge(mapped)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used[x] = 1;
            place(v + 1);
            used[x] = 0;
        }
    }

    // Canonical key of an image: sorted vertex image, a separator, then the
    // sorted mapped edges each terminated by the separator.
    void record()
    {
        const Vertex sep = UINT32_MAX;
        std::vector<Vertex> key(image.begin(), image.end());
        std::sort(key.begin(), key.end());
        key.push_back(sep);
        std::vector<VertexSet> mapped;
        for (const auto& e : f.edges()) {
            VertexSet m;
            for (Vertex u : e) m.push_back(image[u]);
            std::sort(m.begin(), m.end());
            mapped.push_back(std::move(m));
        }
        std::sort(mapped.begin(), mapped.end());
        for (const auto& m : mapped) {
            key.insert(key.end(), m.begin(), m.end());
            key.push_back(sep);
        }
        images.insert(std::move(key));
    }
};

}  // namespace

std::uint64_t count_copies(const Hypergraph& g, const Hypergraph& f, std::uint64_t cap)
{
    if (f.vertex_count() > 12) throw CapExceeded("pattern has more than 12 vertices");
    if (f.vertex_count() > g.vertex_count()) return 0;
    CopyCounter counter{g, f, cap, 0, {}, {}, {}, {}};
    counter.run();
    return counter.images.size();
}

}  // namespace hd
