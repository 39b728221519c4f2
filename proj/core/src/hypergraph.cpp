#include "hyperdesign/hypergraph.hpp"

#include <algorithm>
#include <map>

#include "hyperdesign/combinatorics.hpp"

namespace hd {

// --- EdgeIndex -------------------------------------------------------------

bool EdgeIndex::contains(std::span<const Vertex> sorted) const
{
    const auto rank = colex_rank(sorted);
    if (!rank) return overflow_.count(VertexSet(sorted.begin(), sorted.end())) > 0;
    if (use_bits_) {
        const std::uint64_t word = *rank >> 6;
        if (word >= bits_.size()) return false;
        return (bits_[word] >> (*rank & 63)) & 1u;
    }
    return ranks_.count(*rank) > 0;
}

void EdgeIndex::insert(std::span<const Vertex> sorted)
{
    const auto rank = colex_rank(sorted);
    if (!rank) {
        overflow_.insert(VertexSet(sorted.begin(), sorted.end()));
        return;
    }
    if (use_bits_ && *rank >= kBitsetLimit) {
        // Migrate to the hash representation.
        for (std::uint64_t w = 0; w < bits_.size(); ++w) {
            for (unsigned b = 0; b < 64; ++b) {
                if ((bits_[w] >> b) & 1u) ranks_.insert(w * 64 + b);
            }
        }
        bits_.clear();
        bits_.shrink_to_fit();
        use_bits_ = false;
    }
    if (use_bits_) {
        const std::uint64_t word = *rank >> 6;
        if (word >= bits_.size()) bits_.resize(std::max<std::uint64_t>(word + 1, bits_.size() * 2), 0);
        bits_[word] |= std::uint64_t{1} << (*rank & 63);
    } else {
        ranks_.insert(*rank);
    }
}

void EdgeIndex::erase(std::span<const Vertex> sorted)
{
    const auto rank = colex_rank(sorted);
    if (!rank) {
        overflow_.erase(VertexSet(sorted.begin(), sorted.end()));
        return;
    }
    if (use_bits_) {
        const std::uint64_t word = *rank >> 6;
        if (word < bits_.size()) bits_[word] &= ~(std::uint64_t{1} << (*rank & 63));
    } else {
        ranks_.erase(*rank);
    }
}

// --- Hypergraph ------------------------------------------------------------

Hypergraph::Hypergraph(std::size_t n, int r_max) : n_(n), r_max_(r_max)
{
    if (r_max < 1) throw InvalidArgument("r_max must be at least 1");
}

Hypergraph Hypergraph::complete(std::size_t n, int r)
{
    Hypergraph g(n, r);
    for (auto& e : subsets_of_range(n, static_cast<std::size_t>(r))) g.add_edge(std::move(e));
    return g;
}

Hypergraph Hypergraph::complete_bounded(std::size_t n, int r)
{
    Hypergraph g(n, r);
    for (int i = 1; i <= r; ++i) {
        for (auto& e : subsets_of_range(n, static_cast<std::size_t>(i))) g.add_edge(std::move(e));
    }
    return g;
}

Hypergraph Hypergraph::cycle(std::size_t n)
{
    if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
    Hypergraph g(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        g.add_edge({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
    }
    return g;
}

Hypergraph Hypergraph::complete_partite(std::size_t parts, std::size_t part_size, int r)
{
    Hypergraph g(parts * part_size, r);
    for (const auto& chosen : subsets_of_range(parts, static_cast<std::size_t>(r))) {
        // One vertex from each chosen part.
        std::vector<std::size_t> pick(chosen.size(), 0);
        while (true) {
            VertexSet e;
            for (std::size_t j = 0; j < chosen.size(); ++j) {
                e.push_back(static_cast<Vertex>(chosen[j] * part_size + pick[j]));
            }
            g.add_edge(std::move(e));
            std::size_t j = 0;
            while (j < pick.size() && ++pick[j] == part_size) pick[j++] = 0;
            if (j == pick.size()) break;
        }
    }
    return g;
}

Hypergraph Hypergraph::from_edges(std::size_t n, int r_max, const std::vector<VertexSet>& edges)
{
    Hypergraph g(n, r_max);
    for (const auto& e : edges) g.add_edge(e);
    return g;
}

std::size_t Hypergraph::edge_count(int size) const
{
    return static_cast<std::size_t>(std::count_if(
        edges_.begin(), edges_.end(), [&](const VertexSet& e) { return e.size() == static_cast<std::size_t>(size); }));
}

bool Hypergraph::uniform() const
{
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const VertexSet& e) { return e.size() == static_cast<std::size_t>(r_max_); });
}

Vertex Hypergraph::add_vertices(std::size_t k)
{
    const auto first = static_cast<Vertex>(n_);
    n_ += k;
    return first;
}

void Hypergraph::check_edge(const VertexSet& e) const
{
    if (e.empty() || e.size() > static_cast<std::size_t>(r_max_)) {
        throw InvalidArgument("edge " + to_string(e) + " has size outside 1.." + std::to_string(r_max_));
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] >= n_) throw InvalidArgument("edge " + to_string(e) + " uses a vertex out of range");
        if (i && e[i - 1] >= e[i]) throw InvalidArgument("edge " + to_string(e) + " repeats a vertex");
    }
}

EdgeIndex& Hypergraph::index_for(std::size_t size)
{
    if (index_.size() <= size) index_.resize(size + 1);
    return index_[size];
}

bool Hypergraph::add_edge(VertexSet e)
{
    std::sort(e.begin(), e.end());
    check_edge(e);
    auto& idx = index_for(e.size());
    if (idx.contains(e)) return false;
    idx.insert(e);
    edges_.insert(std::move(e));
    return true;
}

bool Hypergraph::remove_edge(const VertexSet& e)
{
    auto it = edges_.find(e);
    if (it == edges_.end()) return false;
    index_for(e.size()).erase(e);
    edges_.erase(it);
    return true;
}

bool Hypergraph::has_edge(std::span<const Vertex> sorted) const
{
    if (sorted.size() >= index_.size()) return false;
    return index_[sorted.size()].contains(sorted);
}

Hypergraph Hypergraph::uniformity_layer(int i) const
{
    Hypergraph out(n_, std::max(i, 1));
    for (const auto& e : edges_) {
        if (e.size() == static_cast<std::size_t>(i)) out.add_edge(e);
    }
    return out;
}

void Hypergraph::merge(const Hypergraph& other)
{
    n_ = std::max(n_, other.n_);
    r_max_ = std::max(r_max_, other.r_max_);
    for (const auto& e : other.edges_) add_edge(e);
}

std::size_t Hypergraph::induced_edge_count(const VertexSet& s) const
{
    std::size_t count = 0;
    for (int k = 1; k <= r_max_; ++k) {
        for_each_subset(s, static_cast<std::size_t>(k), [&](const VertexSet& e) {
            if (has_edge(e)) ++count;
            return true;
        });
    }
    return count;
}

VertexSet Hypergraph::support() const
{
    VertexSet out;
    for (const auto& e : edges_) out.insert(out.end(), e.begin(), e.end());
    return normalized(std::move(out));
}

// --- free functions --------------------------------------------------------

std::size_t degree(const Hypergraph& g, const VertexSet& s)
{
    for (Vertex v : s) {
        if (v >= g.vertex_count()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    }
    const VertexSet sorted = normalized(s);
    return static_cast<std::size_t>(std::count_if(g.edges().begin(), g.edges().end(),
                                                  [&](const VertexSet& e) { return is_subset(sorted, e); }));
}

namespace {

// Degree of every i-set with positive degree.
std::map<VertexSet, std::size_t> subset_degrees(const Hypergraph& g, std::size_t i)
{
    std::map<VertexSet, std::size_t> out;
    for (const auto& e : g.edges()) {
        for_each_subset(e, i, [&](const VertexSet& t) {
            ++out[t];
            return true;
        });
    }
    return out;
}

void require_uniform(const Hypergraph& g)
{
    if (!g.uniform()) throw InvalidArgument("hypergraph is not uniform");
}

}  // namespace

std::size_t min_codegree(const Hypergraph& g)
{
    require_uniform(g);
    const auto r = static_cast<std::size_t>(g.rank());
    const auto degs = subset_degrees(g, r - 1);
    if (degs.size() < binomial(g.vertex_count(), r - 1)) return 0;
    std::size_t best = SIZE_MAX;
    for (const auto& [t, d] : degs) best = std::min(best, d);
    return best == SIZE_MAX ? 0 : best;
}

std::size_t max_codegree(const Hypergraph& g)
{
    require_uniform(g);
    const auto r = static_cast<std::size_t>(g.rank());
    std::size_t best = 0;
    for (const auto& [t, d] : subset_degrees(g, r - 1)) best = std::max(best, d);
    return best;
}

bool is_divisible(const Hypergraph& g, int q)
{
    require_uniform(g);
    const int r = g.rank();
    if (q <= r) throw InvalidArgument("divisibility needs q > r");
    for (int i = 0; i < r; ++i) {
        const std::uint64_t mod = binomial(static_cast<std::uint64_t>(q - i), static_cast<std::uint64_t>(r - i));
        for (const auto& [t, d] : subset_degrees(g, static_cast<std::size_t>(i))) {
            if (d % mod != 0) return false;
        }
    }
    return true;
}

Hypergraph link(const Hypergraph& g, const VertexSet& s)
{
    const VertexSet sorted = normalized(s);
    for (Vertex v : sorted) {
        if (v >= g.vertex_count()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    }
    const int r = std::max(1, g.rank() - static_cast<int>(sorted.size()));
    Hypergraph out(g.vertex_count(), r);
    for (const auto& e : g.edges()) {
        if (e.size() > sorted.size() && is_subset(sorted, e)) out.add_edge(set_difference(e, sorted));
    }
    return out;
}

namespace {

// Extends `current` by vertices from `cand` (all of which are compatible with
// every vertex of `current`), collecting q-cliques.
void extend_cliques(const Hypergraph& g, int r, int q, VertexSet& current, const VertexSet& cand,
                    std::vector<VertexSet>& out)
{
    if (static_cast<int>(current.size()) == q) {
        out.push_back(current);
        return;
    }
    const std::size_t need = static_cast<std::size_t>(q) - current.size();
    for (std::size_t ci = 0; ci < cand.size(); ++ci) {
        if (cand.size() - ci < need) break;
        const Vertex v = cand[ci];
        // Candidates after v that stay compatible once v joins.
        VertexSet next;
        const std::size_t depth = current.size();  // |C| before adding v
        for (std::size_t cj = ci + 1; cj < cand.size(); ++cj) {
            const Vertex w = cand[cj];
            bool ok = true;
            if (depth + 2 >= static_cast<std::size_t>(r)) {
                // Every (r-2)-subset U of current must give U+{v,w} in E.
                for_each_subset(current, static_cast<std::size_t>(r - 2), [&](const VertexSet& u) {
                    VertexSet e = u;
                    e.push_back(v);
                    e.push_back(w);
                    std::sort(e.begin(), e.end());
                    if (!g.has_edge(e)) {
                        ok = false;
                        return false;
                    }
                    return true;
                });
            }
            if (ok) next.push_back(w);
        }
        current.push_back(v);
        extend_cliques(g, r, q, current, next, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<VertexSet> enumerate_cliques(const Hypergraph& g, int q)
{
    require_uniform(g);
    const int r = g.rank();
    std::vector<VertexSet> out;
    if (q < r) return out;
    if (r == 1) {
        VertexSet singles;
        for (const auto& e : g.edges()) singles.push_back(e[0]);
        return subsets(singles, static_cast<std::size_t>(q));
    }
    // Candidates start as the non-isolated vertices.
    VertexSet cand = g.support();
    VertexSet current;
    extend_cliques(g, r, q, current, cand, out);
    return out;
}

std::vector<VertexSet> cliques_through(const Hypergraph& g, const VertexSet& edge, int q)
{
    const int r = static_cast<int>(edge.size());
    std::vector<VertexSet> out;
    if (q < r) return out;
    // Vertices w outside the edge with T+{w} in G for every (r-1)-subset T.
    VertexSet cand;
    for (Vertex w = 0; w < g.vertex_count(); ++w) {
        if (contains(edge, w)) continue;
        bool ok = true;
        for_each_subset(edge, static_cast<std::size_t>(r - 1), [&](const VertexSet& t) {
            VertexSet e = t;
            e.push_back(w);
            std::sort(e.begin(), e.end());
            if (!g.has_edge(e)) {
                ok = false;
                return false;
            }
            return true;
        });
        if (ok) cand.push_back(w);
    }
    for_each_subset(cand, static_cast<std::size_t>(q - r), [&](const VertexSet& extra) {
        const VertexSet clique = set_union(edge, extra);
        bool ok = true;
        for_each_subset(clique, static_cast<std::size_t>(r), [&](const VertexSet& e) {
            if (!g.has_edge(e)) {
                ok = false;
                return false;
            }
            return true;
        });
        if (ok) out.push_back(clique);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

Hypergraph blow_up(const Hypergraph& f, std::size_t t)
{
    if (t < 1) throw InvalidArgument("blow-up factor must be at least 1");
    Hypergraph out(f.vertex_count() * t, f.rank());
    for (const auto& e : f.edges()) {
        std::vector<std::size_t> pick(e.size(), 0);
        while (true) {
            VertexSet image;
            for (std::size_t j = 0; j < e.size(); ++j) image.push_back(static_cast<Vertex>(e[j] * t + pick[j]));
            out.add_edge(std::move(image));
            std::size_t j = 0;
            while (j < pick.size() && ++pick[j] == t) pick[j++] = 0;
            if (j == pick.size()) break;
        }
    }
    return out;
}

Hypergraph relabel(const Hypergraph& g, std::span<const Vertex> map, std::size_t new_n)
{
    Hypergraph out(new_n, g.rank());
    for (const auto& e : g.edges()) out.add_edge(relabel(e, map));
    return out;
}

VertexSet relabel(const VertexSet& s, std::span<const Vertex> map)
{
    VertexSet out;
    out.reserve(s.size());
    for (Vertex v : s) {
        if (v >= map.size()) throw InvalidArgument("relabel map too short for vertex " + std::to_string(v));
        out.push_back(map[v]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexSet> clique_edges(const VertexSet& clique, int r)
{
    return subsets(clique, static_cast<std::size_t>(r));
}

}  // namespace hd
