#include "hyperdesign/nibble.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/random.hpp"

namespace hd {

namespace {

// Visits q-sets K containing e, in lexicographic order, whose r-subsets other
// than e all satisfy `ok`. Stops when `visit` returns false.
void for_each_extension(std::size_t n, const VertexSet& e, int q, int r, const std::function<bool(const VertexSet&)>& ok,
                        const std::function<bool(const VertexSet&)>& visit)
{
    const std::size_t need = static_cast<std::size_t>(q) - e.size();
    VertexSet extra;
    std::function<bool(Vertex)> grow = [&](Vertex from) {
        if (extra.size() == need) return visit(set_union(e, extra));
        for (Vertex w = from; w < n; ++w) {
            if (contains(e, w)) continue;
            extra.push_back(w);
            // Check the r-subsets that contain w and lie in e + extra.
            const VertexSet current = set_union(e, extra);
            bool good = true;
            for_each_subset(current, static_cast<std::size_t>(r), [&](const VertexSet& f) {
                if (!contains(f, w)) return true;
                good = ok(f);
                return good;
            });
            if (good && !grow(w + 1)) return false;
            extra.pop_back();
        }
        return true;
    };
    grow(0);
}

}  // namespace

std::size_t count_extensions(const Hypergraph& x, const VertexSet& e, int q)
{
    std::size_t count = 0;
    for_each_extension(
        x.vertex_count(), e, q, x.rank(), [&](const VertexSet& f) { return x.has_edge(f); },
        [&](const VertexSet&) {
            ++count;
            return true;
        });
    return count;
}

ReserveResult sample_reserves(const Hypergraph& g, int q, double p, std::uint64_t seed, std::size_t max_attempts)
{
    if (!(p >= 0 && p <= 1)) throw InvalidArgument("p must lie in [0, 1]");
    ReserveResult res;
    auto& rep = res.report;
    rep.bound = 2 * p * static_cast<double>(g.vertex_count());
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const std::uint64_t s = Rng::derive(seed, attempt);
        Rng rng(s);
        Hypergraph x(g.vertex_count(), g.rank());
        for (const auto& e : g.edges()) {
            if (rng.bernoulli(p)) x.add_edge(e);
        }
        rep.attempts = attempt + 1;
        rep.max_codegree = max_codegree(x);
        if (static_cast<double>(rep.max_codegree) <= rep.bound) {
            rep.seed_used = s;
            res.x = std::move(x);
            rep.min_extension = SIZE_MAX;
            for (const auto& e : g.edges()) {
                if (res.x.has_edge(e)) continue;
                const std::size_t k = count_extensions(res.x, e, q);
                rep.extension_counts.emplace(e, k);
                rep.min_extension = std::min(rep.min_extension, k);
            }
            if (rep.extension_counts.empty()) rep.min_extension = 0;
            return res;
        }
    }
    throw BudgetExhausted("no reserve graph met the codegree bound");
}

NibbleResult nibble_with_reserves(const Hypergraph& g, const Hypergraph& x, const CliqueFamily& h, double bite,
                                  std::uint64_t seed, std::size_t max_rounds)
{
    const int r = g.rank();
    const auto rs = static_cast<std::size_t>(r);
    for (const auto& e : x.edges()) {
        if (g.has_edge(e)) throw InvalidArgument("X must be edge-disjoint from G");
    }
    for (const auto& c : h.cliques) {
        for_each_subset(c, rs, [&](const VertexSet& e) {
            if (!g.has_edge(e)) throw InvalidArgument("clique " + to_string(c) + " is not inside G");
            return true;
        });
    }
    NibbleResult res;
    res.packing.q = h.q;
    std::set<VertexSet> covered;
    std::vector<VertexSet> live(h.cliques.begin(), h.cliques.end());
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    Rng rng(seed);
    auto is_live = [&](const VertexSet& c) {
        bool ok = true;
        for_each_subset(c, rs, [&](const VertexSet& e) {
            ok = !covered.count(e);
            return ok;
        });
        return ok;
    };
    while (!live.empty() && res.rounds < max_rounds) {
        std::map<VertexSet, std::size_t> degree;
        for (const auto& c : live) {
            for_each_subset(c, rs, [&](const VertexSet& e) {
                ++degree[e];
                return true;
            });
        }
        std::size_t d_max = 0;
        for (const auto& [e, d] : degree) d_max = std::max(d_max, d);
        const double prob = std::min(1.0, bite / static_cast<double>(d_max));
        std::size_t gained = 0;
        for (const auto& c : live) {
            if (!rng.bernoulli(prob) || !is_live(c)) continue;
            for_each_subset(c, rs, [&](const VertexSet& e) {
                covered.insert(e);
                return true;
            });
            res.packing.cliques.push_back(c);
            gained += binomial(c.size(), rs);
        }
        ++res.rounds;
        res.covered_per_round.push_back(gained);
        live.erase(std::remove_if(live.begin(), live.end(), [&](const VertexSet& c) { return !is_live(c); }), live.end());
    }
    res.nibble_cliques = res.packing.size();

    std::set<VertexSet> used_x;
    for (const auto& e : g.edges()) {
        if (covered.count(e)) continue;
        bool placed = false;
        for_each_extension(
            g.vertex_count(), e, h.q, r, [&](const VertexSet& f) { return x.has_edge(f) && !used_x.count(f); },
            [&](const VertexSet& k) {
                for_each_subset(k, rs, [&](const VertexSet& f) {
                    if (f != e) used_x.insert(f);
                    return true;
                });
                covered.insert(e);
                res.packing.cliques.push_back(k);
                placed = true;
                return false;
            });
        if (!placed) res.leave.push_back(e);
    }
    res.cover_cliques = res.packing.size() - res.nibble_cliques;
    return res;
}

bool verify_nibble(const Hypergraph& g, const Hypergraph& x, const NibbleResult& res)
{
    Hypergraph both = g;
    both.merge(x);
    if (!verify_packing(both, res.packing)) return false;
    std::set<VertexSet> covered;
    for (const auto& c : res.packing.cliques) {
        for_each_subset(c, static_cast<std::size_t>(g.rank()), [&](const VertexSet& e) {
            if (g.has_edge(e)) covered.insert(e);
            return true;
        });
    }
    for (const auto& e : res.leave) {
        if (!g.has_edge(e) || !covered.insert(e).second) return false;
    }
    return covered.size() == g.edge_count();
}

}  // namespace hd
