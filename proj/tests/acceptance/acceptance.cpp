#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdesign/hyperdesign.hpp"
#include "oracles.hpp"

using namespace hd;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Records a failed condition with a short reason; keeps the first few reasons.
class Checks {
public:
    void expect(bool cond, const std::string& what)
    {
        if (cond) return;
        pass_ = false;
        if (failures_++ < 3) reasons_ += (reasons_.empty() ? "" : "; ") + what;
    }
    Outcome outcome(const std::string& summary) const
    {
        return {pass_, pass_ ? summary : summary + "; failed: " + reasons_};
    }

private:
    bool pass_ = true;
    int failures_ = 0;
    std::string reasons_;
};

std::string fmt(double x, int digits = 2)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string pair_name(int q, int r)
{
    return "(" + std::to_string(q) + "," + std::to_string(r) + ")";
}

Hypergraph with_clique(Hypergraph g, const VertexSet& clique, const VertexSet& skip = {})
{
    for (const auto& e : clique_edges(clique, g.rank())) {
        if (e != skip) g.add_edge(e);
    }
    return g;
}

Hypergraph minus_cliques(Hypergraph g, const std::vector<VertexSet>& cliques)
{
    for (const auto& c : cliques) {
        for (const auto& e : clique_edges(c, g.rank())) g.remove_edge(e);
    }
    return g;
}

Hypergraph two_triangles()
{
    return Hypergraph::from_edges(6, 2, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

const std::vector<std::pair<int, int>> kBoosterPairs{{3, 2}, {4, 2}, {4, 3}};

// ---------------------------------------------------------------------------

Outcome booster_exactness()
{
    Checks c;
    std::string summary;
    for (const auto& [q, r] : kBoosterPairs) {
        const std::string name = pair_name(q, r);
        Stopwatch sw;
        const Booster b = build_booster(q, r);
        const double t = sw.seconds();
        const Hypergraph& graph = b.gadget.graph;
        const Hypergraph with_s = with_clique(graph, b.target);
        c.expect(verify_decomposition(with_s, b.on), name + " on does not decompose B+S");
        c.expect(verify_decomposition(graph, b.off), name + " off does not decompose B");
        c.expect(oracle::decomposes(with_s, b.on.cliques), name + " on rejected by brute force");
        c.expect(oracle::decomposes(graph, b.off.cliques), name + " off rejected by brute force");
        c.expect(std::find(b.on.cliques.begin(), b.on.cliques.end(), b.target) == b.on.cliques.end(),
                 name + " on uses S");
        c.expect(t < 5.0, name + " took " + fmt(t) + " s");
        if (q == 3 && r == 2) {
            c.expect(b.prime == 5, "(3,2) prime " + std::to_string(b.prime));
            c.expect(b.on.size() == 25, "(3,2) |on| = " + std::to_string(b.on.size()));
            c.expect(b.off.size() == 24, "(3,2) |off| = " + std::to_string(b.off.size()));
            c.expect(graph.edge_count() == 72, "(3,2) e(B) = " + std::to_string(graph.edge_count()));
        }
        summary += (summary.empty() ? "" : ", ") + name + " p=" + std::to_string(b.prime) + " |on|=" +
                   std::to_string(b.on.size()) + " |off|=" + std::to_string(b.off.size()) + " e(B)=" +
                   std::to_string(graph.edge_count()) + " " + fmt(t) + "s";
    }
    return c.outcome(summary);
}

Outcome orthogonality()
{
    Checks c;
    std::string summary;
    for (const auto& [q, r] : kBoosterPairs) {
        const std::string name = pair_name(q, r);
        const Booster b = build_orthogonal_booster(q, r);
        const auto edges = clique_edges(b.target, r);
        std::vector<VertexSet> owner;
        for (const auto& e : edges) {
            std::vector<VertexSet> hits;
            for (const auto& k : b.on.cliques) {
                if (oracle::inside(e, k)) hits.push_back(k);
            }
            c.expect(hits.size() == 1, name + " edge of S not covered exactly once");
            owner.push_back(hits.empty() ? VertexSet{} : hits.front());
        }
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            for (std::size_t j = 0; j < edges.size(); ++j) {
                if (i == j) continue;
                ++pairs;
                c.expect(owner[i] != owner[j], name + " edges " + to_string(edges[i]) + " and " + to_string(edges[j]) +
                                                   " share an on-clique");
            }
        }
        const auto limit = oracle::choose(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(r));
        c.expect(static_cast<std::uint64_t>(b.rounds) <= limit, name + " rounds " + std::to_string(b.rounds));
        c.expect(verify_booster(b).ok(), name + " booster checks");
        c.expect(oracle::decomposes(with_clique(b.gadget.graph, b.target), b.on.cliques), name + " on decomposition");
        c.expect(oracle::decomposes(b.gadget.graph, b.off.cliques), name + " off decomposition");
        summary += (summary.empty() ? "" : ", ") + name + " pairs=" + std::to_string(pairs) +
                   " rounds=" + std::to_string(b.rounds) + "/" + std::to_string(limit);
    }
    return c.outcome(summary);
}

Outcome hinge_exactness()
{
    Checks c;
    std::string summary;
    for (const auto& [q, r] : kBoosterPairs) {
        const std::string name = pair_name(q, r);
        const Hinge h = build_hinge(q, r);
        const Hypergraph& graph = h.gadget.graph;
        c.expect(oracle::decomposes(with_clique(graph, h.s1, h.edge), h.left.cliques), name + " left");
        c.expect(oracle::decomposes(with_clique(graph, h.s2, h.edge), h.right.cliques), name + " right");
        VertexSet roots = h.s1;
        roots.insert(roots.end(), h.s2.begin(), h.s2.end());
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        c.expect(h.gadget.roots == roots, name + " roots differ from V(S1)+V(S2)");
        for (const auto& e : graph.edges()) c.expect(!oracle::inside(e, roots), name + " edge inside the roots");
        // Coloring: every non-root colored in [0, q), at most one non-root per color in each edge.
        for (const auto& e : graph.edges()) {
            std::vector<int> seen;
            for (Vertex v : e) {
                if (std::binary_search(roots.begin(), roots.end(), v)) continue;
                const int col = h.gadget.color[v];
                c.expect(col >= 0 && col < q, name + " uncolored vertex");
                c.expect(std::find(seen.begin(), seen.end(), col) == seen.end(), name + " repeated color in an edge");
                seen.push_back(col);
            }
        }
        const HingeCheck hc = verify_hinge(h);
        c.expect(hc.ok(), name + " hinge verifier");
        summary += (summary.empty() ? "" : ", ") + name + " v=" + std::to_string(h.gadget.vertices.size()) +
                   " e=" + std::to_string(graph.edge_count());
    }
    return c.outcome(summary);
}

// Minimum over all orderings of the non-roots of the largest back-degree.
int brute_rooted_degeneracy(const RootedGadget& h)
{
    VertexSet order = h.non_roots();
    int best = INT32_MAX;
    do {
        std::vector<char> placed(h.graph.vertex_count(), 0);
        for (Vertex v : h.roots) placed[v] = 1;
        int worst = 0;
        for (Vertex v : order) {
            placed[v] = 1;
            int deg = 0;
            for (const auto& e : h.graph.edges()) {
                if (!std::binary_search(e.begin(), e.end(), v)) continue;
                bool back = true;
                for (Vertex u : e) back = back && placed[u];
                deg += back;
            }
            worst = std::max(worst, deg);
        }
        best = std::min(best, worst);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

Outcome fake_edge_congruences()
{
    Checks c;
    std::string summary;
    for (const auto& [q, r] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {4, 3}, {5, 3}}) {
        const std::string name = pair_name(q, r);
        VertexSet f;
        for (int i = 0; i < r; ++i) f.push_back(static_cast<Vertex>(i));
        const RootedGadget fake = build_fake_edge(f, q);
        for (int i = 0; i < r; ++i) {
            const auto m = static_cast<std::int64_t>(
                oracle::choose(static_cast<std::uint64_t>(q - i), static_cast<std::uint64_t>(r - i)));
            for (const auto& s : oracle::k_subsets(f, static_cast<std::size_t>(i))) {
                const auto d = static_cast<std::int64_t>(oracle::degree(fake.graph, s));
                c.expect((d - 1) % m == 0, name + " degree of " + to_string(s) + " is " + std::to_string(d));
            }
        }
        c.expect(fake_edge_congruences_hold(fake, f, q), name + " congruence check");
        c.expect(!fake.graph.has_edge(f), name + " contains f");
        const auto expected = static_cast<std::size_t>(q - r) *
                              oracle::choose(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(r));
        c.expect(fake.non_roots().size() == expected, name + " vertex count " + std::to_string(fake.non_roots().size()));
        const int deg = rooted_degeneracy(fake);
        const auto cap = oracle::choose(static_cast<std::uint64_t>(q - 1), static_cast<std::uint64_t>(r - 1));
        c.expect(static_cast<std::uint64_t>(deg) <= cap, name + " degeneracy " + std::to_string(deg));
        if (fake.non_roots().size() <= 8) {
            c.expect(brute_rooted_degeneracy(fake) == deg, name + " degeneracy differs from brute force");
        }
        if (q == 3 && r == 2) c.expect(deg == 2, "(3,2) degeneracy " + std::to_string(deg));
        summary += (summary.empty() ? "" : ", ") + name + " v=" + std::to_string(fake.non_roots().size()) +
                   " deg=" + std::to_string(deg) + "/" + std::to_string(cap);
    }
    return c.outcome(summary);
}

Outcome integral_machinery()
{
    Checks c;
    std::string summary;
    const std::vector<std::pair<std::string, Hypergraph>> cases{{"K3", Hypergraph::complete(3, 2)},
                                                                {"C6", Hypergraph::cycle(6)},
                                                                {"2K3", two_triangles()},
                                                                {"K7", Hypergraph::complete(7, 2)}};
    for (const auto& [name, l] : cases) {
        const auto unit = IntegralHypergraph::unit(l);
        Stopwatch sw;
        const auto res = edge_intersecting_integral_decompose(unit, 3);
        const double t = sw.seconds();
        const auto bd = oracle::boundary(res.phi.weights, 2);
        std::map<VertexSet, std::int64_t> expected;
        for (const auto& e : l.edges()) expected[e] = 1;
        c.expect(bd == expected, name + " boundary differs from L");
        c.expect(boundary_matches(res.phi, unit.psi), name + " boundary_matches");
        c.expect(is_edge_intersecting(res.phi, l), name + " is_edge_intersecting");
        const VertexSet core = l.support();
        for (const auto& [clique, w] : res.phi.weights) {
            VertexSet meet;
            for (Vertex v : clique) {
                if (std::binary_search(core.begin(), core.end(), v)) meet.push_back(v);
            }
            bool ok = meet.empty();
            for (const auto& e : l.edges()) ok = ok || oracle::inside(meet, e);
            c.expect(ok, name + " clique " + to_string(clique) + " meets V(L) outside an edge");
        }
        c.expect(res.phi.ground == l.vertex_count() + 5, name + " ground " + std::to_string(res.phi.ground));
        c.expect(res.fresh.size() == 5, name + " fresh vertices");
        c.expect(t < 10.0, name + " took " + fmt(t) + " s");
        summary += (summary.empty() ? "" : ", ") + name + " |supp|=" + std::to_string(res.phi.weights.size()) +
                   " l1=" + std::to_string(res.phi.l1()) + " " + fmt(t) + "s";
    }
    return c.outcome(summary);
}

bool same_except(const AbsorberReport& a, const AbsorberReport& b, bool AbsorberReport::*flag)
{
    const std::vector<bool AbsorberReport::*> flags{&AbsorberReport::roots_independent, &AbsorberReport::a1_decomposes,
                                                    &AbsorberReport::a2_decomposes, &AbsorberReport::edge_intersecting,
                                                    &AbsorberReport::partite_degenerate};
    for (auto f : flags) {
        if (f == flag ? a.*f == b.*f : a.*f != b.*f) return false;
    }
    return true;
}

Outcome absorber_checks()
{
    Checks c;
    std::string summary;
    for (const auto& [name, l] : std::vector<std::pair<std::string, Hypergraph>>{{"C6", Hypergraph::cycle(6)},
                                                                                {"2K3", two_triangles()}}) {
        Stopwatch sw;
        const Absorber a = build_absorber(l, 3);
        const AbsorberReport rep = verify_absorber(a);
        c.expect(rep.roots_independent, name + " roots");
        c.expect(rep.a1_decomposes, name + " a1");
        c.expect(rep.a2_decomposes, name + " a2");
        c.expect(rep.edge_intersecting, name + " edge-intersecting");
        c.expect(rep.partite_degenerate, name + " partite degenerate");
        c.expect(oracle::decomposes(a.gadget.graph, a.a1.cliques), name + " a1 brute force");
        Hypergraph with_l = a.gadget.graph;
        with_l.merge(l);
        c.expect(oracle::decomposes(with_l, a.a2.cliques), name + " a2 brute force");
        for (const auto& e : a.gadget.graph.edges()) {
            c.expect(!oracle::inside(e, a.gadget.roots), name + " edge inside roots");
        }

        Absorber m1 = a;
        m1.a1.cliques.erase(m1.a1.cliques.begin() + static_cast<std::ptrdiff_t>(m1.a1.size() / 2));
        c.expect(same_except(rep, verify_absorber(m1), &AbsorberReport::a1_decomposes), name + " a1 mutation");
        Absorber m2 = a;
        m2.a2.cliques.erase(m2.a2.cliques.begin() + static_cast<std::ptrdiff_t>(m2.a2.size() / 3));
        c.expect(same_except(rep, verify_absorber(m2), &AbsorberReport::a2_decomposes), name + " a2 mutation");
        summary += (summary.empty() ? "" : ", ") + name + " v=" + std::to_string(rep.vertices) +
                   " e=" + std::to_string(rep.edges) + " " + fmt(sw.seconds()) + "s";
    }
    return c.outcome(summary);
}

Outcome omni_absorber()
{
    Checks c;
    std::string summary;
    const std::vector<std::pair<std::string, Hypergraph>> cases{
        {"bowtie", Hypergraph::from_edges(5, 2, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}})},
        {"K4", Hypergraph::complete(4, 2)},
        {"C6+2", Hypergraph::from_edges(6, 2, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 2}, {3, 5}})},
        {"2K3+2", Hypergraph::from_edges(6, 2, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}})}};
    for (const auto& [name, x] : cases) {
        Stopwatch sw;
        const OmniAbsorber omni = build_omni_absorber_exhaustive(x, 3, 8);
        const std::vector<VertexSet> edges(x.edges().begin(), x.edges().end());
        std::size_t divisible = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
            Hypergraph l(x.vertex_count(), 2);
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (mask >> i & 1) l.add_edge(edges[i]);
            }
            if (!oracle::divisible(l, 3)) continue;
            ++divisible;
            const CliqueFamily fam = omni.decomposition_for(l);
            Hypergraph host = omni.graph;
            host.merge(l);
            c.expect(verify_decomposition(host, fam), name + " subgraph " + std::to_string(mask));
            c.expect(oracle::decomposes(host, fam.cliques), name + " brute force " + std::to_string(mask));
        }
        c.expect(divisible == omni.divisible.size(), name + " divisible count");
        c.expect(verify_omni_absorber(omni).ok(), name + " omni verifier");
        summary += (summary.empty() ? "" : ", ") + name + " e(X)=" + std::to_string(x.edge_count()) +
                   " divisible=" + std::to_string(divisible) + " v(A)=" + std::to_string(omni.graph.vertex_count()) +
                   " " + fmt(sw.seconds()) + "s";
    }
    return c.outcome(summary);
}

Outcome fixed_fractional_exact()
{
    Checks c;
    const Hypergraph g = Hypergraph::complete(7, 2);
    const auto inputs = fixed_fractional_inputs(g, 3);
    if (!inputs) return {false, "K7 inputs infeasible"};
    Rng rng(2024);
    const long m = static_cast<long>(g.edge_count());
    std::size_t exact = 0;
    for (int trial = 0; trial < 50; ++trial) {
        RationalEdgeMap phi;
        const long den = 1 + static_cast<long>(rng.below(997));
        for (const auto& e : g.edges()) {
            mpq_class x(static_cast<long>(rng.below(static_cast<std::uint64_t>(den) + 1)), den * m);
            x.canonicalize();
            phi[e] = 1 - x;
        }
        c.expect(fixed_targets_in_range(g, phi), "target out of range");
        const FractionalWeighting psi = fixed_fractional(g, 3, phi, inputs->phi0, inputs->phi_e);
        const auto bd = oracle::boundary(psi.weights, 2);
        bool ok = bd.size() == phi.size();
        for (const auto& [e, v] : phi) {
            const auto it = bd.find(e);
            ok = ok && it != bd.end() && it->second == v;
        }
        for (const auto& [k, w] : psi.weights) ok = ok && w >= 0 && w <= 1 && g.has_edge(VertexSet{k[0], k[1]});
        c.expect(ok, "trial " + std::to_string(trial) + " boundary mismatch");
        c.expect(verify_fractional(g, psi, phi), "trial " + std::to_string(trial) + " verifier");
        exact += ok;
    }
    return c.outcome(std::to_string(exact) + "/50 exact");
}

Hypergraph random_uniform(std::size_t n, int r, double p, Rng& rng)
{
    Hypergraph g(n, r);
    for (const auto& e : oracle::k_subsets(oracle::all_vertices(n), static_cast<std::size_t>(r))) {
        if (rng.bernoulli(p)) g.add_edge(e);
    }
    return g;
}

Outcome embedding_counts()
{
    Checks c;
    Rng rng(77);
    std::size_t nonzero = 0;
    std::uint64_t total = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int r = 2 + static_cast<int>(rng.below(2));
        const std::size_t roots = 1 + rng.below(3);
        const std::size_t extra = 1 + rng.below(4);
        const auto h = oracle::random_gadget(roots, extra, r, 0.4 + 0.3 * rng.uniform01(), rng.next());
        const std::size_t n = roots + extra + rng.below(13 - roots - extra);
        const Hypergraph g = random_uniform(n, r, 0.5 + 0.3 * rng.uniform01(), rng);
        VertexSet hosts = oracle::all_vertices(n);
        rng.shuffle(hosts);
        const std::vector<Vertex> image(hosts.begin(), hosts.begin() + static_cast<std::ptrdiff_t>(roots));
        const std::uint64_t expect = oracle::embeddings(g, h, image);
        const std::uint64_t layered = count_layered_embeddings(g, h, image);
        const std::uint64_t counted = embed_degenerate(g, h, image, EmbedMode::Count).count;
        c.expect(layered == expect && counted == expect,
                 "trial " + std::to_string(trial) + ": brute " + std::to_string(expect) + " layered " +
                     std::to_string(layered) + " degenerate " + std::to_string(counted));
        nonzero += expect > 0;
        total += expect;
    }
    return c.outcome("100 pairs, " + std::to_string(nonzero) + " with embeddings, " + std::to_string(total) +
                     " embeddings in total");
}

Outcome spencer()
{
    Checks c;
    Rng rng(31337);
    std::size_t instances = 0;
    std::size_t draws = 0;
    std::size_t smallest = SIZE_MAX;
    std::size_t edges = 0;
    while (instances < 100) {
        ++draws;
        const int r = 2 + static_cast<int>(rng.below(2));
        const int q = 3 + static_cast<int>(rng.below(4));
        const std::size_t n = 2 * static_cast<std::size_t>(q) + rng.below(150);
        double c_r = 1.0 / r;
        for (int i = 0; i < r; ++i) c_r /= 6.0;
        std::vector<double> dens;
        for (int i = 1; i <= r; ++i) {
            dens.push_back((0.5 + 0.5 * rng.uniform01()) * c_r /
                           static_cast<double>(oracle::choose(static_cast<std::uint64_t>(q),
                                                              static_cast<std::uint64_t>(i - 1))));
        }
        const Hypergraph g = random_host(n, dens, rng.next());
        if (!density_caps_hold(g, q)) continue;
        ++instances;
        edges += g.edge_count();
        const auto res = spencer_alteration(g, q, SpencerMode::Derandomized);
        const std::string tag = "r=" + std::to_string(r) + " q=" + std::to_string(q) + " n=" + std::to_string(n);
        c.expect(res.a_star.size() >= static_cast<std::size_t>(q), tag + " |A*|=" + std::to_string(res.a_star.size()));
        // Induced-edge scan.
        std::size_t induced = 0;
        for (const auto& e : g.edges()) induced += oracle::inside(e, res.a_star);
        c.expect(induced == 0, tag + " A* not independent");
        smallest = std::min(smallest, res.a_star.size());
    }
    return c.outcome("100 instances (" + std::to_string(draws) + " drawn, " + std::to_string(edges) +
                     " edges in total), smallest |A*|=" + std::to_string(smallest));
}

std::vector<Hypergraph> all_graphs(std::size_t n, int r)
{
    const auto sets = oracle::k_subsets(oracle::all_vertices(n), static_cast<std::size_t>(r));
    std::vector<Hypergraph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sets.size()); ++mask) {
        Hypergraph g(n, r);
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (mask >> i & 1) g.add_edge(sets[i]);
        }
        out.push_back(std::move(g));
    }
    return out;
}

Hypergraph random_bounded(std::size_t n, int r, double p, Rng& rng)
{
    Hypergraph g(n, r);
    for (int s = 1; s <= r; ++s) {
        for (const auto& e : oracle::k_subsets(oracle::all_vertices(n), static_cast<std::size_t>(s))) {
            if (rng.bernoulli(p)) g.add_edge(e);
        }
    }
    return g;
}

Outcome supersaturation_tail()
{
    Checks c;
    Rng rng(4243);
    double worst = 0;
    for (int inst = 0; inst < 20; ++inst) {
        const int r = 2 + static_cast<int>(rng.below(2));
        const std::size_t n = 10 + rng.below(7);
        const std::size_t k = 4 + rng.below(2);
        const double beta = 0.2 + 0.6 * rng.uniform01();
        const Hypergraph g = random_uniform(n, r, 0.3 + 0.4 * rng.uniform01(), rng);
        const auto ex = subset_density_tail(g, k, beta, 0, rng.next());
        const auto sm = subset_density_tail(g, k, beta, 4000, rng.next(), 5'000'000, true);
        c.expect(ex.exhaustive && !sm.exhaustive, "instance " + std::to_string(inst) + " modes");
        const double sigma = std::sqrt(ex.fraction * (1 - ex.fraction) / static_cast<double>(sm.checked));
        const double gap = std::abs(sm.fraction - ex.fraction);
        if (sigma > 0) worst = std::max(worst, gap / sigma);
        c.expect(gap <= 3 * sigma + 1e-12, "instance " + std::to_string(inst) + " gap " + fmt(gap, 4) +
                                               " sigma " + fmt(sigma, 4));
    }

    // count_copies against injective-map enumeration.
    std::size_t pairs = 0;
    auto compare = [&](const Hypergraph& g, const Hypergraph& f) {
        ++pairs;
        const auto lib = count_copies(g, f);
        const auto ref = oracle::copies(g, f);
        c.expect(lib == ref, "copies " + std::to_string(lib) + " vs " + std::to_string(ref));
    };
    std::vector<Hypergraph> patterns2, patterns3;
    for (std::size_t v = 1; v <= 4; ++v) {
        for (auto& f : all_graphs(v, 2)) patterns2.push_back(std::move(f));
    }
    for (std::size_t v = 3; v <= 4; ++v) {
        for (auto& f : all_graphs(v, 3)) patterns3.push_back(std::move(f));
    }
    // Every 2-graph on up to 5 vertices against every pattern.
    for (std::size_t v = 1; v <= 5; ++v) {
        for (const auto& g : all_graphs(v, 2)) {
            for (const auto& f : patterns2) compare(g, f);
        }
    }
    for (int i = 0; i < 20; ++i) {
        const Hypergraph g2 = random_uniform(6 + rng.below(3), 2, 0.3 + 0.5 * rng.uniform01(), rng);
        for (const auto& f : patterns2) compare(g2, f);
        const Hypergraph g3 = random_uniform(5 + rng.below(4), 3, 0.3 + 0.5 * rng.uniform01(), rng);
        for (const auto& f : patterns3) compare(g3, f);
        const Hypergraph gb = random_bounded(5 + rng.below(4), 3, 0.2 + 0.5 * rng.uniform01(), rng);
        for (int j = 0; j < 10; ++j) compare(gb, random_bounded(2 + rng.below(3), 3, 0.5, rng));
    }
    return c.outcome("20 tail instances, worst gap " + fmt(worst) + " sigma; " + std::to_string(pairs) +
                     " copy counts");
}

Outcome pipeline_runs()
{
    Checks c;
    std::string summary;
    const std::vector<std::pair<std::string, Hypergraph>> cases{
        {"K13", Hypergraph::complete(13, 2)},
        {"K19", Hypergraph::complete(19, 2)},
        {"K13-K3", minus_cliques(Hypergraph::complete(13, 2), {{0, 1, 2}})},
        {"K19-K3", minus_cliques(Hypergraph::complete(19, 2), {{3, 7, 11}})},
        {"K13-C6", [] {
             auto g = Hypergraph::complete(13, 2);
             const auto c6 = Hypergraph::cycle(6);
             for (const auto& e : c6.edges()) g.remove_edge(e);
             return g;
         }()},
        {"K19-2K3", minus_cliques(Hypergraph::complete(19, 2), {{0, 1, 2}, {3, 4, 5}})}};
    for (const auto& [name, g] : cases) {
        if (!oracle::divisible(g, 3)) {
            c.expect(false, name + " is not divisible");
            continue;
        }
        Stopwatch sw;
        const PipelineResult first = decompose(g, 3, {}, 1);
        const double t = sw.seconds();
        const PipelineResult second = decompose(g, 3, {}, 1);
        c.expect(t < 60.0, name + " took " + fmt(t) + " s");
        c.expect(report_text(first.trace) == report_text(second.trace) &&
                     report_json(first.trace) == report_json(second.trace),
                 name + " trace differs between runs");
        bool ok = first.success() && verify_decomposition(first.host, first.decomposition) &&
                  oracle::decomposes(first.host, first.decomposition.cliques);
        for (const auto& e : g.edges()) ok = ok && first.host.has_edge(e);
        std::string note;
        if (!ok) {
            const auto referee = exact_cover_decompose(g, 3);
            const bool exists = referee.decomposition && verify_decomposition(g, *referee.decomposition);
            note = exists ? " (failed; exact cover found a decomposition)" : " (failed; no referee decomposition)";
            c.expect(false, name + " stage " + std::to_string(first.trace.failed_stage.value_or(0)) + ": " +
                                first.trace.failure + note);
        }
        summary += (summary.empty() ? "" : ", ") + name + " " + std::to_string(first.decomposition.size()) +
                   " cliques " + fmt(t) + "s" + note;
    }
    return c.outcome(summary);
}

Outcome nibble_sanity()
{
    Checks c;
    const Hypergraph g = Hypergraph::complete(15, 2);
    std::vector<double> fractions;
    std::string leaves;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto res = sample_reserves(g, 3, 0.5, seed);
        Hypergraph j = g;
        for (const auto& e : res.x.edges()) j.remove_edge(e);
        const auto pack = fractional_packing(j, 3);
        const mpq_class cval = pack.psi.max_weight() * mpq_class(static_cast<unsigned long>(binomial(15 - 2, 3 - 2)));
        CliqueFamily h{3, {}};
        if (cval > 0) h = boost_regularity(j, pack.psi, cval, Rng::derive(seed, 1)).family;
        const auto nib = nibble_with_reserves(j, res.x, h, 0.5, Rng::derive(seed, 2));
        c.expect(verify_nibble(j, res.x, nib), "seed " + std::to_string(seed) + " nibble verifier");
        Hypergraph both = j;
        both.merge(res.x);
        c.expect(verify_packing(both, nib.packing), "seed " + std::to_string(seed) + " packing verifier");
        // Edge-disjointness by direct count.
        std::map<VertexSet, int> use;
        for (const auto& k : nib.packing.cliques) {
            for (const auto& e : oracle::k_subsets(k, 2)) ++use[e];
        }
        bool disjoint = true;
        for (const auto& [e, n] : use) disjoint = disjoint && n == 1 && both.has_edge(e);
        c.expect(disjoint, "seed " + std::to_string(seed) + " cliques overlap");
        fractions.push_back(static_cast<double>(nib.leave.size()) / static_cast<double>(j.edge_count()));
        leaves += (leaves.empty() ? "" : " ") + std::to_string(nib.leave.size());
    }
    std::sort(fractions.begin(), fractions.end());
    const double median = (fractions[9] + fractions[10]) / 2;
    c.expect(median < 0.15, "median leave fraction " + fmt(median, 3));
    return c.outcome("median leave " + fmt(100 * median, 1) + "% of e(J); leaves " + leaves);
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"booster exactness", booster_exactness},
        {"orthogonality", orthogonality},
        {"hinge exactness", hinge_exactness},
        {"fake-edge congruences", fake_edge_congruences},
        {"integral machinery", integral_machinery},
        {"absorber checks and mutations", absorber_checks},
        {"omni-absorber on small X", omni_absorber},
        {"fixed fractional exactness", fixed_fractional_exact},
        {"embedding counts", embedding_counts},
        {"alteration independence", spencer},
        {"supersaturation and tail", supersaturation_tail},
        {"pipeline decompositions", pipeline_runs},
        {"nibble sanity", nibble_sanity}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Stopwatch sw;
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        failed += !out.pass;
        std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " " << criteria[i].first << ": "
                  << out.detail << " [" << fmt(sw.seconds()) << "s]" << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
