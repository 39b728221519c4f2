#include "hyperdesign/absorber.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/io.hpp"

namespace hd {

namespace {

// A gadget template in local labels, copied onto fresh vertices per use.
struct Stamp {
    std::vector<Vertex> map;

    VertexSet operator()(const VertexSet& s) const { return relabel(s, map); }
};

// Allocates labels for the non-root part of a local gadget whose first
// `root_count` labels are roots with the given images.
Stamp stamp_onto(const RootedGadget& local, const VertexSet& root_images, std::size_t root_count, RootedGadget& out,
                 Layer& layer)
{
    Stamp st;
    const std::size_t n_local = local.graph.vertex_count();
    st.map.resize(n_local);
    for (std::size_t v = 0; v < root_count; ++v) st.map[v] = root_images[v];
    const Vertex first = out.graph.add_vertices(n_local - root_count);
    out.color.resize(out.graph.vertex_count(), -1);
    for (std::size_t v = root_count; v < n_local; ++v) {
        st.map[v] = first + static_cast<Vertex>(v - root_count);
        out.color[st.map[v]] = local.color[v];
        layer.vertices.push_back(st.map[v]);
        layer.part.push_back(local.color[v]);
    }
    for (const auto& e : local.graph.edges()) out.graph.add_edge(st(e));
    return st;
}

}  // namespace

Absorber build_absorber(const Hypergraph& l, int q)
{
    const int r = l.rank();
    if (l.edge_count() && !l.uniform()) throw InvalidArgument("L must be uniform");
    if (q <= r) throw InvalidArgument("need q > r");
    if (!is_divisible(l, q)) throw NotDivisible("L is not K_q^r-divisible");
    const auto rs = static_cast<std::size_t>(r);
    const auto qs = static_cast<std::size_t>(q);

    Absorber a;
    a.target = l;
    a.q = q;
    a.a1.q = a.a2.q = q;
    const std::size_t n0 = l.vertex_count();
    const std::size_t padded = std::max(n0, qs + rs);

    IntegralHypergraph lp = IntegralHypergraph::unit(Hypergraph::from_edges(padded, r, std::vector<VertexSet>(l.edges().begin(), l.edges().end())));
    WilsonOptions options;
    options.minimize_l1 = true;
    auto& st = a.structure;
    st.phi = edge_intersecting_integral_decompose(lp, q, options).phi;
    const std::size_t ground = st.phi.ground;
    st.ground_fresh = range_set(static_cast<Vertex>(n0), static_cast<Vertex>(ground));

    RootedGadget& g = a.gadget;
    g.graph = Hypergraph(ground, r);
    g.roots = range_set(n0);
    g.color.assign(ground, -1);
    Layer base;
    for (Vertex v : st.ground_fresh) {
        g.color[v] = static_cast<int>(v % qs);
        base.vertices.push_back(v);
        base.part.push_back(g.color[v]);
    }
    g.layers.push_back(std::move(base));

    for (const auto& c : st.phi.positives()) {
        st.elements.push_back(c);
        st.sign.push_back(1);
    }
    for (const auto& c : st.phi.negatives()) {
        st.elements.push_back(c);
        st.sign.push_back(-1);
    }

    // Boosters, one per element.
    const Booster booster = st.elements.empty() ? Booster{} : build_orthogonal_booster(q, r);
    std::vector<std::map<VertexSet, VertexSet>> on_at(st.elements.size());  // O_{k,e}
    std::vector<std::vector<VertexSet>> on_cliques(st.elements.size());
    for (std::size_t k = 0; k < st.elements.size(); ++k) {
        Layer layer;
        const Stamp stamp = stamp_onto(booster.gadget, st.elements[k], qs, g, layer);
        st.booster_vertices += layer.vertices.size();
        g.layers.push_back(std::move(layer));
        for (const auto& c : booster.on.cliques) on_cliques[k].push_back(stamp(c));
        for (const auto& e : subsets(range_set(qs), rs)) {
            on_at[k][stamp(e)] = stamp(clique_containing(booster.on, e));
        }
        auto& off_target = st.sign[k] > 0 ? a.a1 : a.a2;
        for (const auto& c : booster.off.cliques) off_target.cliques.push_back(stamp(c));
    }

    // Matchings M_f over every ground r-set meeting some element.
    std::map<VertexSet, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> at;
    for (std::size_t k = 0; k < st.elements.size(); ++k) {
        for (const auto& f : subsets(st.elements[k], rs)) {
            auto& slot = at[f];
            (st.sign[k] > 0 ? slot.first : slot.second).push_back(k);
        }
    }
    std::vector<std::set<VertexSet>> matched(st.elements.size());
    for (auto& [f, slot] : at) {
        auto& [pos, neg] = slot;
        const bool in_l = l.has_edge(f);
        if (pos.size() != neg.size() + (in_l ? 1 : 0)) throw Error("matching infeasible at " + to_string(f));
        std::size_t first = 0;
        if (in_l) {
            st.unmatched.emplace_back(f, pos[0]);
            first = 1;
        }
        for (std::size_t i = 0; i < neg.size(); ++i) {
            st.matches.push_back({f, neg[i], pos[first + i]});
            matched[neg[i]].insert(f);
            matched[pos[first + i]].insert(f);
        }
    }
    for (const auto& e : l.edges()) {
        if (!at.count(e)) throw Error("edge " + to_string(e) + " carries no positive element");
    }

    // Hinges, one per matched pair.
    if (!st.matches.empty()) {
        const Hinge hinge = build_hinge(q, r);
        const VertexSet local_e = hinge.edge;
        const VertexSet local_s1 = set_difference(hinge.s1, local_e);
        const VertexSet local_s2 = set_difference(hinge.s2, local_e);
        const std::size_t root_count = 2 * qs - rs;
        for (const auto& m : st.matches) {
            const VertexSet& o1 = on_at[m.negative].at(m.f);
            const VertexSet& o2 = on_at[m.positive].at(m.f);
            if (set_intersection(o1, o2) != m.f) throw Error("hinge cliques meet outside " + to_string(m.f));
            VertexSet images(root_count);
            const VertexSet rest1 = set_difference(o1, m.f);
            const VertexSet rest2 = set_difference(o2, m.f);
            for (std::size_t i = 0; i < rs; ++i) images[local_e[i]] = m.f[i];
            for (std::size_t i = 0; i < rest1.size(); ++i) images[local_s1[i]] = rest1[i];
            for (std::size_t i = 0; i < rest2.size(); ++i) images[local_s2[i]] = rest2[i];
            Layer layer;
            const Stamp stamp = stamp_onto(hinge.gadget, images, root_count, g, layer);
            st.hinge_vertices += layer.vertices.size();
            g.layers.push_back(std::move(layer));
            for (const auto& c : hinge.left.cliques) a.a1.cliques.push_back(stamp(c));
            for (const auto& c : hinge.right.cliques) a.a2.cliques.push_back(stamp(c));
        }
    }

    // On-decompositions with the cliques through matched edges removed.
    for (std::size_t k = 0; k < st.elements.size(); ++k) {
        std::set<VertexSet> removed;
        for (const auto& [e, c] : on_at[k]) {
            if (st.sign[k] < 0 || matched[k].count(e)) removed.insert(c);
        }
        auto& dst = st.sign[k] < 0 ? a.a1 : a.a2;
        for (const auto& c : on_cliques[k]) {
            if (!removed.count(c)) dst.cliques.push_back(c);
        }
    }
    std::sort(a.a1.cliques.begin(), a.a1.cliques.end());
    std::sort(a.a2.cliques.begin(), a.a2.cliques.end());
    g.vertices = range_set(g.graph.vertex_count());
    g.color.resize(g.graph.vertex_count(), -1);
    return a;
}

AbsorberReport verify_absorber(const Absorber& a)
{
    AbsorberReport rep;
    const auto& g = a.gadget;
    rep.vertices = g.graph.vertex_count();
    rep.edges = g.graph.edge_count();
    rep.layers = g.layers.size();
    rep.boosters = a.structure.elements.size();
    rep.hinges = a.structure.matches.size();
    rep.roots_independent = roots_independent(g);
    rep.a1_decomposes = verify_decomposition(g.graph, a.a1);
    if (rep.roots_independent) {
        Hypergraph with_l = g.graph;
        for (const auto& e : a.target.edges()) with_l.add_edge(e);
        rep.a2_decomposes = verify_decomposition(with_l, a.a2);
    }
    const VertexSet support = a.target.support();
    rep.edge_intersecting = true;
    for (const auto& e : g.graph.edges()) {
        const VertexSet meet = set_intersection(e, support);
        if (meet.empty()) continue;
        bool found = false;
        for (const auto& f : a.target.edges()) {
            if (is_subset(meet, f)) {
                found = true;
                break;
            }
        }
        if (!found) {
            rep.edge_intersecting = false;
            break;
        }
    }
    rep.partite_degenerate = is_rooted_partite_degenerate(g, 2, a.q);
    return rep;
}

void write_absorber_bundle(const std::string& dir, const Absorber& a)
{
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/gadget.txt");
        write_gadget(out, a.gadget, {{"a1", a.a1}, {"a2", a.a2}});
    }
    save_hypergraph(dir + "/target.txt", a.target);
    std::ofstream out(dir + "/manifest.txt");
    const auto& st = a.structure;
    out << "q " << a.q << '\n'
        << "r " << a.target.rank() << '\n'
        << "target_vertices " << a.target.vertex_count() << '\n'
        << "target_edges " << a.target.edge_count() << '\n'
        << "phi_support " << st.phi.weights.size() << '\n'
        << "phi_l1 " << st.phi.l1() << '\n'
        << "boosters " << st.elements.size() << '\n'
        << "hinges " << st.matches.size() << '\n'
        << "vertices " << a.gadget.graph.vertex_count() << '\n'
        << "edges " << a.gadget.graph.edge_count() << '\n'
        << "a1 " << a.a1.size() << '\n'
        << "a2 " << a.a2.size() << '\n';
    std::ofstream phi(dir + "/phi.txt");
    write_valuation(phi, st.phi);
}

// --- omni-absorber ----------------------------------------------------------

OmniAbsorber build_omni_absorber_exhaustive(const Hypergraph& x, int q, std::size_t edge_cap)
{
    if (x.edge_count() > edge_cap) throw CapExceeded("omni-absorber needs e(X) <= " + std::to_string(edge_cap));
    if (x.edge_count() && !x.uniform()) throw InvalidArgument("X must be uniform");
    OmniAbsorber omni;
    omni.x = x;
    omni.q = q;
    omni.family.q = q;
    const std::size_t n = x.vertex_count();
    omni.graph = Hypergraph(n, x.rank());
    const std::vector<VertexSet> edges(x.edges().begin(), x.edges().end());
    const std::size_t m = edges.size();
    std::set<VertexSet> family;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<VertexSet> chosen;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1) chosen.push_back(edges[i]);
        }
        Hypergraph l = Hypergraph::from_edges(n, x.rank(), chosen);
        if (!is_divisible(l, q)) continue;
        const Absorber a = build_absorber(l, q);
        // Non-root labels of A_L move past everything built so far.
        const std::size_t offset = omni.graph.vertex_count() - n;
        std::vector<Vertex> map(a.gadget.graph.vertex_count());
        for (std::size_t v = 0; v < map.size(); ++v) map[v] = v < n ? static_cast<Vertex>(v) : static_cast<Vertex>(v + offset);
        omni.graph.add_vertices(a.gadget.graph.vertex_count() - n);
        for (const auto& e : a.gadget.graph.edges()) omni.graph.add_edge(relabel(e, map));
        CliqueFamily a1{q, {}}, a2{q, {}};
        for (const auto& c : a.a1.cliques) a1.cliques.push_back(relabel(c, map));
        for (const auto& c : a.a2.cliques) a2.cliques.push_back(relabel(c, map));
        family.insert(a1.cliques.begin(), a1.cliques.end());
        family.insert(a2.cliques.begin(), a2.cliques.end());
        omni.divisible.push_back(std::move(l));
        omni.a1.push_back(std::move(a1));
        omni.a2.push_back(std::move(a2));
        omni.layer_count.push_back(a.gadget.layers.size());
    }
    omni.family.cliques.assign(family.begin(), family.end());
    return omni;
}

CliqueFamily OmniAbsorber::decomposition_for(const Hypergraph& l) const
{
    std::size_t index = divisible.size();
    for (std::size_t i = 0; i < divisible.size(); ++i) {
        if (divisible[i].edges() == l.edges()) index = i;
    }
    if (index == divisible.size()) throw InvalidArgument("L is not a divisible subgraph of X");
    CliqueFamily out{q, {}};
    out.append(a2[index]);
    for (std::size_t i = 0; i < divisible.size(); ++i) {
        if (i != index) out.append(a1[i]);
    }
    return out;
}

std::size_t OmniAbsorber::refinement() const
{
    std::map<VertexSet, std::size_t> count;
    const auto r = static_cast<std::size_t>(x.rank());
    for (const auto& c : family.cliques) {
        for_each_subset(c, r, [&](const VertexSet& e) {
            if (graph.has_edge(e) || x.has_edge(e)) ++count[e];
            return true;
        });
    }
    std::size_t best = 0;
    for (const auto& [e, k] : count) best = std::max(best, k);
    return best;
}

OmniReport verify_omni_absorber(const OmniAbsorber& omni)
{
    OmniReport rep;
    rep.divisible_subgraphs = omni.divisible.size();
    rep.refinement = omni.refinement();
    rep.vertices = omni.graph.vertex_count();
    rep.edges = omni.graph.edge_count();
    for (const auto& l : omni.divisible) {
        Hypergraph with_l = omni.graph;
        bool disjoint = true;
        for (const auto& e : l.edges()) disjoint = with_l.add_edge(e) && disjoint;
        if (disjoint && verify_decomposition(with_l, omni.decomposition_for(l))) ++rep.verified;
    }
    return rep;
}

}  // namespace hd
