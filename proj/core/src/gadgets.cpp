#include "hyperdesign/gadgets.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/io.hpp"

namespace hd {

VertexSet RootedGadget::non_roots() const
{
    return set_difference(vertices, roots);
}

// --- finite field helpers --------------------------------------------------

namespace {

bool is_prime(int n)
{
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

int mod(long long a, int p)
{
    const long long m = a % p;
    return static_cast<int>(m < 0 ? m + p : m);
}

int inverse_mod(int a, int p)
{
    // p is prime: a^(p-2).
    long long result = 1, base = mod(a, p);
    if (base == 0) throw Error("inverse of zero");
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<int>(result);
}

int determinant_mod(std::vector<std::vector<int>> a, int p)
{
    const std::size_t n = a.size();
    long long det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a[pivot][c] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != c) {
            std::swap(a[pivot], a[c]);
            det = mod(-det, p);
        }
        det = det * a[c][c] % p;
        const int inv = inverse_mod(a[c][c], p);
        for (std::size_t row = c + 1; row < n; ++row) {
            const long long factor = static_cast<long long>(a[row][c]) * inv % p;
            for (std::size_t k = c; k < n; ++k) a[row][k] = mod(a[row][k] - factor * a[c][k], p);
        }
    }
    return static_cast<int>(det);
}

std::vector<VertexSet> index_subsets(std::size_t n, std::size_t k)
{
    return subsets_of_range(n, k);
}

}  // namespace

int booster_prime(int q, int r)
{
    if (!(q > r && r >= 1)) throw InvalidArgument("booster needs q > r >= 1");
    const int lo = 2 * q - r;
    for (int p = lo + 1; p < 2 * lo; ++p) {
        if (is_prime(p)) return p;
    }
    throw Error("no prime in (" + std::to_string(lo) + ", " + std::to_string(2 * lo) + ")");
}

std::vector<std::vector<int>> cauchy_matrix(int q, int r, int p)
{
    std::vector<std::vector<int>> m(static_cast<std::size_t>(q - r), std::vector<int>(static_cast<std::size_t>(q)));
    for (int i = 1; i <= q - r; ++i) {
        for (int j = 1; j <= q; ++j) {
            const int x = i;
            const int y = q - r + j;
            m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = inverse_mod(mod(x - y, p), p);
        }
    }
    return m;
}

bool all_square_submatrices_invertible(const std::vector<std::vector<int>>& m, int p)
{
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        for (const auto& rs : index_subsets(rows, k)) {
            for (const auto& cs : index_subsets(cols, k)) {
                std::vector<std::vector<int>> sub(k, std::vector<int>(k));
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[rs[i]][cs[j]];
                }
                if (determinant_mod(sub, p) == 0) return false;
            }
        }
    }
    return true;
}

// --- anti-edges and fake-edges --------------------------------------------

namespace {

void require_edge_shape(const VertexSet& f, int q)
{
    if (f.empty()) throw InvalidArgument("f must be nonempty");
    if (static_cast<int>(f.size()) >= q) throw InvalidArgument("need q > |f|");
    if (normalized(f) != f) throw InvalidArgument("f must be a sorted set");
}

// Adds AntiEdge(t) to g with fresh vertices; returns them.
VertexSet add_anti_edge(Hypergraph& g, const VertexSet& t, int q)
{
    const auto r = t.size();
    const auto k = static_cast<std::size_t>(q) - r;
    const Vertex first = g.add_vertices(k);
    const VertexSet fresh = range_set(first, first + static_cast<Vertex>(k));
    const VertexSet all = set_union(t, fresh);
    for (auto& e : subsets(all, r)) {
        if (e != t) g.add_edge(std::move(e));
    }
    return fresh;
}

RootedGadget empty_gadget_on(const VertexSet& f)
{
    RootedGadget h;
    h.graph = Hypergraph(static_cast<std::size_t>(f.back()) + 1, static_cast<int>(f.size()));
    h.roots = f;
    return h;
}

void finish_vertices(RootedGadget& h, std::size_t first_fresh)
{
    h.vertices = set_union(h.roots, range_set(static_cast<Vertex>(first_fresh), static_cast<Vertex>(h.graph.vertex_count())));
    h.color.assign(h.graph.vertex_count(), -1);
}

}  // namespace

RootedGadget build_anti_edge(const VertexSet& f, int q)
{
    require_edge_shape(f, q);
    RootedGadget h = empty_gadget_on(f);
    const std::size_t first = h.graph.vertex_count();
    add_anti_edge(h.graph, f, q);
    finish_vertices(h, first);
    return h;
}

RootedGadget build_fake_edge(const VertexSet& f, int q)
{
    require_edge_shape(f, q);
    RootedGadget h = empty_gadget_on(f);
    const auto r = f.size();
    const std::size_t first = h.graph.vertex_count();
    const Vertex x0 = h.graph.add_vertices(static_cast<std::size_t>(q) - r);
    const VertexSet xs = range_set(x0, x0 + static_cast<Vertex>(static_cast<std::size_t>(q) - r));
    const VertexSet all = set_union(f, xs);
    for (const auto& t : subsets(all, r)) {
        if (t != f) add_anti_edge(h.graph, t, q);
    }
    finish_vertices(h, first);
    return h;
}

// --- rooted degeneracy -----------------------------------------------------

DegeneracyOrder rooted_degeneracy_order(const RootedGadget& h)
{
    VertexSet remaining = h.non_roots();
    std::vector<char> alive(h.graph.vertex_count(), 0);
    for (Vertex v : h.vertices) alive[v] = 1;
    // Edges incident to each vertex.
    std::vector<std::vector<const VertexSet*>> incident(h.graph.vertex_count());
    for (const auto& e : h.graph.edges()) {
        for (Vertex v : e) incident[v].push_back(&e);
    }
    auto back_degree = [&](Vertex v) {
        int count = 0;
        for (const VertexSet* e : incident[v]) {
            if (std::all_of(e->begin(), e->end(), [&](Vertex u) { return alive[u] != 0; })) ++count;
        }
        return count;
    };
    DegeneracyOrder result;
    std::vector<Vertex> reversed;
    while (!remaining.empty()) {
        std::size_t best = 0;
        int best_deg = back_degree(remaining[0]);
        for (std::size_t i = 1; i < remaining.size(); ++i) {
            const int d = back_degree(remaining[i]);
            if (d < best_deg) {
                best_deg = d;
                best = i;
            }
        }
        result.degeneracy = std::max(result.degeneracy, best_deg);
        alive[remaining[best]] = 0;
        reversed.push_back(remaining[best]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    result.order.assign(reversed.rbegin(), reversed.rend());
    return result;
}

int rooted_degeneracy(const RootedGadget& h)
{
    return rooted_degeneracy_order(h).degeneracy;
}

// --- boosters --------------------------------------------------------------

namespace {

std::vector<int> apply(const std::vector<std::vector<int>>& m, const std::vector<int>& v, int p)
{
    std::vector<int> out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < v.size(); ++j) acc += static_cast<long long>(m[i][j]) * v[j];
        out[i] = mod(acc, p);
    }
    return out;
}

void sort_family(CliqueFamily& f)
{
    std::sort(f.cliques.begin(), f.cliques.end());
}

int cliques_meeting_target(const CliqueFamily& on, const VertexSet& s, int r)
{
    int count = 0;
    for (const auto& c : on.cliques) {
        if (set_intersection(c, s).size() >= static_cast<std::size_t>(r)) ++count;
    }
    return count;
}

RootedGadget layered_single(Hypergraph graph, VertexSet roots, std::vector<int> color)
{
    RootedGadget h;
    h.vertices = range_set(graph.vertex_count());
    h.graph = std::move(graph);
    h.roots = std::move(roots);
    h.color = std::move(color);
    Layer layer;
    layer.vertices = h.non_roots();
    for (Vertex v : layer.vertices) layer.part.push_back(h.color[v]);
    h.layers.push_back(std::move(layer));
    return h;
}

}  // namespace

Booster build_booster(int q, int r, std::vector<int> a1, std::vector<int> a2)
{
    const int p = booster_prime(q, r);
    const auto m = cauchy_matrix(q, r, p);
    if (!all_square_submatrices_invertible(m, p)) throw Error("Cauchy matrix has a singular square submatrix");
    const auto rows = static_cast<std::size_t>(q - r);
    if (a1.empty()) a1.assign(rows, 0);
    if (a2.empty()) {
        a2.assign(rows, 0);
        a2[0] = 1;
    }
    if (a1.size() != rows || a2.size() != rows) throw InvalidArgument("a1/a2 must have q-r entries");
    for (auto& x : a1) x = mod(x, p);
    for (auto& x : a2) x = mod(x, p);
    if (a1 == a2) throw InvalidArgument("a1 and a2 must differ");

    // All v in F_p^q, lexicographic with v_0 most significant.
    std::vector<std::vector<int>> sol1, sol2;
    std::vector<int> v(static_cast<std::size_t>(q), 0);
    while (true) {
        const auto a = apply(m, v, p);
        if (a == a1) sol1.push_back(v);
        else if (a == a2) sol2.push_back(v);
        int j = q - 1;
        while (j >= 0 && ++v[static_cast<std::size_t>(j)] == p) v[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
    }
    const std::vector<int> s = sol1.front();

    const auto qs = static_cast<std::size_t>(q);
    auto label = [&](std::size_t part, int value) -> Vertex {
        if (value == s[part]) return static_cast<Vertex>(part);
        const int idx = value < s[part] ? value : value - 1;
        return static_cast<Vertex>(qs + part * static_cast<std::size_t>(p - 1) + static_cast<std::size_t>(idx));
    };
    auto clique_of = [&](const std::vector<int>& vec) {
        VertexSet c;
        for (std::size_t j = 0; j < qs; ++j) c.push_back(label(j, vec[j]));
        std::sort(c.begin(), c.end());
        return c;
    };

    Booster b;
    b.prime = p;
    b.target = range_set(qs);
    b.on.q = q;
    b.off.q = q;
    for (const auto& vec : sol2) b.on.cliques.push_back(clique_of(vec));
    for (const auto& vec : sol1) {
        auto c = clique_of(vec);
        if (c != b.target) b.off.cliques.push_back(std::move(c));
    }
    sort_family(b.on);
    sort_family(b.off);

    const std::size_t n = qs * static_cast<std::size_t>(p);
    Hypergraph graph(n, r);
    for (const auto& c : b.off.cliques) {
        for (auto& e : subsets(c, static_cast<std::size_t>(r))) graph.add_edge(std::move(e));
    }
    std::vector<int> color(n);
    for (std::size_t j = 0; j < qs; ++j) {
        color[j] = static_cast<int>(j);
        for (int idx = 0; idx < p - 1; ++idx) color[qs + j * static_cast<std::size_t>(p - 1) + static_cast<std::size_t>(idx)] = static_cast<int>(j);
    }
    b.gadget = layered_single(std::move(graph), b.target, std::move(color));
    const int stat = cliques_meeting_target(b.on, b.target, r);
    b.history.push_back(stat);
    b.orthogonal = stat == static_cast<int>(binomial(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(r)));
    return b;
}

Booster build_orthogonal_booster(int q, int r, std::vector<int> a1, std::vector<int> a2)
{
    Booster b = build_booster(q, r, a1, a2);
    const auto qs = static_cast<std::size_t>(q);
    const auto rs = static_cast<std::size_t>(r);
    const int full = static_cast<int>(binomial(qs, rs));
    const Booster star = build_booster(q, r);
    const VertexSet local = range_set(qs);

    // T0: the least (r+1)-subset of the local clique not inside any on-clique.
    VertexSet t0;
    for_each_subset(local, rs + 1, [&](const VertexSet& t) {
        for (const auto& c : star.on.cliques) {
            if (is_subset(t, c)) return true;
        }
        t0 = t;
        return false;
    });
    if (t0.empty()) throw Error("every (r+1)-subset lies in an on-clique");

    while (true) {
        std::size_t qi = b.on.cliques.size();
        for (std::size_t i = 0; i < b.on.cliques.size(); ++i) {
            if (set_intersection(b.on.cliques[i], b.target).size() >= rs + 1) {
                qi = i;
                break;
            }
        }
        if (qi == b.on.cliques.size()) break;
        const VertexSet big_q = b.on.cliques[qi];
        const VertexSet shared = set_intersection(big_q, b.target);
        const VertexSet outside = set_difference(big_q, b.target);

        VertexSet t = t0;
        for (Vertex v : local) {
            if (t.size() == shared.size()) break;
            if (!contains(t, v)) t.push_back(v);
        }
        t = normalized(std::move(t));
        const VertexSet rest = set_difference(local, t);

        // Local root -> label in b; fresh star vertices get new labels.
        std::vector<Vertex> map(star.gadget.graph.vertex_count());
        for (std::size_t i = 0; i < t.size(); ++i) map[t[i]] = shared[i];
        for (std::size_t i = 0; i < rest.size(); ++i) map[rest[i]] = outside[i];
        const std::size_t extra = star.gadget.graph.vertex_count() - qs;
        const Vertex first = b.gadget.graph.add_vertices(extra);
        b.gadget.color.resize(b.gadget.graph.vertex_count(), -1);
        for (std::size_t v = qs; v < map.size(); ++v) {
            map[v] = first + static_cast<Vertex>(v - qs);
            const int local_part = star.gadget.color[v];
            b.gadget.color[map[v]] = b.gadget.color[map[static_cast<std::size_t>(local_part)]];
        }
        for (const auto& e : star.gadget.graph.edges()) b.gadget.graph.add_edge(relabel(e, map));
        b.on.cliques.erase(b.on.cliques.begin() + static_cast<std::ptrdiff_t>(qi));
        for (const auto& c : star.on.cliques) b.on.cliques.push_back(relabel(c, map));
        for (const auto& c : star.off.cliques) b.off.cliques.push_back(relabel(c, map));
        ++b.rounds;
        b.history.push_back(cliques_meeting_target(b.on, b.target, r));
        if (b.history.back() <= b.history[b.history.size() - 2]) throw Error("augmentation did not increase the clique count");
        if (b.rounds > full) throw Error("augmentation exceeded C(q,r) rounds");
    }
    sort_family(b.on);
    sort_family(b.off);
    b.gadget = layered_single(std::move(b.gadget.graph), b.target, std::move(b.gadget.color));
    b.orthogonal = b.history.back() == full;
    if (!b.orthogonal) throw Error("orthogonal booster construction did not reach C(q,r)");
    return b;
}

const VertexSet& clique_containing(const CliqueFamily& family, const VertexSet& e)
{
    for (const auto& c : family.cliques) {
        if (is_subset(e, c)) return c;
    }
    throw InvalidArgument("no clique contains " + to_string(e));
}

Hinge hinge_from_booster(const Booster& b, const VertexSet& e)
{
    const int r = b.gadget.graph.rank();
    if (e.size() != static_cast<std::size_t>(r) || !is_subset(e, b.target)) throw InvalidArgument("e must be an edge of S");
    Hinge h;
    h.s1 = b.target;
    h.s2 = clique_containing(b.on, e);
    h.edge = e;
    Hypergraph graph = b.gadget.graph;
    for (const auto& f : subsets(h.s2, static_cast<std::size_t>(r))) {
        if (f != e) graph.remove_edge(f);
    }
    h.left.q = h.right.q = b.on.q;
    for (const auto& c : b.on.cliques) {
        if (c != h.s2) h.left.cliques.push_back(c);
    }
    h.right = b.off;
    h.gadget = layered_single(std::move(graph), set_union(h.s1, h.s2), b.gadget.color);
    return h;
}

Hinge build_hinge(int q, int r)
{
    const auto qs = static_cast<std::size_t>(q);
    const auto rs = static_cast<std::size_t>(r);
    const Vertex shift = static_cast<Vertex>(q - r);
    const Booster b1 = build_orthogonal_booster(q, r);
    const Booster b2 = build_orthogonal_booster(q, r);
    const VertexSet e = range_set(rs);

    Hinge h;
    h.edge = e;
    h.s1 = range_set(qs);
    h.s2 = set_union(e, range_set(static_cast<Vertex>(q), static_cast<Vertex>(2 * q - r)));

    // B1: roots keep labels, internal vertices shift past S2 - e.
    std::vector<Vertex> map1(b1.gadget.graph.vertex_count());
    for (std::size_t v = 0; v < map1.size(); ++v) map1[v] = v < qs ? static_cast<Vertex>(v) : static_cast<Vertex>(v) + shift;
    std::size_t n = b1.gadget.graph.vertex_count() + (qs - rs);
    std::vector<int> color(n, -1);
    for (std::size_t v = 0; v < qs; ++v) color[v] = static_cast<int>(v);
    for (std::size_t v = qs; v < 2 * qs - rs; ++v) color[v] = static_cast<int>(v - qs + rs);
    for (std::size_t v = qs; v < map1.size(); ++v) color[map1[v]] = b1.gadget.color[v];

    const VertexSet s_local1 = clique_containing(b1.on, e);
    h.middle = relabel(s_local1, map1);

    // B2: roots onto S2, its on-clique at e onto the middle clique by color.
    const VertexSet s_local2 = clique_containing(b2.on, e);
    std::vector<Vertex> map2(b2.gadget.graph.vertex_count(), UINT32_MAX);
    for (std::size_t v = 0; v < qs; ++v) map2[v] = h.s2[v];
    for (Vertex v : set_difference(s_local2, e)) {
        for (Vertex m : set_difference(h.middle, e)) {
            if (color[m] == b2.gadget.color[v]) map2[v] = m;
        }
        if (map2[v] == UINT32_MAX) throw Error("no middle vertex with matching color");
    }
    for (std::size_t v = qs; v < map2.size(); ++v) {
        if (map2[v] != UINT32_MAX) continue;
        map2[v] = static_cast<Vertex>(n++);
        color.push_back(b2.gadget.color[v]);
    }

    Hypergraph graph(n, r);
    auto add_without = [&](const Booster& b, const VertexSet& s_local, const std::vector<Vertex>& map) {
        std::set<VertexSet> skip;
        for (auto& f : subsets(s_local, rs)) {
            if (f != e) skip.insert(std::move(f));
        }
        for (const auto& edge : b.gadget.graph.edges()) {
            if (!skip.count(edge)) graph.add_edge(relabel(edge, map));
        }
    };
    add_without(b1, s_local1, map1);
    add_without(b2, s_local2, map2);
    for (auto& f : subsets(h.middle, rs)) {
        if (f != e) graph.add_edge(std::move(f));
    }

    h.left.q = h.right.q = q;
    for (const auto& c : b1.on.cliques) {
        if (c != s_local1) h.left.cliques.push_back(relabel(c, map1));
    }
    for (const auto& c : b2.off.cliques) h.left.cliques.push_back(relabel(c, map2));
    for (const auto& c : b1.off.cliques) h.right.cliques.push_back(relabel(c, map1));
    for (const auto& c : b2.on.cliques) {
        if (c != s_local2) h.right.cliques.push_back(relabel(c, map2));
    }
    sort_family(h.left);
    sort_family(h.right);
    h.gadget = layered_single(std::move(graph), set_union(h.s1, h.s2), std::move(color));
    return h;
}

// --- verification ----------------------------------------------------------

bool roots_independent(const RootedGadget& h)
{
    for (const auto& e : h.graph.edges()) {
        if (is_subset(e, h.roots)) return false;
    }
    return true;
}

bool is_rooted_q_partite(const RootedGadget& h, int q)
{
    for (Vertex v : h.non_roots()) {
        if (v >= h.color.size() || h.color[v] < 0 || h.color[v] >= q) return false;
    }
    for (const auto& e : h.graph.edges()) {
        std::vector<int> seen;
        for (Vertex v : e) {
            if (contains(h.roots, v)) continue;
            if (std::find(seen.begin(), seen.end(), h.color[v]) != seen.end()) return false;
            seen.push_back(h.color[v]);
        }
    }
    return true;
}

bool is_rooted_partite_degenerate(const RootedGadget& h, int d, int q)
{
    const VertexSet non_roots = h.non_roots();
    if (h.layers.empty()) {
        if (non_roots.empty()) return true;
        throw InvalidArgument("gadget has no layer annotation");
    }
    const std::size_t n = h.graph.vertex_count();
    std::vector<int> layer_of(n, -1), part_of(n, -1);
    for (std::size_t i = 0; i < h.layers.size(); ++i) {
        const auto& layer = h.layers[i];
        if (layer.part.size() != layer.vertices.size()) return false;
        for (std::size_t k = 0; k < layer.vertices.size(); ++k) {
            const Vertex v = layer.vertices[k];
            if (v >= n || layer_of[v] != -1 || contains(h.roots, v)) return false;
            if (layer.part[k] < 0 || layer.part[k] >= q) return false;
            layer_of[v] = static_cast<int>(i);
            part_of[v] = layer.part[k];
        }
    }
    for (Vertex v : non_roots) {
        if (layer_of[v] == -1) return false;
    }
    std::vector<std::set<Vertex>> outside(h.layers.size());
    for (const auto& e : h.graph.edges()) {
        int top = -1;
        for (Vertex v : e) top = std::max(top, v < n ? layer_of[v] : -1);
        if (top < 0) return false;  // edge inside the roots
        std::vector<int> seen;
        for (Vertex v : e) {
            if (layer_of[v] == top) {
                if (std::find(seen.begin(), seen.end(), part_of[v]) != seen.end()) return false;
                seen.push_back(part_of[v]);
            } else {
                outside[static_cast<std::size_t>(top)].insert(v);
            }
        }
    }
    for (const auto& o : outside) {
        if (o.size() > static_cast<std::size_t>(d) * static_cast<std::size_t>(q)) return false;
    }
    return true;
}

BoosterCheck verify_booster(const Booster& b)
{
    BoosterCheck c;
    const auto& g = b.gadget.graph;
    const int r = g.rank();
    const auto s_edges = subsets(b.target, static_cast<std::size_t>(r));
    c.edge_disjoint = std::none_of(s_edges.begin(), s_edges.end(), [&](const VertexSet& e) { return g.has_edge(e); });
    c.off_decomposes = verify_decomposition(g, b.off);
    Hypergraph with_s = g;
    if (c.edge_disjoint) {
        for (const auto& e : s_edges) with_s.add_edge(e);
        c.on_decomposes = verify_decomposition(with_s, b.on);
    }
    c.target_unused = std::find(b.on.cliques.begin(), b.on.cliques.end(), b.target) == b.on.cliques.end();
    std::set<VertexSet> owners;
    bool all_found = true;
    for (const auto& e : s_edges) {
        bool found = false;
        for (const auto& q : b.on.cliques) {
            if (is_subset(e, q)) {
                owners.insert(q);
                found = true;
                break;
            }
        }
        all_found = all_found && found;
    }
    c.orthogonal = all_found && owners.size() == s_edges.size();
    c.partite = is_rooted_q_partite(b.gadget, b.on.q) && is_rooted_partite_degenerate(b.gadget, 1, b.on.q);
    // The roots themselves must carry a transversal coloring for B + S to be q-partite.
    std::set<int> root_colors;
    for (Vertex v : b.target) root_colors.insert(v < b.gadget.color.size() ? b.gadget.color[v] : -1);
    c.partite = c.partite && root_colors.size() == b.target.size() && !root_colors.count(-1);
    return c;
}

HingeCheck verify_hinge(const Hinge& h)
{
    HingeCheck c;
    const auto& g = h.gadget.graph;
    const auto r = static_cast<std::size_t>(g.rank());
    auto with = [&](const VertexSet& s) {
        Hypergraph out = g;
        for (auto& e : subsets(s, r)) {
            if (e != h.edge) out.add_edge(std::move(e));
        }
        return out;
    };
    bool disjoint = true;
    for (const VertexSet* s : {&h.s1, &h.s2}) {
        for (const auto& e : subsets(*s, r)) disjoint = disjoint && !g.has_edge(e);
    }
    c.edge_disjoint = disjoint;
    if (disjoint) {
        c.left_decomposes = verify_decomposition(with(h.s1), h.left);
        c.right_decomposes = verify_decomposition(with(h.s2), h.right);
    }
    c.independent = roots_independent(h.gadget);
    c.partite = is_rooted_q_partite(h.gadget, h.left.q) && is_rooted_partite_degenerate(h.gadget, 2, h.left.q);
    return c;
}

bool fake_edge_congruences_hold(const RootedGadget& fake, const VertexSet& f, int q)
{
    const int r = static_cast<int>(f.size());
    for (int i = 0; i < r; ++i) {
        const std::uint64_t m = binomial(static_cast<std::uint64_t>(q - i), static_cast<std::uint64_t>(r - i));
        for (const auto& s : subsets(f, static_cast<std::size_t>(i))) {
            if (degree(fake.graph, s) % m != 1 % m) return false;
        }
    }
    return true;
}

// --- serialization ---------------------------------------------------------

void write_gadget(std::ostream& out, const RootedGadget& g, const std::map<std::string, CliqueFamily>& families)
{
    write_hypergraph(out, g.graph);
    auto line = [&](const char* key, const VertexSet& s) {
        out << key << ' ' << s.size();
        for (Vertex v : s) out << ' ' << v;
        out << '\n';
    };
    line("roots", g.roots);
    line("vertices", g.vertices);
    out << "colors " << g.color.size();
    for (int c : g.color) out << ' ' << c;
    out << '\n';
    out << "layers " << g.layers.size() << '\n';
    for (const auto& layer : g.layers) {
        out << "layer " << layer.vertices.size();
        for (std::size_t k = 0; k < layer.vertices.size(); ++k) out << ' ' << layer.vertices[k] << ':' << layer.part[k];
        out << '\n';
    }
    for (const auto& [name, family] : families) {
        out << "family " << name << ' ' << family.q << ' ' << family.cliques.size() << '\n';
        write_sets(out, family.cliques);
    }
    out << "end\n";
}

namespace {

VertexSet read_counted(std::istringstream& in)
{
    std::size_t k = 0;
    in >> k;
    VertexSet s(k);
    for (auto& v : s) in >> v;
    if (!in) throw InvalidArgument("truncated gadget annotation");
    return s;
}

}  // namespace

RootedGadget read_gadget(std::istream& in, std::map<std::string, CliqueFamily>* families)
{
    RootedGadget g;
    g.graph = read_hypergraph(in);
    std::string text;
    while (std::getline(in, text)) {
        if (text.empty()) continue;
        std::istringstream line(text);
        std::string key;
        line >> key;
        if (key == "end") break;
        if (key == "roots") {
            g.roots = read_counted(line);
        } else if (key == "vertices") {
            g.vertices = read_counted(line);
        } else if (key == "colors") {
            std::size_t k = 0;
            line >> k;
            g.color.resize(k);
            for (auto& c : g.color) line >> c;
        } else if (key == "layers") {
            // count only; layer lines follow
        } else if (key == "layer") {
            std::size_t k = 0;
            line >> k;
            Layer layer;
            for (std::size_t i = 0; i < k; ++i) {
                std::string item;
                line >> item;
                const auto colon = item.find(':');
                if (colon == std::string::npos) throw InvalidArgument("bad layer entry " + item);
                layer.vertices.push_back(static_cast<Vertex>(std::stoul(item.substr(0, colon))));
                layer.part.push_back(std::stoi(item.substr(colon + 1)));
            }
            g.layers.push_back(std::move(layer));
        } else if (key == "family") {
            std::string name;
            CliqueFamily family;
            std::size_t count = 0;
            line >> name >> family.q >> count;
            for (std::size_t i = 0; i < count; ++i) {
                std::string row;
                if (!std::getline(in, row)) throw InvalidArgument("truncated family " + name);
                std::istringstream fields(row);
                VertexSet c;
                Vertex v = 0;
                while (fields >> v) c.push_back(v);
                family.cliques.push_back(std::move(c));
            }
            if (families) (*families)[name] = std::move(family);
        } else {
            throw InvalidArgument("unknown gadget annotation `" + key + "`");
        }
    }
    return g;
}

}  // namespace hd
