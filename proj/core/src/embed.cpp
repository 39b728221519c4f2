#include "hyperdesign/embed.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/random.hpp"

namespace hd {

namespace {

using EdgeTest = std::function<bool(const VertexSet&)>;

// Backtracking placement of the non-root vertices of H in a fixed order.
class Placer {
public:
    Placer(const Hypergraph& g, const RootedGadget& h, const std::vector<Vertex>& root_image, std::vector<Vertex> order,
           EdgeTest edge_ok, std::vector<char> forbidden)
        : g_(g), order_(std::move(order)), edge_ok_(std::move(edge_ok)), forbidden_(std::move(forbidden))
    {
        if (root_image.size() != h.roots.size()) throw InvalidArgument("root image size differs from |R|");
        map_.assign(h.graph.vertex_count(), kUnmapped);
        used_.assign(g.vertex_count(), 0);
        if (forbidden_.empty()) forbidden_.assign(g.vertex_count(), 0);
        for (std::size_t i = 0; i < h.roots.size(); ++i) {
            const Vertex img = root_image[i];
            if (img >= g.vertex_count()) throw InvalidArgument("root image outside the host");
            if (used_[img]) throw InvalidArgument("root image is not injective");
            map_[h.roots[i]] = img;
            used_[img] = 1;
        }
        std::vector<int> position(h.graph.vertex_count(), -1);
        for (std::size_t i = 0; i < order_.size(); ++i) position[order_[i]] = static_cast<int>(i);
        closing_.resize(order_.size());
        for (const auto& e : h.graph.edges()) {
            int last = -1;
            for (Vertex v : e) {
                if (contains(h.roots, v)) continue;
                if (position[v] < 0) throw InvalidArgument("gadget vertex missing from the placement order");
                last = std::max(last, position[v]);
            }
            if (last < 0) {
                root_edges_.push_back(e);
            } else {
                closing_[static_cast<std::size_t>(last)].push_back(e);
            }
        }
    }

    bool roots_ok() const
    {
        return std::all_of(root_edges_.begin(), root_edges_.end(), [&](const VertexSet& e) { return image_ok(e); });
    }

    bool fits(std::size_t pos, Vertex x)
    {
        if (used_[x] || forbidden_[x]) return false;
        map_[order_[pos]] = x;
        bool ok = true;
        for (const auto& e : closing_[pos]) {
            if (!image_ok(e)) {
                ok = false;
                break;
            }
        }
        map_[order_[pos]] = kUnmapped;
        return ok;
    }

    void place(std::size_t pos, Vertex x)
    {
        map_[order_[pos]] = x;
        used_[x] = 1;
    }

    void unplace(std::size_t pos)
    {
        used_[map_[order_[pos]]] = 0;
        map_[order_[pos]] = kUnmapped;
    }

    std::uint64_t count(std::size_t pos, std::uint64_t cap, std::uint64_t& nodes)
    {
        if (++nodes > cap) throw CapExceeded("embedding count exceeded its node cap");
        if (pos == order_.size()) return 1;
        std::uint64_t total = 0;
        for (Vertex x = 0; x < g_.vertex_count(); ++x) {
            if (!fits(pos, x)) continue;
            place(pos, x);
            total += count(pos + 1, cap, nodes);
            unplace(pos);
        }
        return total;
    }

    // One pass without backtracking; `pick` orders the host candidates.
    bool greedy(const std::function<void(std::vector<Vertex>&)>& pick)
    {
        std::vector<Vertex> hosts = range_set(g_.vertex_count());
        for (std::size_t pos = 0; pos < order_.size(); ++pos) {
            if (pick) pick(hosts);
            bool placed = false;
            for (Vertex x : hosts) {
                if (fits(pos, x)) {
                    place(pos, x);
                    placed = true;
                    break;
                }
            }
            if (!placed) return false;
        }
        return true;
    }

    const Embedding& map() const { return map_; }
    std::size_t size() const { return order_.size(); }

private:
    bool image_ok(const VertexSet& e) const
    {
        VertexSet img;
        img.reserve(e.size());
        for (Vertex v : e) img.push_back(map_[v]);
        std::sort(img.begin(), img.end());
        return edge_ok_(img);
    }

    const Hypergraph& g_;
    std::vector<Vertex> order_;
    EdgeTest edge_ok_;
    std::vector<char> forbidden_;
    Embedding map_;
    std::vector<char> used_;
    std::vector<std::vector<VertexSet>> closing_;
    std::vector<VertexSet> root_edges_;
};

EdgeTest host_edges(const Hypergraph& g)
{
    return [&g](const VertexSet& e) { return g.has_edge(e); };
}

}  // namespace

bool is_valid_embedding(const Hypergraph& g, const RootedGadget& h, const std::vector<Vertex>& root_image,
                        const Embedding& map)
{
    if (map.size() < h.graph.vertex_count() || root_image.size() != h.roots.size()) return false;
    for (std::size_t i = 0; i < h.roots.size(); ++i) {
        if (map[h.roots[i]] != root_image[i]) return false;
    }
    std::set<Vertex> seen;
    for (Vertex v : h.vertices) {
        if (map[v] >= g.vertex_count() || !seen.insert(map[v]).second) return false;
    }
    for (const auto& e : h.graph.edges()) {
        VertexSet img;
        for (Vertex v : e) img.push_back(map[v]);
        std::sort(img.begin(), img.end());
        if (!g.has_edge(img)) return false;
    }
    return true;
}

std::optional<Embedding> embed_greedy(const Hypergraph& g, const RootedGadget& h, const std::vector<Vertex>& root_image)
{
    Placer placer(g, h, root_image, rooted_degeneracy_order(h).order, host_edges(g), {});
    if (!placer.roots_ok() || !placer.greedy(nullptr)) return std::nullopt;
    return placer.map();
}

std::uint64_t count_embeddings(const Hypergraph& g, const RootedGadget& h, const std::vector<Vertex>& root_image,
                               std::uint64_t cap)
{
    Placer placer(g, h, root_image, rooted_degeneracy_order(h).order, host_edges(g), {});
    if (!placer.roots_ok()) return 0;
    std::uint64_t nodes = 0;
    return placer.count(0, cap, nodes);
}

DegenerateEmbedding embed_degenerate(const Hypergraph& g, const RootedGadget& h, const std::vector<Vertex>& root_image,
                                     EmbedMode mode, std::uint64_t cap)
{
    DegenerateEmbedding out;
    if (mode == EmbedMode::Greedy) {
        out.embedding = embed_greedy(g, h, root_image);
        out.count = out.embedding ? 1 : 0;
    } else {
        out.count = count_embeddings(g, h, root_image, cap);
    }
    return out;
}

namespace {

// Counts extensions layer by layer: the embeddings of layer i are enumerated
// completely, and each is extended by the count for layers i+1, i+2, ...
struct LayerCounter {
    Placer& placer;
    std::vector<std::size_t> layer_end;  // placement index past each layer
    std::uint64_t cap;
    std::uint64_t nodes = 0;

    std::uint64_t count_layer(std::size_t layer)
    {
        if (layer == layer_end.size()) return 1;
        const std::size_t begin = layer == 0 ? 0 : layer_end[layer - 1];
        return extend(layer, begin);
    }

    std::uint64_t extend(std::size_t layer, std::size_t pos)
    {
        if (++nodes > cap) throw CapExceeded("layered count exceeded its node cap");
        if (pos == layer_end[layer]) return count_layer(layer + 1);
        std::uint64_t total = 0;
        for (Vertex x = 0; x < host_size; ++x) {
            if (!placer.fits(pos, x)) continue;
            placer.place(pos, x);
            total += extend(layer, pos + 1);
            placer.unplace(pos);
        }
        return total;
    }

    std::size_t host_size = 0;
};

}  // namespace

std::uint64_t count_layered_embeddings(const Hypergraph& g, const RootedGadget& h,
                                       const std::vector<Vertex>& root_image, std::uint64_t cap)
{
    std::vector<Vertex> order;
    std::vector<std::size_t> ends;
    for (const auto& layer : h.layers) {
        order.insert(order.end(), layer.vertices.begin(), layer.vertices.end());
        ends.push_back(order.size());
    }
    if (normalized(order) != h.non_roots()) throw InvalidArgument("layers must partition the non-root vertices");
    Placer placer(g, h, root_image, order, host_edges(g), {});
    if (!placer.roots_ok()) return 0;
    LayerCounter counter{placer, ends, cap};
    counter.host_size = g.vertex_count();
    return counter.count_layer(0);
}

// --- finishing matching ----------------------------------------------------

namespace {

class MatchingSearch {
public:
    MatchingSearch(const BipartiteHypergraph& b, std::uint64_t budget) : b_(b), budget_(budget)
    {
        used_.assign(b.b_count, 0);
        choice_.assign(b.candidates.size(), SIZE_MAX);
    }

    MatchingResult::Status run()
    {
        if (search(0)) return MatchingResult::Status::Found;
        return exhausted_ ? MatchingResult::Status::BudgetExhausted : MatchingResult::Status::Nonexistent;
    }

    const std::vector<std::size_t>& choice() const { return choice_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool live(const std::vector<std::size_t>& cand) const
    {
        return std::none_of(cand.begin(), cand.end(), [&](std::size_t x) { return used_[x] != 0; });
    }

    std::string key() const
    {
        std::string k;
        k.reserve(choice_.size() + used_.size());
        for (std::size_t c : choice_) k.push_back(c == SIZE_MAX ? '0' : '1');
        for (char u : used_) k.push_back(u ? '1' : '0');
        return k;
    }

    bool search(std::size_t assigned)
    {
        if (assigned == choice_.size()) return true;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return false;
        }
        const std::string state = key();
        if (failed_.count(state)) return false;
        std::size_t best = SIZE_MAX, best_live = SIZE_MAX;
        for (std::size_t a = 0; a < choice_.size(); ++a) {
            if (choice_[a] != SIZE_MAX) continue;
            std::size_t n = 0;
            for (const auto& cand : b_.candidates[a]) n += live(cand) ? 1 : 0;
            if (n < best_live) {
                best_live = n;
                best = a;
            }
        }
        if (best_live == 0) {
            failed_.insert(state);
            return false;
        }
        const auto& cands = b_.candidates[best];
        for (std::size_t k = 0; k < cands.size(); ++k) {
            if (!live(cands[k])) continue;
            for (std::size_t x : cands[k]) used_[x] = 1;
            choice_[best] = k;
            if (search(assigned + 1)) return true;
            choice_[best] = SIZE_MAX;
            for (std::size_t x : cands[k]) used_[x] = 0;
            if (exhausted_) return false;
        }
        failed_.insert(state);
        return false;
    }

    const BipartiteHypergraph& b_;
    std::uint64_t budget_;
    std::vector<char> used_;
    std::vector<std::size_t> choice_;
    std::unordered_set<std::string> failed_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace

MatchingResult finishing_matching(const BipartiteHypergraph& b, std::uint64_t budget)
{
    MatchingResult res;
    std::vector<std::size_t> b_degree(b.b_count, 0);
    res.min_a_degree = b.candidates.empty() ? 0 : SIZE_MAX;
    for (const auto& cands : b.candidates) {
        res.min_a_degree = std::min(res.min_a_degree, cands.size());
        for (const auto& c : cands) {
            res.rank = std::max(res.rank, c.size());
            for (std::size_t x : c) {
                if (x >= b.b_count) throw InvalidArgument("candidate refers to a missing B-vertex");
                ++b_degree[x];
            }
        }
    }
    for (std::size_t d : b_degree) res.max_b_degree = std::max(res.max_b_degree, d);
    res.degree_condition = res.min_a_degree >= 8 * res.rank * res.max_b_degree;
    MatchingSearch search(b, budget);
    res.status = search.run();
    res.nodes = search.nodes();
    if (res.found()) res.choice = search.choice();
    return res;
}

bool is_a_perfect_matching(const BipartiteHypergraph& b, const std::vector<std::size_t>& choice)
{
    if (choice.size() != b.candidates.size()) return false;
    std::vector<char> used(b.b_count, 0);
    for (std::size_t a = 0; a < choice.size(); ++a) {
        if (choice[a] >= b.candidates[a].size()) return false;
        for (std::size_t x : b.candidates[a][choice[a]]) {
            if (used[x]) return false;
            used[x] = 1;
        }
    }
    return true;
}

// --- supergraph systems ----------------------------------------------------

namespace {

std::vector<Vertex> identity_roots(const RootedGadget& w) { return w.roots; }

std::vector<VertexSet> image_edges(const RootedGadget& w, const Embedding& map)
{
    std::vector<VertexSet> out;
    for (const auto& e : w.graph.edges()) {
        VertexSet img;
        for (Vertex v : e) img.push_back(map[v]);
        out.push_back(normalized(std::move(img)));
    }
    return out;
}

VertexSet system_vertices(const SupergraphSystem& sys)
{
    VertexSet vj = sys.base.support();
    for (const auto& w : sys.supers) vj = set_union(vj, w.roots);
    return vj;
}

std::size_t codegree_load(const std::vector<std::vector<VertexSet>>& images, int r)
{
    std::map<VertexSet, std::size_t> load;
    for (const auto& edges : images) {
        for (const auto& e : edges) {
            for (const auto& s : subsets(e, static_cast<std::size_t>(r - 1))) ++load[s];
        }
    }
    std::size_t best = 0;
    for (const auto& [s, k] : load) best = std::max(best, k);
    return best;
}

}  // namespace

SystemEmbedding embed_supergraph_system(const Hypergraph& g, const SupergraphSystem& sys, std::size_t slot_capacity,
                                        std::uint64_t seed, std::size_t tries_per_member, std::uint64_t budget)
{
    if (sys.family.size() != sys.supers.size()) throw InvalidArgument("family and supergraphs differ in length");
    if (slot_capacity == 0) throw InvalidArgument("slot capacity must be positive");
    const int r = g.rank();
    SystemEmbedding out;
    out.slot_capacity = slot_capacity;
    const VertexSet vj = system_vertices(sys);
    std::vector<char> forbidden(g.vertex_count(), 0);
    for (Vertex v : vj) {
        if (v < forbidden.size()) forbidden[v] = 1;
    }

    std::map<VertexSet, std::size_t> edge_id, slot_id;
    auto id_of = [](std::map<VertexSet, std::size_t>& ids, const VertexSet& key) {
        return ids.emplace(key, ids.size()).first->second;
    };
    // B ids: edges first, then vertices, then slots; offsets fixed afterwards.
    struct Candidate {
        Embedding map;
        std::vector<std::size_t> edges, slots;
        std::vector<Vertex> vertices;
        std::size_t t;
    };
    std::vector<std::vector<Candidate>> cands(sys.family.size());
    Rng rng(seed);
    for (std::size_t i = 0; i < sys.family.size(); ++i) {
        const RootedGadget& w = sys.supers[i];
        const Hypergraph& h = sys.family[i];
        out.c_bound = std::max({out.c_bound, w.graph.edge_count(), w.vertices.size()});
        const EdgeTest usable = [&](const VertexSet& e) { return g.has_edge(e) && (!sys.base.has_edge(e) || h.has_edge(e)); };
        const auto order = rooted_degeneracy_order(w).order;
        std::set<Embedding> seen;
        for (std::size_t attempt = 0; attempt < tries_per_member; ++attempt) {
            Placer placer(g, w, identity_roots(w), order, usable, forbidden);
            if (!placer.roots_ok()) break;
            Rng local(Rng::derive(rng.next(), attempt));
            const bool ok = placer.greedy([&](std::vector<Vertex>& hosts) {
                if (attempt > 0) local.shuffle(hosts);
            });
            if (!ok || !seen.insert(placer.map()).second) continue;
            Candidate base;
            base.map = placer.map();
            std::set<VertexSet> sets;
            for (const auto& e : image_edges(w, base.map)) {
                if (h.has_edge(e)) continue;
                base.edges.push_back(id_of(edge_id, e));
                for (auto& s : subsets(e, static_cast<std::size_t>(r - 1))) sets.insert(std::move(s));
            }
            for (Vertex v : w.non_roots()) base.vertices.push_back(base.map[v]);
            for (std::size_t t = 0; t < slot_capacity; ++t) {
                Candidate c = base;
                c.t = t;
                for (const auto& s : sets) {
                    VertexSet key = s;
                    key.push_back(static_cast<Vertex>(t));
                    c.slots.push_back(id_of(slot_id, key));
                }
                cands[i].push_back(std::move(c));
            }
        }
    }

    BipartiteHypergraph b;
    const std::size_t vertex_offset = edge_id.size();
    const std::size_t slot_offset = vertex_offset + g.vertex_count();
    b.b_count = slot_offset + slot_id.size();
    b.candidates.resize(sys.family.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        for (const auto& c : cands[i]) {
            std::vector<std::size_t> ids = c.edges;
            for (Vertex v : c.vertices) ids.push_back(vertex_offset + v);
            for (std::size_t s : c.slots) ids.push_back(slot_offset + s);
            b.candidates[i].push_back(std::move(ids));
            ++out.candidates;
        }
    }
    out.matching = finishing_matching(b, budget);
    if (out.found()) {
        std::vector<std::vector<VertexSet>> images;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            out.maps.push_back(cands[i][out.matching.choice[i]].map);
            images.push_back(image_edges(sys.supers[i], out.maps.back()));
        }
        out.max_codegree_load = codegree_load(images, r);
    }
    return out;
}

bool verify_system_embedding(const Hypergraph& g, const SupergraphSystem& sys, const SystemEmbedding& emb)
{
    if (!emb.found() || emb.maps.size() != sys.supers.size()) return false;
    const VertexSet vj = system_vertices(sys);
    std::set<VertexSet> used_edges;
    std::set<Vertex> used_vertices;
    std::vector<std::vector<VertexSet>> images;
    for (std::size_t i = 0; i < sys.supers.size(); ++i) {
        const RootedGadget& w = sys.supers[i];
        if (!is_valid_embedding(g, w, identity_roots(w), emb.maps[i])) return false;
        for (Vertex v : w.non_roots()) {
            const Vertex x = emb.maps[i][v];
            if (contains(vj, x) || !used_vertices.insert(x).second) return false;
        }
        images.push_back(image_edges(w, emb.maps[i]));
        for (const auto& e : images.back()) {
            if (sys.base.has_edge(e) && !sys.family[i].has_edge(e)) return false;
            if (!used_edges.insert(e).second) return false;
        }
    }
    return codegree_load(images, g.rank()) <= emb.slot_capacity * emb.c_bound;
}

const char* to_string(MatchingResult::Status s)
{
    switch (s) {
    case MatchingResult::Status::Found: return "found";
    case MatchingResult::Status::Nonexistent: return "nonexistent";
    case MatchingResult::Status::BudgetExhausted: return "budget-exhausted";
    }
    return "unknown";
}

}  // namespace hd
