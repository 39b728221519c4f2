#include "hyperdesign/fractional.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/random.hpp"

namespace hd {

namespace {

mpq_class ratio(std::size_t num, std::size_t den)
{
    mpq_class q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    q.canonicalize();
    return q;
}

}  // namespace

void FractionalWeighting::add(const VertexSet& clique, const mpq_class& w)
{
    if (w == 0) return;
    auto [it, inserted] = weights.emplace(clique, w);
    if (!inserted) {
        it->second += w;
        if (it->second == 0) weights.erase(it);
    }
}

void FractionalWeighting::add(const FractionalWeighting& other, const mpq_class& factor)
{
    for (const auto& [c, w] : other.weights) add(c, factor * w);
}

mpq_class FractionalWeighting::max_weight() const
{
    mpq_class best = 0;
    for (const auto& [c, w] : weights) best = std::max(best, w);
    return best;
}

RationalEdgeMap boundary(const FractionalWeighting& psi)
{
    RationalEdgeMap out;
    for (const auto& [c, w] : psi.weights) {
        for_each_subset(c, static_cast<std::size_t>(psi.r), [&](const VertexSet& e) {
            out[e] += w;
            return true;
        });
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

bool verify_fractional(const Hypergraph& g, const FractionalWeighting& psi, const RationalEdgeMap& target)
{
    const auto r = static_cast<std::size_t>(g.rank());
    for (const auto& [c, w] : psi.weights) {
        if (w < 0 || w > 1) return false;
        if (c.size() != static_cast<std::size_t>(psi.q)) return false;
        bool clique = true;
        for_each_subset(c, r, [&](const VertexSet& e) {
            clique = g.has_edge(e);
            return clique;
        });
        if (!clique) return false;
    }
    const RationalEdgeMap got = boundary(psi);
    for (const auto& e : g.edges()) {
        mpq_class want = 1;
        if (!target.empty()) {
            const auto it = target.find(e);
            want = it == target.end() ? mpq_class(0) : it->second;
        }
        const auto it = got.find(e);
        const mpq_class have = it == got.end() ? mpq_class(0) : it->second;
        if (have != want) return false;
    }
    return std::all_of(got.begin(), got.end(), [&](const auto& kv) { return g.has_edge(kv.first); });
}

bool verify_fractional_packing(const Hypergraph& g, const FractionalWeighting& psi)
{
    const auto r = static_cast<std::size_t>(g.rank());
    for (const auto& [c, w] : psi.weights) {
        if (w < 0 || w > 1 || c.size() != static_cast<std::size_t>(psi.q)) return false;
        bool clique = true;
        for_each_subset(c, r, [&](const VertexSet& e) {
            clique = g.has_edge(e);
            return clique;
        });
        if (!clique) return false;
    }
    const RationalEdgeMap got = boundary(psi);
    return std::all_of(got.begin(), got.end(), [](const auto& kv) { return kv.second <= 1; });
}

namespace {

// Edge-by-clique incidence matrix; rows follow the lexicographic edge order.
std::vector<std::vector<mpq_class>> incidence(const Hypergraph& g, const std::vector<VertexSet>& cliques,
                                              std::size_t extra_columns)
{
    const std::vector<VertexSet> edges(g.edges().begin(), g.edges().end());
    std::map<VertexSet, std::size_t> index;
    for (std::size_t i = 0; i < edges.size(); ++i) index.emplace(edges[i], i);
    std::vector<std::vector<mpq_class>> a(edges.size(), std::vector<mpq_class>(cliques.size() + extra_columns, 0));
    for (std::size_t j = 0; j < cliques.size(); ++j) {
        for_each_subset(cliques[j], static_cast<std::size_t>(g.rank()), [&](const VertexSet& e) {
            a[index.at(e)][j] = 1;
            return true;
        });
    }
    return a;
}

std::vector<VertexSet> lp_cliques(const Hypergraph& g, int q, std::size_t clique_cap)
{
    if (g.edge_count() && !g.uniform()) throw InvalidArgument("G must be uniform");
    if (q <= g.rank()) throw InvalidArgument("need q > r");
    auto cliques = enumerate_cliques(g, q);
    if (cliques.size() > clique_cap) throw CapExceeded("too many cliques for the exact LP");
    return cliques;
}

}  // namespace

FractionalResult fractional_decompose(const Hypergraph& g, int q, const RationalEdgeMap& target, PivotRule rule,
                                      std::size_t clique_cap)
{
    const auto cliques = lp_cliques(g, q, clique_cap);
    FractionalResult res;
    res.psi.q = q;
    res.psi.r = g.rank();
    res.cliques = cliques.size();
    const auto a = incidence(g, cliques, 0);
    std::vector<mpq_class> b(a.size(), 1);
    if (!target.empty()) {
        std::size_t i = 0;
        for (const auto& e : g.edges()) {
            const auto it = target.find(e);
            b[i++] = it == target.end() ? mpq_class(0) : it->second;
        }
    }
    const LpResult lp = simplex_solve(a, b, {}, rule);
    res.pivots = lp.pivots;
    if (lp.status != LpResult::Status::Optimal) {
        res.farkas = lp.farkas;
        return res;
    }
    res.feasible = true;
    for (std::size_t j = 0; j < cliques.size(); ++j) res.psi.add(cliques[j], lp.x[j]);
    return res;
}

PackingResult fractional_packing(const Hypergraph& g, int q, PivotRule rule, std::size_t clique_cap)
{
    const auto cliques = lp_cliques(g, q, clique_cap);
    PackingResult res;
    res.psi.q = q;
    res.psi.r = g.rank();
    res.cliques = cliques.size();
    // One slack per edge; minimizing the total slack maximizes the covered weight.
    auto a = incidence(g, cliques, g.edge_count());
    std::vector<mpq_class> c(cliques.size() + a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i][cliques.size() + i] = 1;
        c[cliques.size() + i] = 1;
    }
    const LpResult lp = simplex_solve(a, std::vector<mpq_class>(a.size(), 1), c, rule);
    if (lp.status != LpResult::Status::Optimal) throw Error("packing LP did not reach an optimum");
    res.pivots = lp.pivots;
    for (std::size_t j = 0; j < cliques.size(); ++j) res.psi.add(cliques[j], lp.x[j]);
    res.uncovered = lp.objective;
    return res;
}

bool fixed_targets_in_range(const Hypergraph& g, const RationalEdgeMap& phi)
{
    const mpq_class lo = 1 - mpq_class(1, static_cast<unsigned long>(std::max<std::size_t>(g.edge_count(), 1)));
    for (const auto& e : g.edges()) {
        const auto it = phi.find(e);
        if (it == phi.end() || it->second < lo || it->second > 1) return false;
    }
    return true;
}

FractionalWeighting fixed_fractional(const Hypergraph& g, int q, const RationalEdgeMap& phi,
                                     const FractionalWeighting& phi0,
                                     const std::map<VertexSet, FractionalWeighting>& phi_e)
{
    const std::size_t m = g.edge_count();
    FractionalWeighting out;
    out.q = q;
    out.r = g.rank();
    if (m == 0) return out;
    const mpq_class em(static_cast<unsigned long>(m));
    for (const auto& e : g.edges()) {
        const auto t = phi.find(e);
        if (t == phi.end()) throw InvalidArgument("missing target for " + to_string(e));
        const mpq_class lambda = em * (t->second - (1 - 1 / em));
        if (lambda < 0 || lambda > 1) throw InvalidArgument("target out of range at " + to_string(e));
        const auto pe = phi_e.find(e);
        if (pe == phi_e.end()) throw InvalidArgument("missing decomposition of G - " + to_string(e));
        out.add(phi0, lambda / em);
        out.add(pe->second, (1 - lambda) / em);
    }
    for (const auto& [c, w] : out.weights) {
        if (w < 0 || w > 1) throw Error("averaged weight outside [0, 1]");
    }
    return out;
}

std::optional<FixedInputs> fixed_fractional_inputs(const Hypergraph& g, int q)
{
    FixedInputs in;
    auto base = fractional_decompose(g, q);
    if (!base.feasible) return std::nullopt;
    in.phi0 = std::move(base.psi);
    for (const auto& e : g.edges()) {
        Hypergraph minus = g;
        minus.remove_edge(e);
        auto res = fractional_decompose(minus, q);
        if (!res.feasible) return std::nullopt;
        in.phi_e.emplace(e, std::move(res.psi));
    }
    return in;
}

Hypergraph induced_relabeled(const Hypergraph& g, const VertexSet& s)
{
    Hypergraph out(s.size(), g.rank());
    std::map<Vertex, Vertex> local;
    for (std::size_t i = 0; i < s.size(); ++i) local[s[i]] = static_cast<Vertex>(i);
    for (int k = 1; k <= g.rank(); ++k) {
        if (g.edge_count(k) == 0) continue;
        for_each_subset(s, static_cast<std::size_t>(k), [&](const VertexSet& e) {
            if (g.has_edge(e)) {
                VertexSet img;
                for (Vertex v : e) img.push_back(local[v]);
                out.add_edge(std::move(img));
            }
            return true;
        });
    }
    return out;
}

// --- low-weight averaging ----------------------------------------------------

namespace {

struct Shape {
    Hypergraph graph;
    bool decomposable = false;
    bool fixed_checked = false;
    std::optional<FixedInputs> fixed;
    std::map<std::vector<mpq_class>, std::optional<FractionalWeighting>> by_targets;
};

std::vector<VertexSet> choose_subsets(std::size_t n, std::size_t s, SubsetMode mode, std::size_t samples, std::uint64_t seed)
{
    if (mode == SubsetMode::Enumerate) {
        if (binomial(n, s) > 2'000'000) throw CapExceeded("too many s-sets to enumerate");
        return subsets_of_range(n, s);
    }
    Rng rng(seed);
    std::set<VertexSet> chosen;
    const std::uint64_t total = binomial(n, s);
    const std::size_t want = static_cast<std::size_t>(std::min<std::uint64_t>(samples, total));
    VertexSet all = range_set(n);
    for (std::size_t attempt = 0; chosen.size() < want && attempt < 50 * want + 100; ++attempt) {
        rng.shuffle(all);
        chosen.insert(normalized(VertexSet(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(s))));
    }
    return {chosen.begin(), chosen.end()};
}

}  // namespace

LowWeightResult low_weight_fractional(const Hypergraph& g, int q, std::size_t s, SubsetMode mode, std::size_t samples,
                                      std::uint64_t seed)
{
    const int r = g.rank();
    if (g.edge_count() && !g.uniform()) throw InvalidArgument("G must be uniform");
    if (s <= static_cast<std::size_t>(r) || s > g.vertex_count()) throw InvalidArgument("need r < s <= n");
    LowWeightResult out;
    out.psi.q = q;
    out.psi.r = r;
    auto& rep = out.report;

    const auto family = choose_subsets(g.vertex_count(), s, mode, samples, seed);
    rep.subsets_considered = family.size();
    std::map<std::vector<VertexSet>, std::size_t> shape_of;
    std::vector<Shape> shapes;
    std::vector<std::size_t> shape_index(family.size());
    std::vector<char> usable(family.size(), 0);
    for (std::size_t i = 0; i < family.size(); ++i) {
        Hypergraph local = induced_relabeled(g, family[i]);
        std::vector<VertexSet> key(local.edges().begin(), local.edges().end());
        auto [it, inserted] = shape_of.emplace(std::move(key), shapes.size());
        if (inserted) {
            Shape sh;
            sh.decomposable = local.edge_count() > 0 && fractional_decompose(local, q).feasible;
            sh.graph = std::move(local);
            shapes.push_back(std::move(sh));
        }
        shape_index[i] = it->second;
        usable[i] = shapes[it->second].decomposable ? 1 : 0;
    }
    rep.distinct_shapes = shapes.size();

    std::vector<std::pair<std::size_t, FractionalWeighting>> solved;
    std::size_t n_min = 0;
    while (true) {
        std::map<VertexSet, std::size_t> count;
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (!usable[i]) continue;
            const auto& sh = shapes[shape_index[i]];
            for (const auto& e : sh.graph.edges()) ++count[relabel(e, family[i])];
        }
        n_min = SIZE_MAX;
        rep.max_count = 0;
        for (const auto& e : g.edges()) {
            const auto it = count.find(e);
            if (it == count.end()) throw Error("edge " + to_string(e) + " lies in no usable s-set");
            n_min = std::min(n_min, it->second);
            rep.max_count = std::max(rep.max_count, it->second);
        }
        solved.clear();
        rep.via_fixed = rep.via_lp = 0;
        bool dropped = false;
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (!usable[i]) continue;
            Shape& sh = shapes[shape_index[i]];
            RationalEdgeMap targets;
            std::vector<mpq_class> key;
            for (const auto& e : sh.graph.edges()) {
                const mpq_class t = ratio(n_min, count.at(relabel(e, family[i])));
                targets[e] = t;
                key.push_back(t);
            }
            std::optional<FractionalWeighting> local;
            if (fixed_targets_in_range(sh.graph, targets)) {
                if (!sh.fixed_checked) {
                    sh.fixed = fixed_fractional_inputs(sh.graph, q);
                    sh.fixed_checked = true;
                }
                if (sh.fixed) {
                    local = fixed_fractional(sh.graph, q, targets, sh.fixed->phi0, sh.fixed->phi_e);
                    ++rep.via_fixed;
                }
            }
            if (!local) {
                auto it = sh.by_targets.find(key);
                if (it == sh.by_targets.end()) {
                    auto res = fractional_decompose(sh.graph, q, targets);
                    it = sh.by_targets.emplace(key, res.feasible ? std::optional(res.psi) : std::nullopt).first;
                }
                local = it->second;
                if (local) ++rep.via_lp;
            }
            if (!local) {
                usable[i] = 0;
                dropped = true;
                continue;
            }
            solved.emplace_back(i, std::move(*local));
        }
        if (!dropped) break;
    }

    for (const auto& [i, local] : solved) {
        for (const auto& [c, w] : local.weights) out.psi.add(relabel(c, family[i]), w);
    }
    const mpq_class scale = ratio(1, n_min);
    for (auto& [c, w] : out.psi.weights) w *= scale;
    rep.subsets_used = solved.size();
    rep.min_count = n_min;
    rep.max_weight = out.psi.max_weight();
    rep.c = rep.max_weight * mpq_class(static_cast<unsigned long>(binomial(g.vertex_count() - static_cast<std::size_t>(r),
                                                                           static_cast<std::size_t>(q - r))));
    return out;
}

BoostResult boost_regularity(const Hypergraph& g, const FractionalWeighting& psi, const mpq_class& c, std::uint64_t seed)
{
    if (c <= 0) throw InvalidArgument("low-weight constant must be positive");
    const int r = g.rank();
    BoostResult out;
    out.family.q = psi.q;
    const mpq_class d = mpq_class(static_cast<unsigned long>(binomial(g.vertex_count() - static_cast<std::size_t>(r),
                                                                      static_cast<std::size_t>(psi.q - r)))) / c;
    out.report.d = d;
    for (const auto& [h, w] : psi.weights) {
        if (w * d > 1) throw InvalidArgument("weighting is not low-weight for this constant");
    }
    Rng rng(seed);
    for (const auto& [h, w] : psi.weights) {
        if (rng.bernoulli(mpq_class(w * d))) out.family.cliques.push_back(h);
    }
    out.report.sampled = out.family.size();
    std::map<VertexSet, std::size_t> per_edge;
    for (const auto& h : out.family.cliques) {
        for_each_subset(h, static_cast<std::size_t>(r), [&](const VertexSet& e) {
            ++per_edge[e];
            return true;
        });
    }
    out.report.min_edge = g.edge_count() ? SIZE_MAX : 0;
    std::size_t total = 0;
    for (const auto& e : g.edges()) {
        const auto it = per_edge.find(e);
        const std::size_t k = it == per_edge.end() ? 0 : it->second;
        out.report.min_edge = std::min(out.report.min_edge, k);
        out.report.max_edge = std::max(out.report.max_edge, k);
        total += k;
    }
    out.report.mean_edge = g.edge_count() ? static_cast<double>(total) / static_cast<double>(g.edge_count()) : 0.0;
    return out;
}

InheritanceStats inheritance_sample(const Hypergraph& g, const VertexSet& r_set, std::size_t s, std::size_t threshold,
                                    std::size_t trials, std::uint64_t seed)
{
    if (s < r_set.size() || s > g.vertex_count()) throw InvalidArgument("need |R| <= s <= n");
    VertexSet rest = set_difference(range_set(g.vertex_count()), r_set);
    Rng rng(seed);
    InheritanceStats st;
    for (std::size_t t = 0; t < trials; ++t) {
        rng.shuffle(rest);
        VertexSet pick(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(s - r_set.size()));
        const VertexSet set = set_union(r_set, normalized(std::move(pick)));
        ++st.trials;
        if (min_codegree(induced_relabeled(g, set)) >= threshold) ++st.good;
    }
    return st;
}

InheritanceStats inheritance_exhaustive(const Hypergraph& g, const VertexSet& r_set, std::size_t s, std::size_t threshold)
{
    if (s < r_set.size() || s > g.vertex_count()) throw InvalidArgument("need |R| <= s <= n");
    const VertexSet rest = set_difference(range_set(g.vertex_count()), r_set);
    InheritanceStats st;
    for_each_subset(rest, s - r_set.size(), [&](const VertexSet& pick) {
        ++st.trials;
        if (min_codegree(induced_relabeled(g, set_union(r_set, pick))) >= threshold) ++st.good;
        return true;
    });
    return st;
}

void write_weighting(std::ostream& out, const FractionalWeighting& psi)
{
    for (const auto& [c, w] : psi.weights) {
        out << w.get_str();
        for (Vertex v : c) out << ' ' << v;
        out << '\n';
    }
}

FractionalWeighting read_weighting(std::istream& in, int r)
{
    FractionalWeighting psi;
    psi.r = r;
    std::string text;
    while (std::getline(in, text)) {
        if (text.empty()) continue;
        std::istringstream line(text);
        std::string w;
        line >> w;
        mpq_class value;
        if (value.set_str(w, 10) != 0) throw InvalidArgument("bad weight `" + w + "`");
        value.canonicalize();
        VertexSet c;
        Vertex v = 0;
        while (line >> v) c.push_back(v);
        c = normalized(std::move(c));
        if (psi.q == 0) psi.q = static_cast<int>(c.size());
        psi.add(c, value);
    }
    return psi;
}

}  // namespace hd
