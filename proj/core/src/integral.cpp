#include "hyperdesign/integral.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include <gmpxx.h>

#include "hyperdesign/combinatorics.hpp"

namespace hd {

void IntegralValuation::add(const VertexSet& clique, std::int64_t w)
{
    if (w == 0) return;
    auto [it, inserted] = weights.emplace(clique, w);
    if (!inserted) {
        it->second += w;
        if (it->second == 0) weights.erase(it);
    }
}

void IntegralValuation::add(const IntegralValuation& other, std::int64_t factor)
{
    for (const auto& [c, w] : other.weights) add(c, factor * w);
}

std::vector<VertexSet> IntegralValuation::positives() const
{
    std::vector<VertexSet> out;
    for (const auto& [c, w] : weights) {
        for (std::int64_t k = 0; k < w; ++k) out.push_back(c);
    }
    return out;
}

std::vector<VertexSet> IntegralValuation::negatives() const
{
    std::vector<VertexSet> out;
    for (const auto& [c, w] : weights) {
        for (std::int64_t k = 0; k < -w; ++k) out.push_back(c);
    }
    return out;
}

std::int64_t IntegralValuation::l1() const
{
    std::int64_t total = 0;
    for (const auto& [c, w] : weights) total += w < 0 ? -w : w;
    return total;
}

IntegralHypergraph IntegralHypergraph::unit(const Hypergraph& g)
{
    IntegralHypergraph l{g, {}};
    for (const auto& e : g.edges()) l.psi[e] = 1;
    return l;
}

EdgeMap boundary(const IntegralValuation& phi)
{
    EdgeMap out;
    for (const auto& [c, w] : phi.weights) {
        for_each_subset(c, static_cast<std::size_t>(phi.r), [&](const VertexSet& e) {
            out[e] += w;
            return true;
        });
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

bool integral_is_divisible(const EdgeMap& psi, int r, int q)
{
    for (int i = 0; i < r; ++i) {
        const auto m = static_cast<std::int64_t>(binomial(static_cast<std::uint64_t>(q - i), static_cast<std::uint64_t>(r - i)));
        std::map<VertexSet, std::int64_t> sums;
        for (const auto& [e, w] : psi) {
            if (w == 0) continue;
            for_each_subset(e, static_cast<std::size_t>(i), [&](const VertexSet& t) {
                sums[t] += w;
                return true;
            });
        }
        for (const auto& [t, s] : sums) {
            if (s % m != 0) return false;
        }
    }
    return true;
}

// --- exact integer solver ---------------------------------------------------

namespace {

std::int64_t to_int64(const mpz_class& z)
{
    if (!z.fits_slong_p()) throw Error("integral weight exceeds 64 bits");
    return z.get_si();
}

std::int64_t l1_norm(const std::vector<mpz_class>& x)
{
    mpz_class total = 0;
    for (const auto& v : x) total += abs(v);
    return to_int64(total);
}

// Column echelon form of the incidence matrix: each column carries its
// A-part (rows) followed by its unimodular V-part.
struct LatticeSolver {
    std::size_t rows;
    std::size_t vars;
    std::vector<std::vector<mpz_class>> cols;
    std::vector<std::size_t> pivot_row;

    LatticeSolver(std::size_t rows_, std::size_t vars_) : rows(rows_), vars(vars_), cols(vars_, std::vector<mpz_class>(rows_ + vars_))
    {
        for (std::size_t j = 0; j < vars; ++j) cols[j][rows + j] = 1;
    }

    void reduce()
    {
        std::size_t piv = 0;
        for (std::size_t i = 0; i < rows && piv < vars; ++i) {
            while (true) {
                std::size_t best = vars;
                for (std::size_t j = piv; j < vars; ++j) {
                    if (cols[j][i] == 0) continue;
                    if (best == vars || abs(cols[j][i]) < abs(cols[best][i])) best = j;
                }
                if (best == vars) break;
                std::swap(cols[piv], cols[best]);
                bool clean = true;
                for (std::size_t j = piv + 1; j < vars; ++j) {
                    if (cols[j][i] == 0) continue;
                    mpz_class t;
                    mpz_fdiv_q(t.get_mpz_t(), cols[j][i].get_mpz_t(), cols[piv][i].get_mpz_t());
                    auto& dst = cols[j];
                    const auto& src = cols[piv];
                    for (std::size_t k = i; k < rows + vars; ++k) {
                        if (src[k] != 0) dst[k] -= t * src[k];
                    }
                    if (dst[i] != 0) clean = false;
                }
                if (clean) {
                    pivot_row.push_back(i);
                    ++piv;
                    break;
                }
            }
        }
    }

    // Particular solution with zero kernel component, or nothing.
    bool solve(const std::vector<mpz_class>& b, std::vector<mpz_class>& x) const
    {
        std::vector<mpz_class> residual = b;
        x.assign(vars, 0);
        for (std::size_t k = 0; k < pivot_row.size(); ++k) {
            const std::size_t i = pivot_row[k];
            if (residual[i] == 0) continue;
            if (!mpz_divisible_p(residual[i].get_mpz_t(), cols[k][i].get_mpz_t())) return false;
            const mpz_class y = residual[i] / cols[k][i];
            for (std::size_t row = i; row < rows; ++row) {
                if (cols[k][row] != 0) residual[row] -= y * cols[k][row];
            }
            for (std::size_t v = 0; v < vars; ++v) {
                if (cols[k][rows + v] != 0) x[v] += y * cols[k][rows + v];
            }
        }
        return std::all_of(residual.begin(), residual.end(), [](const mpz_class& v) { return v == 0; });
    }

    void minimize_l1(std::vector<mpz_class>& x) const
    {
        std::int64_t current = l1_norm(x);
        bool improved = true;
        for (int pass = 0; improved && pass < 200; ++pass) {
            improved = false;
            for (std::size_t k = pivot_row.size(); k < vars; ++k) {
                for (int sign : {1, -1}) {
                    std::vector<mpz_class> trial = x;
                    for (std::size_t v = 0; v < vars; ++v) trial[v] += sign * cols[k][rows + v];
                    const std::int64_t value = l1_norm(trial);
                    if (value < current) {
                        x = std::move(trial);
                        current = value;
                        improved = true;
                    }
                }
            }
        }
    }
};

}  // namespace

IntegralValuation wilson_solve(const VertexSet& ground, int r, int q, const EdgeMap& target, const WilsonOptions& options)
{
    if (r < 0 || q <= r) throw InvalidArgument("wilson_solve needs q > r >= 0");
    IntegralValuation phi;
    phi.ground = ground.empty() ? 0 : static_cast<std::size_t>(ground.back()) + 1;
    phi.q = q;
    phi.r = r;
    if (std::all_of(target.begin(), target.end(), [](const auto& kv) { return kv.second == 0; })) return phi;
    if (ground.size() < static_cast<std::size_t>(q)) throw NotDivisible("ground smaller than q");
    const std::uint64_t var_count = binomial(ground.size(), static_cast<std::uint64_t>(q));
    if (var_count > options.max_variables) throw CapExceeded("too many cliques for the integer solver");

    const auto cliques = subsets(ground, static_cast<std::size_t>(q));
    const auto edges = subsets(ground, static_cast<std::size_t>(r));
    std::map<VertexSet, std::size_t> edge_index;
    for (std::size_t i = 0; i < edges.size(); ++i) edge_index.emplace(edges[i], i);
    for (const auto& [e, w] : target) {
        if (w != 0 && !edge_index.count(e)) throw InvalidArgument("target set " + to_string(e) + " outside the ground");
    }

    LatticeSolver solver(edges.size(), cliques.size());
    for (std::size_t j = 0; j < cliques.size(); ++j) {
        for_each_subset(cliques[j], static_cast<std::size_t>(r), [&](const VertexSet& e) {
            solver.cols[j][edge_index.at(e)] = 1;
            return true;
        });
    }
    solver.reduce();
    std::vector<mpz_class> b(edges.size(), 0);
    for (const auto& [e, w] : target) {
        if (w != 0) b[edge_index.at(e)] = static_cast<long>(w);
    }
    std::vector<mpz_class> x;
    if (!solver.solve(b, x)) throw NotDivisible("no integral decomposition of the target");
    if (options.minimize_l1) solver.minimize_l1(x);
    for (std::size_t j = 0; j < cliques.size(); ++j) phi.add(cliques[j], to_int64(x[j]));
    return phi;
}

IntegralValuation wilson_decompose(const IntegralHypergraph& l, int q, const WilsonOptions& options)
{
    const int r = l.graph.rank();
    if (!l.graph.uniform()) throw InvalidArgument("L must be uniform");
    if (!integral_is_divisible(l.psi, r, q)) throw NotDivisible("L is not K_q^r-divisible");
    IntegralValuation phi = wilson_solve(range_set(l.graph.vertex_count()), r, q, l.psi, options);
    phi.ground = l.graph.vertex_count();
    return phi;
}

IntegralValuation cone_valuation(const EdgeMap& target, const VertexSet& s, const VertexSet& ground, int r, int q,
                                 const WilsonOptions& options)
{
    const auto k = s.size();
    if (k > static_cast<std::size_t>(r) || !is_subset(s, ground)) throw InvalidArgument("cone needs S inside the ground with |S| <= r");
    const VertexSet rest = set_difference(ground, s);
    EdgeMap link_target;
    for (const auto& [f, w] : target) {
        if (w == 0 || !is_subset(s, f)) continue;
        if (!is_subset(f, ground)) throw InvalidArgument("cone target " + to_string(f) + " outside the ground");
        link_target[set_difference(f, s)] = w;
    }
    const int r_link = r - static_cast<int>(k);
    const int q_link = q - static_cast<int>(k);
    if (!integral_is_divisible(link_target, r_link, q_link)) throw NotDivisible("link target of " + to_string(s) + " is not divisible");
    const IntegralValuation lower = wilson_solve(rest, r_link, q_link, link_target, options);
    IntegralValuation phi;
    phi.ground = ground.empty() ? 0 : static_cast<std::size_t>(ground.back()) + 1;
    phi.q = q;
    phi.r = r;
    for (const auto& [p, w] : lower.weights) phi.add(set_union(p, s), w);
    return phi;
}

namespace {

EdgeMap residual(const EdgeMap& psi, const IntegralValuation& phi)
{
    EdgeMap out = psi;
    for (const auto& [e, w] : boundary(phi)) out[e] -= w;
    for (auto it = out.begin(); it != out.end();) {
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

}  // namespace

EdgeIntersectingResult edge_intersecting_integral_decompose(const IntegralHypergraph& l, int q, const WilsonOptions& options)
{
    const int r = l.graph.rank();
    if (l.graph.edge_count() && !l.graph.uniform()) throw InvalidArgument("L must be uniform");
    if (q <= r) throw InvalidArgument("need q > r");
    for (const auto& [e, w] : l.psi) {
        if (w != 0 && !l.graph.has_edge(e)) throw InvalidArgument("psi supported off E(L) at " + to_string(e));
    }
    if (!integral_is_divisible(l.psi, r, q)) throw NotDivisible("L is not K_q^r-divisible");

    const std::size_t n0 = l.graph.vertex_count();
    const std::size_t m = n0 + static_cast<std::size_t>(q + r);
    EdgeIntersectingResult result;
    result.fresh = range_set(static_cast<Vertex>(n0), static_cast<Vertex>(m));
    const VertexSet x_prime(result.fresh.begin(), result.fresh.begin() + (q - r));
    auto& phi = result.phi;
    phi.ground = m;
    phi.q = q;
    phi.r = r;

    for (const auto& [e, w] : l.psi) phi.add(set_union(e, x_prime), w);
    EdgeMap rest = residual(l.psi, phi);
    result.residual_after_stage.push_back(rest.size());

    for (int i = 1; i <= r; ++i) {
        const auto k = static_cast<std::size_t>(r - i);
        std::map<VertexSet, EdgeMap> groups;
        for (const auto& [f, w] : rest) {
            VertexSet s;
            for (Vertex v : f) {
                if (v < n0) s.push_back(v);
            }
            if (s.size() > k) throw Error("residual on " + to_string(f) + " survived an earlier stage");
            if (s.size() == k) groups[s][f] = w;
        }
        for (const auto& [s, target] : groups) {
            phi.add(cone_valuation(target, s, set_union(s, result.fresh), r, q, options));
        }
        rest = residual(l.psi, phi);
        for (const auto& [f, w] : rest) {
            const auto inside = static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [&](Vertex v) { return v < n0; }));
            if (inside >= k) throw Error("stage invariant violated at " + to_string(f));
        }
        result.residual_after_stage.push_back(rest.size());
    }
    if (!rest.empty()) throw Error("edge-intersecting decomposition left a residual");
    return result;
}

bool is_edge_intersecting(const IntegralValuation& phi, const Hypergraph& l)
{
    const VertexSet support = l.support();
    for (const auto& [c, w] : phi.weights) {
        const VertexSet meet = set_intersection(c, support);
        if (meet.empty()) continue;
        bool found = false;
        for (const auto& f : l.edges()) {
            if (is_subset(meet, f)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool boundary_matches(const IntegralValuation& phi, const EdgeMap& psi)
{
    EdgeMap expected;
    for (const auto& [e, w] : psi) {
        if (w != 0) expected[e] = w;
    }
    return boundary(phi) == expected;
}

void write_valuation(std::ostream& out, const IntegralValuation& phi)
{
    for (const auto& [c, w] : phi.weights) {
        out << w;
        for (Vertex v : c) out << ' ' << v;
        out << '\n';
    }
}

IntegralValuation read_valuation(std::istream& in, std::size_t ground, int r)
{
    IntegralValuation phi;
    phi.ground = ground;
    phi.r = r;
    std::string text;
    while (std::getline(in, text)) {
        if (text.empty()) continue;
        std::istringstream line(text);
        std::int64_t w = 0;
        if (!(line >> w)) throw InvalidArgument("bad valuation line: " + text);
        VertexSet c;
        Vertex v = 0;
        while (line >> v) {
            if (v >= ground) throw InvalidArgument("valuation vertex out of range");
            c.push_back(v);
        }
        c = normalized(std::move(c));
        if (phi.q == 0) phi.q = static_cast<int>(c.size());
        if (static_cast<int>(c.size()) != phi.q) throw InvalidArgument("valuation cliques of mixed size");
        phi.add(c, w);
    }
    return phi;
}

}  // namespace hd
