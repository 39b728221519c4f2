#include "hyperdesign/turan.hpp"

#include <algorithm>

#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/decomposition.hpp"
#include "hyperdesign/random.hpp"

namespace hd {

namespace {

mpq_class ratio(std::uint64_t num, std::uint64_t den)
{
    mpq_class x(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    x.canonicalize();
    return x;
}

// E[F] for F = |A| - #edges inside A, where vertex v is in A with
// probability prob[v].
mpq_class estimator(const Hypergraph& g, const std::vector<mpq_class>& prob)
{
    mpq_class total = 0;
    for (const auto& x : prob) total += x;
    for (const auto& e : g.edges()) {
        mpq_class term = 1;
        for (Vertex v : e) {
            term *= prob[v];
            if (term == 0) break;
        }
        total -= term;
    }
    return total;
}

}  // namespace

DensityVector density_vector(const Hypergraph& g)
{
    DensityVector out;
    const std::size_t n = g.vertex_count();
    for (int i = 1; i <= g.rank(); ++i) {
        const std::uint64_t total = binomial(n, static_cast<std::uint64_t>(i));
        out.push_back(total ? ratio(g.edge_count(i), total) : mpq_class(0));
    }
    return out;
}

Hypergraph random_host(std::size_t n, const std::vector<double>& densities, std::uint64_t seed)
{
    if (densities.empty()) throw InvalidArgument("random_host needs at least one density");
    Hypergraph h(n, static_cast<int>(densities.size()));
    Rng rng(seed);
    for (std::size_t i = 1; i <= densities.size(); ++i) {
        for_each_subset(range_set(n), i, [&](const VertexSet& s) {
            if (rng.bernoulli(densities[i - 1])) h.add_edge(s);
            return true;
        });
    }
    return h;
}

bool is_independent(const Hypergraph& g, const VertexSet& s)
{
    for (const auto& e : g.edges()) {
        if (is_subset(e, s)) return false;
    }
    return true;
}

bool density_caps_hold(const Hypergraph& g, int q)
{
    const int r = g.rank();
    mpz_class six_r = 1;
    for (int i = 0; i < r; ++i) six_r *= 6;
    const mpq_class c = mpq_class(1) / (mpq_class(r) * six_r);
    const std::size_t n = g.vertex_count();
    for (int i = 1; i <= r; ++i) {
        const mpq_class cap = c / mpq_class(static_cast<unsigned long>(binomial(q, i - 1))) *
                              mpq_class(mpz_class(std::to_string(binomial(n, i))));
        if (mpq_class(static_cast<unsigned long>(g.edge_count(i))) > cap) return false;
    }
    return true;
}

SpencerResult spencer_alteration(const Hypergraph& g, int q, SpencerMode mode, std::uint64_t seed)
{
    const std::size_t n = g.vertex_count();
    if (q < 1 || n < 2 * static_cast<std::size_t>(q)) throw InvalidArgument("spencer_alteration needs n >= 2q");
    SpencerResult res;
    res.p = ratio(2 * static_cast<std::uint64_t>(q), n);
    res.expectation_bound = res.p * mpq_class(static_cast<unsigned long>(n));
    mpq_class power = 1;
    for (int i = 1; i <= g.rank(); ++i) {
        power *= res.p;
        res.expectation_bound -= power * mpq_class(static_cast<unsigned long>(g.edge_count(i)));
    }
    res.density_caps_hold = density_caps_hold(g, q);

    if (mode == SpencerMode::Random) {
        Rng rng(seed);
        for (Vertex v = 0; v < n; ++v) {
            if (rng.bernoulli(res.p)) res.a.push_back(v);
        }
    } else {
        std::vector<mpq_class> prob(n, res.p);
        for (Vertex v = 0; v < n; ++v) {
            prob[v] = 1;
            const mpq_class with = estimator(g, prob);
            prob[v] = 0;
            const mpq_class without = estimator(g, prob);
            prob[v] = with >= without ? 1 : 0;
            if (prob[v] == 1) res.a.push_back(v);
        }
    }
    VertexSet removed;
    for (const auto& e : g.edges()) {
        if (is_subset(e, res.a)) removed.push_back(e.front());
    }
    res.a_star = set_difference(res.a, normalized(removed));
    if (!is_independent(g, res.a_star)) throw Error("alteration left an edge inside A*");
    return res;
}

ProbeReport turan_space_probe(const Hypergraph& f, const std::vector<double>& alpha, std::size_t n, std::size_t trials,
                              std::uint64_t seed, double eps, std::uint64_t cap)
{
    if (alpha.size() < static_cast<std::size_t>(f.rank())) throw InvalidArgument("alpha must cover every uniformity of F");
    ProbeReport rep;
    rep.n = n;
    rep.trials = trials;
    for (double a : alpha) rep.densities.push_back(std::clamp(a + eps, 0.0, 1.0));
    Hypergraph pattern(f.vertex_count(), static_cast<int>(alpha.size()));
    pattern.merge(f);
    double sum = 0;
    rep.min_copies = UINT64_MAX;
    for (std::size_t t = 0; t < trials; ++t) {
        const Hypergraph host = random_host(n, rep.densities, Rng::derive(seed, t));
        ProbeTrial trial;
        trial.copies = count_copies(host, pattern, cap);
        trial.realized = density_vector(host);
        if (trial.copies > 0) ++rep.hits;
        rep.min_copies = std::min(rep.min_copies, trial.copies);
        sum += static_cast<double>(trial.copies);
        rep.per_trial.push_back(std::move(trial));
    }
    if (trials == 0) rep.min_copies = 0;
    rep.mean_copies = trials ? sum / static_cast<double>(trials) : 0;
    const auto total = binomial(n, f.vertex_count());
    rep.gamma_observed = total ? static_cast<double>(rep.min_copies) / static_cast<double>(total) : 0;
    return rep;
}

TailResult subset_density_tail(const Hypergraph& g, std::size_t k, double beta, std::size_t trials, std::uint64_t seed,
                               std::uint64_t cap, bool force_sampled)
{
    if (!g.uniform()) throw InvalidArgument("subset_density_tail needs a uniform hypergraph");
    const std::size_t n = g.vertex_count();
    if (k > n) throw InvalidArgument("k exceeds the vertex count");
    TailResult res;
    res.small_n_warning = 2 * k * k > n;
    const double threshold = beta * static_cast<double>(binomial(k, static_cast<std::uint64_t>(g.rank())));
    auto below = [&](const VertexSet& s) { return static_cast<double>(g.induced_edge_count(s)) < threshold; };
    if (!force_sampled && binomial(n, k) <= cap) {
        res.exhaustive = true;
        for_each_subset(range_set(n), k, [&](const VertexSet& s) {
            ++res.checked;
            if (below(s)) ++res.below;
            return true;
        });
    } else {
        Rng rng(seed);
        VertexSet all = range_set(n);
        for (std::size_t t = 0; t < trials; ++t) {
            // Partial Fisher-Yates for a uniform k-subset.
            for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
            VertexSet s(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
            std::sort(s.begin(), s.end());
            ++res.checked;
            if (below(s)) ++res.below;
        }
    }
    res.fraction = res.checked ? static_cast<double>(res.below) / static_cast<double>(res.checked) : 0;
    return res;
}

}  // namespace hd
