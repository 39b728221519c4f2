#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "hyperdesign/hypergraph.hpp"

namespace hd {

/// Component i-1 holds e(G^(i)) / C(n, i) for i = 1..r.
using DensityVector = std::vector<mpq_class>;

DensityVector density_vector(const Hypergraph& g);

/// Each i-set (1 <= i <= densities.size()) is an edge independently with
/// probability densities[i-1].
Hypergraph random_host(std::size_t n, const std::vector<double>& densities, std::uint64_t seed);

enum class SpencerMode { Random, Derandomized };

struct SpencerResult {
    VertexSet a;       // sampled set
    VertexSet a_star;  // A minus min(e) for every edge e inside A
    mpq_class p;
    /// p n - sum_i p^i e(G^(i)), a lower bound on E|A*|.
    mpq_class expectation_bound;
    /// e(G^(i)) <= c / C(q, i-1) * C(n, i) for every i, with c = 1 / (r 6^r).
    bool density_caps_hold = false;
};

/// Throws InvalidArgument when n < 2q. The returned A* is checked to be
/// independent on every call.
SpencerResult spencer_alteration(const Hypergraph& g, int q, SpencerMode mode, std::uint64_t seed = 0);

bool density_caps_hold(const Hypergraph& g, int q);
bool is_independent(const Hypergraph& g, const VertexSet& s);

struct ProbeTrial {
    std::uint64_t copies = 0;
    DensityVector realized;
};

/// Empirical report; membership in the Turan space is not decided.
struct ProbeReport {
    std::size_t n = 0;  // host order, the k used for the supersaturation ratio
    std::size_t trials = 0;
    std::size_t hits = 0;
    std::uint64_t min_copies = 0;
    double mean_copies = 0;
    /// min_copies / C(n, v(F)).
    double gamma_observed = 0;
    std::vector<double> densities;  // alpha + eps, capped at 1
    std::vector<ProbeTrial> per_trial;
};

ProbeReport turan_space_probe(const Hypergraph& f, const std::vector<double>& alpha, std::size_t n, std::size_t trials,
                              std::uint64_t seed, double eps = 0.0, std::uint64_t cap = 200'000'000);

struct TailResult {
    double fraction = 0;
    std::uint64_t below = 0;
    std::uint64_t checked = 0;
    bool exhaustive = false;
    /// 2k^2 > n: outside the regime where the tail bound is stated.
    bool small_n_warning = false;
};

/// Fraction of k-subsets S with e(G[S]) < beta C(k, r). Exhaustive when
/// C(n, k) <= cap and `force_sampled` is off, otherwise `trials` uniform samples.
TailResult subset_density_tail(const Hypergraph& g, std::size_t k, double beta, std::size_t trials, std::uint64_t seed,
                               std::uint64_t cap = 5'000'000, bool force_sampled = false);

}  // namespace hd
