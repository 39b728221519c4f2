#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/fractional.hpp"
#include "hyperdesign/simplex.hpp"
#include "oracles.hpp"

using namespace hd;

namespace {

mpq_class frac(long num, long den)
{
    mpq_class x(num, den);
    x.canonicalize();
    return x;
}

// dpsi equals the target (1 everywhere when empty) and psi lives on cliques.
bool weighting_oracle(const Hypergraph& g, const FractionalWeighting& psi, const RationalEdgeMap& target = {})
{
    const auto cl = oracle::cliques(g, psi.q);
    for (const auto& [c, w] : psi.weights) {
        if (w < 0 || w > 1 || !std::binary_search(cl.begin(), cl.end(), c)) return false;
    }
    const auto bd = oracle::boundary(psi.weights, psi.r);
    for (const auto& e : g.edges()) {
        const mpq_class want = target.empty() ? mpq_class(1) : target.at(e);
        const auto it = bd.find(e);
        if ((it == bd.end() ? mpq_class(0) : it->second) != want) return false;
    }
    return bd.size() <= g.edge_count();
}

Hypergraph k4_minus_edge()
{
    auto g = Hypergraph::complete(4, 2);
    g.remove_edge({2, 3});
    return g;
}

}  // namespace

TEST_CASE("simplex solves a small LP exactly")
{
    const std::vector<std::vector<mpq_class>> a = {{1, 2}, {3, 1}};
    const std::vector<mpq_class> b = {4, 6};
    for (auto rule : {PivotRule::Bland, PivotRule::Dantzig}) {
        const auto res = simplex_solve(a, b, {1, 1}, rule);
        REQUIRE(res.status == LpResult::Status::Optimal);
        CHECK(res.x[0] == frac(8, 5));
        CHECK(res.x[1] == frac(6, 5));
        CHECK(res.objective == frac(14, 5));
    }
}

TEST_CASE("simplex optimum with a free choice")
{
    // min -x0 - 2 x1 with x0 + x1 + s = 3: optimum puts everything on x1.
    const auto res = simplex_solve({{1, 1, 1}}, {3}, {-1, -2, 0}, PivotRule::Dantzig);
    REQUIRE(res.status == LpResult::Status::Optimal);
    CHECK(res.objective == -6);
    CHECK(res.x[1] == 3);
}

TEST_CASE("simplex reports infeasibility with a certificate")
{
    const std::vector<std::vector<mpq_class>> a = {{1, 1}, {1, -1}};
    const std::vector<mpq_class> b = {-1, 0};
    const auto res = simplex_solve(a, b);
    CHECK(res.status == LpResult::Status::Infeasible);
    CHECK(verify_farkas(a, b, res.farkas));
    CHECK_FALSE(verify_farkas(a, b, {0, 0}));
}

TEST_CASE("simplex reports unboundedness")
{
    const auto res = simplex_solve({{1, -1}}, {0}, {-1, 0});
    CHECK(res.status == LpResult::Status::Unbounded);
}

TEST_CASE("fractional decompositions of complete graphs")
{
    for (std::size_t n : {5, 7, 9}) {
        const auto g = Hypergraph::complete(n, 2);
        const auto res = fractional_decompose(g, 3);
        REQUIRE(res.feasible);
        CHECK(verify_fractional(g, res.psi));
        CHECK(weighting_oracle(g, res.psi));
        CHECK(res.cliques == binomial(n, 3));
    }
    const auto h = Hypergraph::complete(6, 3);
    const auto res = fractional_decompose(h, 4);
    REQUIRE(res.feasible);
    CHECK(weighting_oracle(h, res.psi));
}

TEST_CASE("Bland and Dantzig agree on feasibility")
{
    for (const auto& g : {Hypergraph::complete(7, 2), k4_minus_edge(), Hypergraph::cycle(6)}) {
        const auto a = fractional_decompose(g, 3, {}, PivotRule::Bland);
        const auto b = fractional_decompose(g, 3, {}, PivotRule::Dantzig);
        CHECK(a.feasible == b.feasible);
    }
}

TEST_CASE("infeasible hosts come with a Farkas certificate over the cliques")
{
    for (const auto& g : {k4_minus_edge(), Hypergraph::cycle(6)}) {
        const auto res = fractional_decompose(g, 3);
        REQUIRE_FALSE(res.feasible);
        const std::vector<VertexSet> edges(g.edges().begin(), g.edges().end());
        REQUIRE(res.farkas.size() == edges.size());
        std::map<VertexSet, mpq_class> y;
        mpq_class total = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            y[edges[i]] = res.farkas[i];
            total += res.farkas[i];
        }
        CHECK(total > 0);
        for (const auto& c : oracle::cliques(g, 3)) {
            mpq_class s = 0;
            for (const auto& e : oracle::k_subsets(c, 2)) s += y[e];
            CHECK(s <= 0);
        }
    }
}

TEST_CASE("fractional packings")
{
    const auto full = fractional_packing(Hypergraph::complete(7, 2), 3);
    CHECK(full.uncovered == 0);
    const auto c6 = fractional_packing(Hypergraph::cycle(6), 3);
    CHECK(c6.uncovered == 6);
    CHECK(c6.psi.weights.empty());
    // Two triangles sharing an edge: the shared edge caps the total at one.
    const auto g = k4_minus_edge();
    const auto k = fractional_packing(g, 3);
    CHECK(k.uncovered == 2);
    CHECK(verify_fractional_packing(g, k.psi));
    FractionalWeighting over;
    over.q = 3;
    over.r = 2;
    over.add(VertexSet{0, 1, 2}, 1);
    over.add(VertexSet{0, 1, 3}, frac(1, 2));
    CHECK_FALSE(verify_fractional_packing(g, over));
}

TEST_CASE("fixed fractional decompositions hit random admissible targets exactly")
{
    const auto k7 = Hypergraph::complete(7, 2);
    const auto inputs = fixed_fractional_inputs(k7, 3);
    REQUIRE(inputs.has_value());
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        RationalEdgeMap phi;
        for (const auto& e : k7.edges()) phi[e] = frac(20, 21) + frac(static_cast<long>(rng.below(1000)), 21000);
        REQUIRE(fixed_targets_in_range(k7, phi));
        const auto psi = fixed_fractional(k7, 3, phi, inputs->phi0, inputs->phi_e);
        CHECK(verify_fractional(k7, psi, phi));
        CHECK(weighting_oracle(k7, psi, phi));
    }
    RationalEdgeMap low;
    for (const auto& e : k7.edges()) low[e] = frac(1, 2);
    CHECK_FALSE(fixed_targets_in_range(k7, low));
}

TEST_CASE("low-weight averaging on K_12")
{
    const auto g = Hypergraph::complete(12, 2);
    const auto res = low_weight_fractional(g, 3, 6);
    CHECK(verify_fractional(g, res.psi));
    CHECK(res.report.subsets_used == binomial(12, 6));
    CHECK(res.report.distinct_shapes == 1);
    CHECK(res.report.min_count == res.report.max_count);
    CHECK(res.report.c == res.psi.max_weight() * 10);
    const auto sampled = low_weight_fractional(g, 3, 6, SubsetMode::Sample, 300, 4);
    CHECK(verify_fractional(g, sampled.psi));
    CHECK(sampled.report.subsets_considered == 300);
}

TEST_CASE("boosting samples cliques at rate psi * d")
{
    const auto g = Hypergraph::complete(12, 2);
    const auto lw = low_weight_fractional(g, 3, 6);
    const auto boosted = boost_regularity(g, lw.psi, lw.report.c, 5);
    CHECK(boosted.report.d * lw.report.c == 10);
    for (const auto& c : boosted.family.cliques) CHECK(lw.psi.weights.count(c));
    // Expected clique count: d * sum psi = d * e(G) / 3.
    const double expected = boosted.report.d.get_d() * 66.0 / 3.0;
    const double sd = std::sqrt(expected);
    CHECK(std::abs(static_cast<double>(boosted.family.size()) - expected) <= 4 * sd + 1);
    CHECK_THROWS_AS(boost_regularity(g, lw.psi, lw.report.c / 100, 5), InvalidArgument);
}

TEST_CASE("inheritance statistics")
{
    const auto g = Hypergraph::complete(9, 2);
    const auto ex = inheritance_exhaustive(g, {0, 1}, 5, 4);
    CHECK(ex.trials == binomial(7, 3));
    CHECK(ex.good == ex.trials);
    const auto none = inheritance_exhaustive(g, {0, 1}, 5, 5);
    CHECK(none.good == 0);
    const auto sample = inheritance_sample(g, {0, 1}, 5, 4, 50, 2);
    CHECK(sample.trials == 50);
    CHECK(sample.fraction() == 1.0);
}

TEST_CASE("weighting serialization round trip")
{
    const auto res = fractional_decompose(Hypergraph::complete(5, 2), 3);
    std::stringstream s;
    write_weighting(s, res.psi);
    const auto back = read_weighting(s, 2);
    CHECK(back.weights == res.psi.weights);
    CHECK(induced_relabeled(Hypergraph::complete(6, 2), {1, 3, 5}).edge_count() == 3);
}
