#include "doctest.h"
#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/embed.hpp"
#include "oracles.hpp"

using namespace hd;

namespace {

Hypergraph random_host(std::size_t n, int r, double p, std::uint64_t seed)
{
    Rng rng(seed);
    Hypergraph g(n, r);
    for (const auto& e : subsets_of_range(n, static_cast<std::size_t>(r))) {
        if (rng.bernoulli(p)) g.add_edge(e);
    }
    return g;
}

bool matching_exists(const BipartiteHypergraph& b)
{
    std::vector<bool> used(b.b_count, false);
    std::function<bool(std::size_t)> go = [&](std::size_t a) {
        if (a == b.candidates.size()) return true;
        for (const auto& cand : b.candidates[a]) {
            if (std::any_of(cand.begin(), cand.end(), [&](std::size_t x) { return used[x]; })) continue;
            for (std::size_t x : cand) used[x] = true;
            const bool ok = go(a + 1);
            for (std::size_t x : cand) used[x] = false;
            if (ok) return true;
        }
        return false;
    };
    return go(0);
}

}  // namespace

TEST_CASE("fake-edge embeddings into a complete host")
{
    const RootedGadget f = build_fake_edge({0, 1}, 3);
    const auto k8 = Hypergraph::complete(8, 2);
    // Three non-roots placed injectively on the six free vertices.
    CHECK(count_embeddings(k8, f, {0, 1}) == 120);
    CHECK(oracle::embeddings(k8, f, {0, 1}) == 120);
    const auto greedy = embed_greedy(k8, f, {0, 1});
    REQUIRE(greedy.has_value());
    CHECK(is_valid_embedding(k8, f, {0, 1}, *greedy));
    CHECK(embed_degenerate(k8, f, {0, 1}, EmbedMode::Count).count == 120);
    CHECK(embed_degenerate(k8, f, {0, 1}, EmbedMode::Greedy).embedding.has_value());
}

TEST_CASE("layered and flat counts agree on the booster")
{
    const Booster b = build_booster(3, 2);
    const auto host = Hypergraph::complete_partite(3, 5, 2);
    std::vector<Vertex> image;
    for (Vertex v : b.gadget.roots) image.push_back(static_cast<Vertex>(b.gadget.color[v] * 5));
    const auto flat = count_embeddings(host, b.gadget, image);
    CHECK(flat == 13824);
    CHECK(count_layered_embeddings(host, b.gadget, image) == flat);
}

TEST_CASE("counts match brute force on random small pairs")
{
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        CAPTURE(seed);
        const auto h = oracle::random_gadget(2, 3, 2, 0.5, seed);
        const auto g = random_host(9, 2, 0.6, seed + 1000);
        const std::vector<Vertex> image{0, 1};
        const auto expect = oracle::embeddings(g, h, image);
        CHECK(count_embeddings(g, h, image) == expect);
        CHECK(count_layered_embeddings(g, h, image) == expect);
        const auto greedy = embed_greedy(g, h, image);
        if (greedy) CHECK(is_valid_embedding(g, h, image, *greedy));
        if (expect == 0) CHECK_FALSE(greedy.has_value());
    }
}

TEST_CASE("invalid embeddings are rejected")
{
    const RootedGadget f = build_fake_edge({0, 1}, 3);
    const auto k8 = Hypergraph::complete(8, 2);
    auto map = *embed_greedy(k8, f, {0, 1});
    const VertexSet nr = f.non_roots();
    map[nr[0]] = map[nr[1]];
    CHECK_FALSE(is_valid_embedding(k8, f, {0, 1}, map));
    CHECK_THROWS_AS(count_embeddings(k8, f, {0, 0}), InvalidArgument);
    RootedGadget bad = f;
    bad.layers.clear();
    CHECK_THROWS_AS(count_layered_embeddings(k8, bad, {0, 1}), InvalidArgument);
}

TEST_CASE("finishing matchings agree with exhaustive search")
{
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        BipartiteHypergraph b;
        b.b_count = 8;
        const std::size_t a_count = 2 + rng.below(3);
        b.candidates.resize(a_count);
        for (auto& list : b.candidates) {
            const std::size_t k = 1 + rng.below(4);
            for (std::size_t i = 0; i < k; ++i) {
                std::vector<std::size_t> cand;
                for (std::size_t x = 0; x < b.b_count; ++x) {
                    if (rng.below(4) == 0) cand.push_back(x);
                }
                if (cand.empty()) cand.push_back(rng.below(b.b_count));
                list.push_back(cand);
            }
        }
        const auto res = finishing_matching(b);
        CHECK(res.found() == matching_exists(b));
        if (res.found()) CHECK(is_a_perfect_matching(b, res.choice));
        else CHECK(res.status == MatchingResult::Status::Nonexistent);
    }
}

TEST_CASE("matching budget is reported")
{
    BipartiteHypergraph b;
    b.b_count = 2;
    b.candidates = {{{0}, {1}}, {{0}, {1}}, {{0}, {1}}};
    CHECK(finishing_matching(b).status == MatchingResult::Status::Nonexistent);
    CHECK(finishing_matching(b, 1).status == MatchingResult::Status::BudgetExhausted);
}

TEST_CASE("supergraph system with two fake-edges sharing a vertex")
{
    const auto g = Hypergraph::complete(20, 2);
    SupergraphSystem sys;
    sys.base = Hypergraph::from_edges(20, 2, {{0, 1}, {0, 2}});
    sys.family = {Hypergraph::from_edges(20, 2, {{0, 1}}), Hypergraph::from_edges(20, 2, {{0, 2}})};
    sys.supers = {build_fake_edge({0, 1}, 3), build_fake_edge({0, 2}, 3)};
    const auto one = embed_supergraph_system(g, sys, 1, 5);
    CHECK_FALSE(one.found());
    const auto two = embed_supergraph_system(g, sys, 2, 5);
    REQUIRE(two.found());
    CHECK(verify_system_embedding(g, sys, two));
    CHECK(two.max_codegree_load <= 2);
    CHECK(two.c_bound == 5);
    // Images are edge-disjoint and non-root images are disjoint.
    std::set<VertexSet> edges;
    std::set<Vertex> private_vertices;
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& w = sys.supers[i];
        for (const auto& e : w.graph.edges()) {
            VertexSet img;
            for (Vertex v : e) img.push_back(two.maps[i][v]);
            std::sort(img.begin(), img.end());
            CHECK(edges.insert(img).second);
            CHECK(g.has_edge(img));
        }
        for (Vertex v : w.non_roots()) {
            CHECK(two.maps[i][v] > 2);
            CHECK(private_vertices.insert(two.maps[i][v]).second);
        }
    }
}
