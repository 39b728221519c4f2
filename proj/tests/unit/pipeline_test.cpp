#include "doctest.h"
#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/pipeline.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace hd;

namespace {

std::string last_line(const std::string& text)
{
    auto end = text.find_last_not_of('\n');
    auto start = text.rfind('\n', end);
    return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

Hypergraph minus_triangle(std::size_t n)
{
    auto g = Hypergraph::complete(n, 2);
    for (const auto& e : clique_edges({0, 1, 2}, 2)) g.remove_edge(e);
    return g;
}

}  // namespace

TEST_CASE("K7 decomposes and the report ends with the verified line")
{
    const auto g = Hypergraph::complete(7, 2);
    const auto res = decompose(g, 3, {}, 1);
    REQUIRE(res.success());
    CHECK(verify_decomposition(res.host, res.decomposition));
    CHECK(oracle::decomposes(res.host, res.decomposition.cliques));
    for (const auto& e : g.edges()) CHECK(res.host.has_edge(e));
    CHECK(last_line(report_text(res.trace)) == "decomposition verified: true");
    CHECK_FALSE(res.trace.failed_stage.has_value());
    CHECK(res.trace.stages.size() == 6);
}

TEST_CASE("perturbed hosts decompose")
{
    const auto g = minus_triangle(13);
    REQUIRE(is_divisible(g, 3));
    const auto res = decompose(g, 3, {}, 5);
    CHECK(res.success());
    CHECK(verify_decomposition(res.host, res.decomposition));
}

TEST_CASE("reports are deterministic for a fixed seed")
{
    const auto g = Hypergraph::complete(13, 2);
    const auto a = decompose(g, 3, {}, 11);
    const auto b = decompose(g, 3, {}, 11);
    CHECK(report_text(a.trace) == report_text(b.trace));
    CHECK(report_json(a.trace) == report_json(b.trace));
    CHECK(a.decomposition.cliques == b.decomposition.cliques);
}

TEST_CASE("empty trace gives empty reports")
{
    const PipelineTrace trace;
    CHECK(report_text(trace).empty());
    CHECK(report_json(trace) == "{}");
}

TEST_CASE("non-divisible hosts are rejected")
{
    CHECK_THROWS_AS(decompose(Hypergraph::complete(6, 2), 3, {}, 1), NotDivisible);
}

TEST_CASE("a starved nibble is reported at stage 4")
{
    PipelineConfig cfg;
    cfg.rounds = 0;
    cfg.repair_budget = 0;
    const auto res = decompose(Hypergraph::complete(13, 2), 3, cfg, 2);
    CHECK_FALSE(res.success());
    REQUIRE(res.trace.failed_stage.has_value());
    CHECK(*res.trace.failed_stage == 4);
    const auto text = report_text(res.trace);
    CHECK(text.find("failed at stage 4") != std::string::npos);
    CHECK(text.find("leave of size") != std::string::npos);
    CHECK(last_line(text) == "decomposition verified: false");
}

TEST_CASE("JSON report mirrors the trace")
{
    const auto res = decompose(Hypergraph::complete(7, 2), 3, {}, 3);
    const auto doc = nlohmann::json::parse(report_json(res.trace));
    CHECK(doc.contains("config"));
    REQUIRE(doc.contains("stages"));
    CHECK(doc["stages"].size() == res.trace.stages.size());
    CHECK(doc["verified"] == true);
}

TEST_CASE("repair restores a packing with a hole")
{
    // A triangle decomposition of K7; drop two cliques and let the repair refill them.
    const auto g = Hypergraph::complete(7, 2);
    CliqueFamily packing{3, {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {0, 4, 5}, {1, 5, 6}, {0, 2, 6}}};
    REQUIRE(verify_decomposition(g, packing));
    packing.cliques.erase(packing.cliques.begin(), packing.cliques.begin() + 2);
    std::vector<VertexSet> leave;
    for (const auto& e : g.edges()) {
        bool covered = false;
        for (const auto& c : packing.cliques) covered = covered || is_subset(e, c);
        if (!covered) leave.push_back(e);
    }
    REQUIRE(leave.size() == 6);
    const auto rep = repair_leave(g, Hypergraph(7, 2), packing, leave, 1'000'000);
    CHECK(leave.empty());
    CHECK(rep.released > 0);
    CHECK(verify_decomposition(g, packing));
}
