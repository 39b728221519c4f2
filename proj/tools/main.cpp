#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "graph_spec.hpp"
#include "hyperdesign/hyperdesign.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace hd;

struct Globals {
    std::uint64_t seed = 1;
    std::string format = "text";
    std::uint64_t cap = 50'000'000;
};

Json sets_json(const std::vector<VertexSet>& sets)
{
    Json out = Json::array();
    for (const auto& s : sets) out.push_back(s);
    return out;
}

std::string rational(const mpq_class& x) { return x.get_str(); }

void emit(const Json& doc, const Globals& g)
{
    if (g.format == "json") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    for (const auto& [key, value] : doc.items()) {
        std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
}

void write_family(const std::string& path, const CliqueFamily& f)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_sets(out, f.cliques);
}

Json booster_json(const Booster& b, const BoosterCheck& c)
{
    Json out;
    out["q"] = b.target.size();
    out["prime"] = b.prime;
    out["vertices"] = b.gadget.vertices.size();
    out["edges"] = b.gadget.graph.edge_count();
    out["on"] = b.on.size();
    out["off"] = b.off.size();
    out["orthogonal"] = b.orthogonal;
    out["rounds"] = b.rounds;
    out["history"] = b.history;
    out["off_decomposes"] = c.off_decomposes;
    out["on_decomposes"] = c.on_decomposes;
    out["target_unused"] = c.target_unused;
    out["edge_disjoint"] = c.edge_disjoint;
    out["partite"] = c.partite;
    return out;
}

void save_gadget(const std::string& path, const RootedGadget& g, const std::map<std::string, CliqueFamily>& families)
{
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_gadget(out, g, families);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact clique-decomposition gadgets, absorbers and pipelines for hypergraphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals glob;
    app.add_option("--seed", glob.seed, "Random seed")->capture_default_str();
    app.add_option("--format", glob.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--cap", glob.cap, "Search budget or size cap")->capture_default_str();

    Json result;
    bool ok = true;
    std::function<void()> action;

    std::string graph_spec, pattern_spec, out_path;
    int q = 3, r = 2;

    auto add_graph = [&](CLI::App* sub) { sub->add_option("graph", graph_spec, "Graph spec or file")->required(); };
    auto add_q = [&](CLI::App* sub) { sub->add_option("-q", q, "Clique order")->capture_default_str(); };
    auto add_qr = [&](CLI::App* sub) {
        add_q(sub);
        sub->add_option("-r", r, "Uniformity")->capture_default_str();
    };

    auto* check_div = app.add_subcommand("check-div", "Test K_q^r-divisibility");
    add_graph(check_div);
    add_q(check_div);
    check_div->callback([&] {
        action = [&] {
            const Hypergraph g = cli::parse_graph_spec(graph_spec);
            result["vertices"] = g.vertex_count();
            result["edges"] = g.edge_count();
            result["divisible"] = ok = is_divisible(g, q);
        };
    });

    bool list = false;
    auto* cliques = app.add_subcommand("cliques", "Enumerate q-cliques");
    add_graph(cliques);
    add_q(cliques);
    cliques->add_flag("--list", list, "Print every clique");
    cliques->callback([&] {
        action = [&] {
            const auto all = enumerate_cliques(cli::parse_graph_spec(graph_spec), q);
            result["count"] = all.size();
            if (list) result["cliques"] = sets_json(all);
        };
    });

    auto* exact = app.add_subcommand("decompose-exact", "Exact-cover decomposition search");
    add_graph(exact);
    add_q(exact);
    exact->add_option("--out", out_path, "Write the cliques to this file");
    exact->callback([&] {
        action = [&] {
            const Hypergraph g = cli::parse_graph_spec(graph_spec);
            const auto res = exact_cover_decompose(g, q, glob.cap);
            result["status"] = to_string(res.status);
            result["nodes"] = res.nodes;
            ok = res.decomposition && verify_decomposition(g, *res.decomposition);
            result["verified"] = ok;
            if (res.decomposition) {
                result["cliques"] = res.decomposition->size();
                if (!out_path.empty()) write_family(out_path, *res.decomposition);
            }
        };
    });

    auto* booster = app.add_subcommand("booster", "Cauchy-matrix booster");
    add_qr(booster);
    booster->add_option("--out", out_path, "Write the gadget to this file");
    booster->callback([&] {
        action = [&] {
            const Booster b = build_booster(q, r);
            const BoosterCheck c = verify_booster(b);
            result = booster_json(b, c);
            ok = c.ok();
            save_gadget(out_path, b.gadget, {{"on", b.on}, {"off", b.off}});
        };
    });

    auto* orth = app.add_subcommand("orth-booster", "Orthogonal booster");
    add_qr(orth);
    orth->add_option("--out", out_path, "Write the gadget to this file");
    orth->callback([&] {
        action = [&] {
            const Booster b = build_orthogonal_booster(q, r);
            const BoosterCheck c = verify_booster(b);
            result = booster_json(b, c);
            ok = c.ok() && c.orthogonal;
            save_gadget(out_path, b.gadget, {{"on", b.on}, {"off", b.off}});
        };
    });

    auto* hinge = app.add_subcommand("hinge", "Independent hinge");
    add_qr(hinge);
    hinge->add_option("--out", out_path, "Write the gadget to this file");
    hinge->callback([&] {
        action = [&] {
            const Hinge h = build_hinge(q, r);
            const HingeCheck c = verify_hinge(h);
            result["vertices"] = h.gadget.vertices.size();
            result["edges"] = h.gadget.graph.edge_count();
            result["left"] = h.left.size();
            result["right"] = h.right.size();
            result["left_decomposes"] = c.left_decomposes;
            result["right_decomposes"] = c.right_decomposes;
            result["edge_disjoint"] = c.edge_disjoint;
            result["independent"] = c.independent;
            result["partite"] = c.partite;
            ok = c.ok();
            save_gadget(out_path, h.gadget, {{"left", h.left}, {"right", h.right}});
        };
    });

    auto* fake = app.add_subcommand("fake-edge", "Fake-edge gadget on the root set 0..r-1");
    add_qr(fake);
    fake->add_option("--out", out_path, "Write the gadget to this file");
    fake->callback([&] {
        action = [&] {
            const VertexSet f = range_set(static_cast<std::size_t>(r));
            const RootedGadget g = build_fake_edge(f, q);
            result["vertices"] = g.vertices.size();
            result["non_roots"] = g.non_roots().size();
            result["edges"] = g.graph.edge_count();
            result["degeneracy"] = rooted_degeneracy(g);
            result["bound"] = binomial(q - 1, r - 1);
            ok = fake_edge_congruences_hold(g, f, q) && roots_independent(g);
            result["congruences"] = ok;
            save_gadget(out_path, g, {});
        };
    });

    bool l1 = false;
    auto* integral = app.add_subcommand("integral", "Edge-intersecting integral decomposition");
    add_graph(integral);
    add_q(integral);
    integral->add_flag("--l1", l1, "Reduce the L1 norm with kernel moves");
    integral->add_option("--out", out_path, "Write the valuation to this file");
    integral->callback([&] {
        action = [&] {
            const Hypergraph g = cli::parse_graph_spec(graph_spec);
            WilsonOptions opts;
            opts.minimize_l1 = l1;
            const auto l = IntegralHypergraph::unit(g);
            const auto res = edge_intersecting_integral_decompose(l, q, opts);
            result["ground"] = res.phi.ground;
            result["support"] = res.phi.weights.size();
            result["l1"] = res.phi.l1();
            result["residual_after_stage"] = res.residual_after_stage;
            const bool bd = boundary_matches(res.phi, l.psi);
            const bool ei = is_edge_intersecting(res.phi, g);
            result["boundary_matches"] = bd;
            result["edge_intersecting"] = ei;
            ok = bd && ei;
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                write_valuation(out, res.phi);
            }
        };
    });

    auto* absorber = app.add_subcommand("absorber", "Absorber for a divisible L");
    add_graph(absorber);
    add_q(absorber);
    absorber->add_option("--out", out_path, "Write the bundle into this directory");
    absorber->callback([&] {
        action = [&] {
            const Absorber a = build_absorber(cli::parse_graph_spec(graph_spec), q);
            const AbsorberReport rep = verify_absorber(a);
            result["vertices"] = rep.vertices;
            result["edges"] = rep.edges;
            result["layers"] = rep.layers;
            result["boosters"] = rep.boosters;
            result["hinges"] = rep.hinges;
            result["roots_independent"] = rep.roots_independent;
            result["a1_decomposes"] = rep.a1_decomposes;
            result["a2_decomposes"] = rep.a2_decomposes;
            result["edge_intersecting"] = rep.edge_intersecting;
            result["partite_degenerate"] = rep.partite_degenerate;
            ok = rep.ok();
            if (!out_path.empty()) write_absorber_bundle(out_path, a);
        };
    });

    std::size_t edge_cap = 10;
    auto* omni = app.add_subcommand("omni", "Exhaustive omni-absorber for X");
    add_graph(omni);
    add_q(omni);
    omni->add_option("--edge-cap", edge_cap, "Largest e(X)")->capture_default_str();
    omni->callback([&] {
        action = [&] {
            const OmniAbsorber a = build_omni_absorber_exhaustive(cli::parse_graph_spec(graph_spec), q, edge_cap);
            const OmniReport rep = verify_omni_absorber(a);
            result["divisible_subgraphs"] = rep.divisible_subgraphs;
            result["verified"] = rep.verified;
            result["refinement"] = rep.refinement;
            result["vertices"] = rep.vertices;
            result["edges"] = rep.edges;
            ok = rep.ok();
        };
    });

    std::string rule = "dantzig";
    auto* fractional = app.add_subcommand("fractional", "Fractional decomposition by exact simplex");
    add_graph(fractional);
    add_q(fractional);
    fractional->add_option("--rule", rule, "Pivot rule")->check(CLI::IsMember({"bland", "dantzig"}))->capture_default_str();
    fractional->add_option("--out", out_path, "Write the weighting to this file");
    fractional->callback([&] {
        action = [&] {
            const Hypergraph g = cli::parse_graph_spec(graph_spec);
            const auto res = fractional_decompose(g, q, {}, rule == "bland" ? PivotRule::Bland : PivotRule::Dantzig);
            result["cliques"] = res.cliques;
            result["pivots"] = res.pivots;
            result["feasible"] = res.feasible;
            if (res.feasible) {
                ok = verify_fractional(g, res.psi);
                result["support"] = res.psi.weights.size();
                result["max_weight"] = rational(res.psi.max_weight());
                result["verified"] = ok;
                if (!out_path.empty()) {
                    std::ofstream out(out_path);
                    write_weighting(out, res.psi);
                }
            } else {
                std::vector<std::string> y;
                for (const auto& v : res.farkas) y.push_back(rational(v));
                result["farkas"] = y;
                ok = false;
            }
        };
    });

    std::size_t trials = 50;
    auto* fixed = app.add_subcommand("fixed-fractional", "Averaged fractional decompositions for random targets");
    add_graph(fixed);
    add_q(fixed);
    fixed->add_option("--trials", trials, "Random target vectors")->capture_default_str();
    fixed->callback([&] {
        action = [&] {
            const Hypergraph g = cli::parse_graph_spec(graph_spec);
            const auto inputs = fixed_fractional_inputs(g, q);
            result["inputs_exist"] = inputs.has_value();
            if (!inputs) {
                ok = false;
                return;
            }
            Rng rng(glob.seed);
            const auto m = static_cast<unsigned long>(g.edge_count());
            std::size_t exact = 0;
            for (std::size_t t = 0; t < trials; ++t) {
                RationalEdgeMap phi;
                for (const auto& e : g.edges()) {
                    mpq_class v(mpz_class(static_cast<unsigned long>(1000 * (m - 1) + rng.below(1001))), mpz_class(1000 * m));
                    v.canonicalize();
                    phi[e] = v;
                }
                const auto psi = fixed_fractional(g, q, phi, inputs->phi0, inputs->phi_e);
                if (verify_fractional(g, psi, phi)) ++exact;
            }
            result["trials"] = trials;
            result["exact"] = exact;
            ok = exact == trials;
        };
    });

    std::size_t s = 7, samples = 0;
    auto* boost = app.add_subcommand("boost", "Low-weight fractional decomposition and regularity boosting");
    add_graph(boost);
    add_q(boost);
    boost->add_option("-s", s, "Subset order")->capture_default_str();
    boost->add_option("--samples", samples, "Sampled subsets (0 enumerates)")->capture_default_str();
    boost->callback([&] {
        action = [&] {
            const Hypergraph g = cli::parse_graph_spec(graph_spec);
            const auto lw = low_weight_fractional(g, q, s, samples == 0 ? SubsetMode::Enumerate : SubsetMode::Sample, samples,
                                                  glob.seed);
            const bool verified = verify_fractional(g, lw.psi);
            result["subsets_used"] = lw.report.subsets_used;
            result["via_fixed"] = lw.report.via_fixed;
            result["via_lp"] = lw.report.via_lp;
            result["distinct_shapes"] = lw.report.distinct_shapes;
            result["C"] = rational(lw.report.c);
            result["fractional_verified"] = verified;
            const auto b = boost_regularity(g, lw.psi, lw.report.c, Rng::derive(glob.seed, 1));
            result["d"] = rational(b.report.d);
            result["family"] = b.family.size();
            result["per_edge_min"] = b.report.min_edge;
            result["per_edge_max"] = b.report.max_edge;
            result["per_edge_mean"] = b.report.mean_edge;
            ok = verified;
        };
    });

    double p = 0.5;
    auto* reserves = app.add_subcommand("reserves", "Sample a reserve graph");
    add_graph(reserves);
    add_q(reserves);
    reserves->add_option("-p", p, "Edge probability")->capture_default_str();
    reserves->add_option("--out", out_path, "Write X to this file");
    reserves->callback([&] {
        action = [&] {
            const Hypergraph g = cli::parse_graph_spec(graph_spec);
            const auto res = sample_reserves(g, q, p, glob.seed);
            result["edges"] = res.x.edge_count();
            result["max_codegree"] = res.report.max_codegree;
            result["bound"] = res.report.bound;
            result["attempts"] = res.report.attempts;
            result["min_extension"] = res.report.min_extension;
            Json counts = Json::array();
            for (const auto& [e, k] : res.report.extension_counts) counts.push_back({{"edge", e}, {"count", k}});
            if (glob.format == "json") result["extension_counts"] = counts;
            if (!out_path.empty()) save_hypergraph(out_path, res.x);
        };
    });

    double bite = 0.5;
    auto* nibble = app.add_subcommand("nibble", "Reserves, LP-derived clique family and nibble with cover-down");
    add_graph(nibble);
    add_q(nibble);
    nibble->add_option("-p", p, "Reserve edge probability")->capture_default_str();
    nibble->add_option("--bite", bite, "Bite size")->capture_default_str();
    nibble->callback([&] {
        action = [&] {
            const Hypergraph g = cli::parse_graph_spec(graph_spec);
            const auto res = sample_reserves(g, q, p, glob.seed);
            Hypergraph j = g;
            for (const auto& e : res.x.edges()) j.remove_edge(e);
            const auto pack = fractional_packing(j, q);
            const mpq_class c = pack.psi.max_weight() *
                                mpq_class(static_cast<unsigned long>(binomial(g.vertex_count() - g.rank(), q - g.rank())));
            CliqueFamily h{q, {}};
            if (c > 0) h = boost_regularity(j, pack.psi, c, Rng::derive(glob.seed, 1)).family;
            const auto nib = nibble_with_reserves(j, res.x, h, bite, Rng::derive(glob.seed, 2));
            result["e(X)"] = res.x.edge_count();
            result["e(J)"] = j.edge_count();
            result["lp_uncovered"] = rational(pack.uncovered);
            result["family"] = h.size();
            result["rounds"] = nib.rounds;
            result["nibble_cliques"] = nib.nibble_cliques;
            result["cover_cliques"] = nib.cover_cliques;
            result["leave"] = nib.leave.size();
            ok = verify_nibble(j, res.x, nib);
            result["packing_verified"] = ok;
        };
    });

    PipelineConfig config;
    auto* pipeline = app.add_subcommand("pipeline", "Reserves, omni-absorber, boost, nibble, absorb");
    add_graph(pipeline);
    add_q(pipeline);
    pipeline->add_option("-p", config.p, "Reserve edge probability")->capture_default_str();
    pipeline->add_option("-s", config.s, "Subset order for low-weight averaging")->capture_default_str();
    pipeline->add_option("--samples", config.samples, "Sampled subsets")->capture_default_str();
    pipeline->add_option("--bite", config.bite, "Bite size")->capture_default_str();
    pipeline->add_option("--omni-cap", config.omni_cap, "Largest e(X)")->capture_default_str();
    pipeline->add_option("-T", config.slot_capacity, "Slot capacity")->capture_default_str();
    pipeline->add_option("--out", out_path, "Write the decomposition to this file");
    pipeline->callback([&] {
        action = [&] {
            config.repair_budget = glob.cap;
            const auto res = decompose(cli::parse_graph_spec(graph_spec), q, config, glob.seed);
            ok = res.success();
            if (!out_path.empty() && ok) write_family(out_path, res.decomposition);
            std::cout << (glob.format == "json" ? report_json(res.trace) + "\n" : report_text(res.trace));
        };
    });

    auto* copies = app.add_subcommand("count-copies", "Count copies of a pattern");
    add_graph(copies);
    copies->add_option("pattern", pattern_spec, "Pattern spec or file")->required();
    copies->callback([&] {
        action = [&] {
            result["copies"] = count_copies(cli::parse_graph_spec(graph_spec), cli::parse_graph_spec(pattern_spec), glob.cap);
        };
    });

    bool derandomize = false;
    auto* spencer = app.add_subcommand("spencer", "Alteration for an independent set");
    add_graph(spencer);
    add_q(spencer);
    spencer->add_flag("--derandomize", derandomize, "Use conditional expectations");
    spencer->callback([&] {
        action = [&] {
            const auto res = spencer_alteration(cli::parse_graph_spec(graph_spec), q,
                                                derandomize ? SpencerMode::Derandomized : SpencerMode::Random, glob.seed);
            result["p"] = rational(res.p);
            result["expectation_bound"] = rational(res.expectation_bound);
            result["density_caps_hold"] = res.density_caps_hold;
            result["sampled"] = res.a.size();
            result["independent_set"] = res.a_star;
            result["size"] = res.a_star.size();
            if (derandomize && res.density_caps_hold) ok = res.a_star.size() >= static_cast<std::size_t>(q);
        };
    });

    std::vector<double> alpha;
    double eps = 0;
    std::size_t host_n = 10;
    auto* probe = app.add_subcommand("turan-probe", "Empirical copy counts in random hosts");
    probe->add_option("pattern", pattern_spec, "Pattern spec or file")->required();
    probe->add_option("--alpha", alpha, "Per-uniformity densities")->delimiter(',')->required();
    probe->add_option("--eps", eps, "Density offset")->capture_default_str();
    probe->add_option("-n", host_n, "Host order")->capture_default_str();
    probe->add_option("--trials", trials, "Random hosts")->capture_default_str();
    probe->callback([&] {
        action = [&] {
            const auto rep = turan_space_probe(cli::parse_graph_spec(pattern_spec), alpha, host_n, trials, glob.seed, eps,
                                               glob.cap);
            result["n"] = rep.n;
            result["trials"] = rep.trials;
            result["hits"] = rep.hits;
            result["min_copies"] = rep.min_copies;
            result["mean_copies"] = rep.mean_copies;
            result["gamma_observed"] = rep.gamma_observed;
            std::vector<std::uint64_t> counts;
            for (const auto& t : rep.per_trial) counts.push_back(t.copies);
            result["copies"] = counts;
        };
    });

    std::size_t k = 4;
    double beta = 0.5;
    bool sampled = false;
    auto* tail = app.add_subcommand("tail", "Fraction of sparse k-subsets");
    add_graph(tail);
    tail->add_option("-k", k, "Subset order")->capture_default_str();
    tail->add_option("--beta", beta, "Density threshold")->capture_default_str();
    tail->add_option("--trials", trials, "Samples when not exhaustive")->capture_default_str();
    tail->add_flag("--sampled", sampled, "Sample even when enumeration is affordable");
    tail->callback([&] {
        action = [&] {
            const auto res = subset_density_tail(cli::parse_graph_spec(graph_spec), k, beta, trials, glob.seed, glob.cap, sampled);
            result["fraction"] = res.fraction;
            result["below"] = res.below;
            result["checked"] = res.checked;
            result["exhaustive"] = res.exhaustive;
            if (res.small_n_warning) result["warning"] = "2k^2 > n";
        };
    });

    CLI11_PARSE(app, argc, argv);
    try {
        action();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    if (!result.is_null()) emit(result, glob);
    return ok ? 0 : 1;
}
