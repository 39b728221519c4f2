#include "hyperdesign/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hyperdesign/absorber.hpp"
#include "hyperdesign/combinatorics.hpp"
#include "hyperdesign/nibble.hpp"
#include "hyperdesign/random.hpp"

namespace hd {

namespace {

template <typename T>
std::string str(const T& v)
{
    std::ostringstream out;
    out << v;
    return out.str();
}

std::string str(bool v) { return v ? "true" : "false"; }

std::string str(double v)
{
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

class Recorder {
public:
    explicit Recorder(PipelineTrace& t) : trace_(t) {}

    StageRecord& begin(int index, std::string name)
    {
        trace_.stages.push_back({index, std::move(name), false, {}});
        return trace_.stages.back();
    }
    void fail(StageRecord& stage, std::string why)
    {
        stage.ok = false;
        trace_.failed_stage = stage.index;
        trace_.failure = std::move(why);
    }

private:
    PipelineTrace& trace_;
};

template <typename T>
void put(StageRecord& s, std::string key, const T& v)
{
    s.values.emplace_back(std::move(key), str(v));
}

}  // namespace

RepairReport repair_leave(const Hypergraph& g, const Hypergraph& x, CliqueFamily& packing, std::vector<VertexSet>& leave,
                          std::uint64_t budget)
{
    RepairReport rep;
    if (leave.empty()) return rep;
    const auto rs = static_cast<std::size_t>(g.rank());
    std::set<Vertex> hot;
    for (const auto& e : leave) hot.insert(e.begin(), e.end());
    std::vector<bool> released(packing.size(), false);
    std::uint64_t remaining = budget;
    while (true) {
        ++rep.levels;
        std::set<Vertex> grown = hot;
        for (std::size_t i = 0; i < packing.size(); ++i) {
            if (released[i]) continue;
            const auto& c = packing.cliques[i];
            const auto touching = std::count_if(c.begin(), c.end(), [&](Vertex v) { return hot.count(v) > 0; });
            if (touching >= g.rank()) {
                released[i] = true;
                grown.insert(c.begin(), c.end());
            }
        }
        const bool everything = std::all_of(released.begin(), released.end(), [](bool b) { return b; });
        const bool stalled = grown == hot;
        // Primary columns: leave plus the G-edges of released cliques.
        // Secondary columns: X-edges not used by kept cliques.
        std::set<VertexSet> primary(leave.begin(), leave.end());
        std::set<VertexSet> used_x;
        for (std::size_t i = 0; i < packing.size(); ++i) {
            for_each_subset(packing.cliques[i], rs, [&](const VertexSet& e) {
                if (released[i] && g.has_edge(e)) primary.insert(e);
                if (!released[i] && x.has_edge(e)) used_x.insert(e);
                return true;
            });
        }
        std::map<VertexSet, std::size_t> column;
        for (const auto& e : primary) column.emplace(e, column.size());
        const std::size_t n_primary = column.size();
        Hypergraph free(std::max(g.vertex_count(), x.vertex_count()), g.rank());
        for (const auto& e : primary) free.add_edge(e);
        for (const auto& e : x.edges()) {
            if (!used_x.count(e)) {
                free.add_edge(e);
                column.emplace(e, column.size());
            }
        }
        ExactCover dlx(n_primary, column.size() - n_primary);
        std::vector<VertexSet> rows;
        for (const auto& c : enumerate_cliques(free, packing.q)) {
            std::vector<std::size_t> cols;
            bool touches_primary = false;
            for_each_subset(c, rs, [&](const VertexSet& e) {
                const std::size_t k = column.at(e);
                cols.push_back(k);
                touches_primary |= k < n_primary;
                return true;
            });
            if (!touches_primary) continue;
            dlx.add_row(cols);
            rows.push_back(c);
        }
        const auto status = dlx.solve(remaining);
        rep.nodes += dlx.nodes();
        remaining = remaining > dlx.nodes() ? remaining - dlx.nodes() : 0;
        if (status == ExactCover::Status::Found) {
            CliqueFamily next{packing.q, {}};
            for (std::size_t i = 0; i < packing.size(); ++i) {
                if (released[i]) ++rep.released;
                else next.cliques.push_back(packing.cliques[i]);
            }
            for (std::size_t row : dlx.solution()) next.cliques.push_back(rows[row]);
            rep.added = dlx.solution().size();
            packing = std::move(next);
            leave.clear();
            return rep;
        }
        if (everything || remaining == 0) return rep;
        if (stalled) {
            // Nothing new was released; widen to every vertex.
            for (Vertex v = 0; v < g.vertex_count(); ++v) grown.insert(v);
        }
        hot = std::move(grown);
    }
}

PipelineResult decompose(const Hypergraph& g, int q, const PipelineConfig& config, std::uint64_t seed)
{
    if (!g.uniform()) throw InvalidArgument("pipeline needs a uniform host");
    if (!is_divisible(g, q)) throw NotDivisible("host is not divisible");
    PipelineResult res;
    auto& trace = res.trace;
    Recorder rec(trace);
    const std::size_t n = g.vertex_count();
    const int r = g.rank();
    trace.config = {{"n", str(n)},
                    {"r", str(r)},
                    {"q", str(q)},
                    {"e(G)", str(g.edge_count())},
                    {"seed", str(seed)},
                    {"p", str(config.p)},
                    {"omni_cap", str(config.omni_cap)},
                    {"s", str(config.s)},
                    {"mode", config.mode == SubsetMode::Sample ? "sample" : "enumerate"},
                    {"samples", str(config.samples)},
                    {"bite", str(config.bite)},
                    {"rounds", str(config.rounds)},
                    {"T", str(config.slot_capacity)},
                    {"repair_budget", str(config.repair_budget)}};

    // 1. Reserves small enough for the exhaustive omni-absorber.
    auto& s1 = rec.begin(1, "reserves");
    std::optional<ReserveResult> reserves;
    std::size_t draws = 0;
    for (; draws < config.reserve_draws && !reserves; ++draws) {
        ReserveResult cand = sample_reserves(g, q, config.p, Rng::derive(Rng::derive(seed, 1), draws));
        if (cand.x.edge_count() <= config.omni_cap) reserves = std::move(cand);
    }
    put(s1, "draws", draws);
    if (!reserves) {
        rec.fail(s1, "no reserve graph with e(X) <= omni_cap");
        return res;
    }
    const Hypergraph& x = reserves->x;
    put(s1, "e(X)", x.edge_count());
    put(s1, "Delta(X)", reserves->report.max_codegree);
    put(s1, "bound 2pn", reserves->report.bound);
    put(s1, "min extension", reserves->report.min_extension);
    s1.ok = true;

    // 2. Omni-absorber for X on adjoined vertices.
    auto& s2 = rec.begin(2, "omni-absorber");
    const OmniAbsorber omni = build_omni_absorber_exhaustive(x, q, config.omni_cap);
    const OmniReport omni_rep = verify_omni_absorber(omni);
    put(s2, "divisible subgraphs", omni_rep.divisible_subgraphs);
    put(s2, "v(A)", omni.graph.vertex_count());
    put(s2, "e(A)", omni.graph.edge_count());
    put(s2, "refinement", omni_rep.refinement);
    put(s2, "verified", omni_rep.ok());
    if (!omni_rep.ok()) {
        rec.fail(s2, "omni-absorber failed verification");
        return res;
    }
    s2.ok = true;

    // 3. Fractional decomposition of J and boosting.
    auto& s3 = rec.begin(3, "fractional");
    Hypergraph j = g;
    for (const auto& e : x.edges()) j.remove_edge(e);
    put(s3, "e(J)", j.edge_count());
    FractionalWeighting psi;
    mpq_class c;
    try {
        const std::size_t s = std::min(config.s, n);
        const auto low = low_weight_fractional(j, q, s, config.mode, config.samples, Rng::derive(seed, 3));
        psi = low.psi;
        c = low.report.c;
        put(s3, "method", "low-weight");
        put(s3, "subsets used", low.report.subsets_used);
        put(s3, "via fixed", low.report.via_fixed);
        put(s3, "via lp", low.report.via_lp);
    } catch (const Error& err) {
        const auto lp = fractional_decompose(j, q);
        put(s3, "method", "direct lp");
        put(s3, "low-weight error", err.what());
        if (!lp.feasible) {
            rec.fail(s3, "J has no fractional decomposition");
            return res;
        }
        psi = lp.psi;
        c = psi.max_weight() * mpq_class(static_cast<unsigned long>(binomial(n - r, q - r)));
    }
    const bool psi_ok = verify_fractional(j, psi);
    put(s3, "C", c.get_str());
    put(s3, "fractional verified", psi_ok);
    if (!psi_ok) {
        rec.fail(s3, "fractional weighting failed verification");
        return res;
    }
    const auto boosted = boost_regularity(j, psi, c, Rng::derive(seed, 4));
    put(s3, "d", boosted.report.d.get_str());
    put(s3, "|H|", boosted.family.size());
    put(s3, "H per edge min", boosted.report.min_edge);
    put(s3, "H per edge max", boosted.report.max_edge);
    s3.ok = true;

    // 4. Nibble with reserves, then exact-cover repair of any leave.
    auto& s4 = rec.begin(4, "nibble");
    NibbleResult nib = nibble_with_reserves(j, x, boosted.family, config.bite, Rng::derive(seed, 5), config.rounds);
    put(s4, "rounds", nib.rounds);
    put(s4, "nibble cliques", nib.nibble_cliques);
    put(s4, "cover-down cliques", nib.cover_cliques);
    put(s4, "leave", nib.leave.size());
    if (!verify_nibble(j, x, nib)) {
        rec.fail(s4, "nibble packing failed verification");
        return res;
    }
    const RepairReport repair = repair_leave(j, x, nib.packing, nib.leave, config.repair_budget);
    put(s4, "repair levels", repair.levels);
    put(s4, "repair released", repair.released);
    put(s4, "repair added", repair.added);
    put(s4, "repair nodes", repair.nodes);
    put(s4, "leave after repair", nib.leave.size());
    const bool packing_ok = verify_nibble(j, x, nib);
    put(s4, "packing verified", packing_ok);
    if (!packing_ok || !nib.leave.empty()) {
        rec.fail(s4, "leave of size " + str(nib.leave.size()) + " remains");
        return res;
    }
    s4.ok = true;
    const CliqueFamily& q1 = nib.packing;

    // 5. L = X - Q1 must be divisible.
    auto& s5 = rec.begin(5, "divisibility");
    Hypergraph l = x;
    for (const auto& k : q1.cliques) {
        for_each_subset(k, static_cast<std::size_t>(r), [&](const VertexSet& e) {
            l.remove_edge(e);
            return true;
        });
    }
    const bool l_div = is_divisible(l, q);
    put(s5, "e(L)", l.edge_count());
    put(s5, "divisible", l_div);
    if (!l_div) {
        rec.fail(s5, "L is not divisible");
        return res;
    }
    s5.ok = true;

    // 6. Absorb L.
    auto& s6 = rec.begin(6, "absorb");
    const CliqueFamily q2 = omni.decomposition_for(l);
    Hypergraph al = omni.graph;
    al.merge(l);
    const bool q2_ok = verify_decomposition(al, q2);
    put(s6, "|Q1|", q1.size());
    put(s6, "|Q2|", q2.size());
    put(s6, "Q2 verified", q2_ok);
    if (!q2_ok) {
        rec.fail(s6, "absorber decomposition failed verification");
        return res;
    }
    s6.ok = true;

    res.decomposition = q1;
    res.decomposition.append(q2);
    res.host = omni.graph;
    res.host.merge(g);
    trace.verified = verify_decomposition(res.host, res.decomposition);
    if (!trace.verified) {
        trace.failed_stage = 7;
        trace.failure = "final decomposition failed verification";
    }
    return res;
}

std::string report_text(const PipelineTrace& trace)
{
    if (trace.empty()) return {};
    std::ostringstream out;
    out << "config:";
    for (const auto& [k, v] : trace.config) out << ' ' << k << '=' << v;
    out << '\n';
    for (const auto& s : trace.stages) {
        out << "stage " << s.index << ' ' << s.name << ": " << (s.ok ? "ok" : "FAILED");
        for (const auto& [k, v] : s.values) out << "; " << k << '=' << v;
        out << '\n';
    }
    if (trace.failed_stage) out << "failed at stage " << *trace.failed_stage << ": " << trace.failure << '\n';
    out << "decomposition verified: " << (trace.verified ? "true" : "false") << '\n';
    return out.str();
}

std::string report_json(const PipelineTrace& trace)
{
    if (trace.empty()) return "{}";
    nlohmann::ordered_json doc;
    doc["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : trace.config) doc["config"][k] = v;
    doc["stages"] = nlohmann::ordered_json::array();
    for (const auto& s : trace.stages) {
        nlohmann::ordered_json st;
        st["index"] = s.index;
        st["name"] = s.name;
        st["ok"] = s.ok;
        st["values"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : s.values) st["values"][k] = v;
        doc["stages"].push_back(st);
    }
    if (trace.failed_stage) {
        doc["failed_stage"] = *trace.failed_stage;
        doc["failure"] = trace.failure;
    }
    doc["verified"] = trace.verified;
    return doc.dump(2);
}

}  // namespace hd
