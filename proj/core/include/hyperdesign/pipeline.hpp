#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperdesign/decomposition.hpp"
#include "hyperdesign/fractional.hpp"

namespace hd {

struct PipelineConfig {
    double p = 0.04;                  // reserve edge probability
    std::size_t omni_cap = 10;        // largest e(X) handed to the omni-absorber
    std::size_t reserve_draws = 200;  // reserve redraws allowed to meet omni_cap
    std::size_t s = 7;                // subset order for low-weight averaging
    SubsetMode mode = SubsetMode::Sample;
    std::size_t samples = 600;
    double bite = 0.5;
    std::size_t rounds = 200;
    std::size_t slot_capacity = 1;    // T, recorded for the embedding stage
    std::uint64_t repair_budget = 5'000'000;
};

using TraceValues = std::vector<std::pair<std::string, std::string>>;

struct StageRecord {
    int index = 0;
    std::string name;
    bool ok = false;
    TraceValues values;
};

struct PipelineTrace {
    TraceValues config;
    std::vector<StageRecord> stages;
    std::optional<int> failed_stage;
    std::string failure;
    bool verified = false;

    bool empty() const { return config.empty() && stages.empty(); }
};

struct PipelineResult {
    CliqueFamily decomposition;  // Q1 + Q2
    Hypergraph host;             // G + A
    PipelineTrace trace;

    bool success() const { return trace.verified; }
};

/// Reserves, omni-absorber on adjoined vertices, low-weight fractional
/// decomposition and boosting on J = G - X, nibble with cover-down and an
/// exact-cover repair of the leave, then absorption of L = X - Q1.
/// Throws NotDivisible if G is not K_q^r-divisible; any later failure is
/// reported in the trace.
PipelineResult decompose(const Hypergraph& g, int q, const PipelineConfig& config, std::uint64_t seed);

/// Line-oriented summary; the last line of a successful run is
/// "decomposition verified: true". Empty for an empty trace.
std::string report_text(const PipelineTrace& trace);
/// The same content as a JSON document.
std::string report_json(const PipelineTrace& trace);

struct RepairReport {
    std::size_t levels = 0;
    std::size_t released = 0;
    std::size_t added = 0;
    std::uint64_t nodes = 0;
};

/// Replaces packing cliques near the uncovered edges of G by an exact cover
/// of G-edges (primary) using unused X-edges (secondary), widening the
/// released region until the leave is empty or every clique is released.
RepairReport repair_leave(const Hypergraph& g, const Hypergraph& x, CliqueFamily& packing, std::vector<VertexSet>& leave,
                          std::uint64_t budget);

}  // namespace hd
