#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace hd {

enum class PivotRule { Bland, Dantzig };

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    std::vector<mpq_class> x;
    /// On infeasibility: y with y^T A <= 0 and y^T b > 0.
    std::vector<mpq_class> farkas;
    mpq_class objective = 0;
    std::uint64_t pivots = 0;
};

/// Minimizes c^T x subject to A x = b, x >= 0 in exact rationals with a
/// two-phase tableau simplex. An empty c asks for feasibility only. Dantzig
/// falls back to Bland after a stall so termination is kept.
LpResult simplex_solve(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b,
                       const std::vector<mpq_class>& c = {}, PivotRule rule = PivotRule::Bland);

/// y^T A <= 0 componentwise and y^T b > 0.
bool verify_farkas(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b,
                   const std::vector<mpq_class>& y);

const char* to_string(LpResult::Status s);

}  // namespace hd
