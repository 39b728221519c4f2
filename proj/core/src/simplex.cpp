#include "hyperdesign/simplex.hpp"

#include "hyperdesign/types.hpp"

namespace hd {

namespace {

class Tableau {
public:
    Tableau(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b, PivotRule rule)
        : m_(a.size()), n_(m_ ? a[0].size() : 0), rule_(rule)
    {
        // Columns: n originals, m artificials, then the right-hand side.
        width_ = n_ + m_ + 1;
        t_.assign(m_, std::vector<mpq_class>(width_, 0));
        sign_.assign(m_, 1);
        for (std::size_t i = 0; i < m_; ++i) {
            if (a[i].size() != n_) throw InvalidArgument("ragged constraint matrix");
            sign_[i] = b[i] < 0 ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = sign_[i] * a[i][j];
            t_[i][n_ + i] = 1;
            t_[i][width_ - 1] = sign_[i] * b[i];
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
        blocked_.assign(n_ + m_, 0);
    }

    // Minimizes cost over the current basis; returns false when unbounded.
    // The reduced-cost row is carried through the pivots.
    bool optimize(const std::vector<mpq_class>& cost)
    {
        rc_ = reduced_costs(cost);
        rc_.push_back(-objective(cost));
        std::uint64_t stall = 0;
        while (true) {
            const bool bland = rule_ == PivotRule::Bland || stall > 50;
            std::size_t enter = SIZE_MAX;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (blocked_[j] || rc_[j] >= 0) continue;
                if (enter == SIZE_MAX || (!bland && rc_[j] < rc_[enter])) enter = j;
                if (bland) break;
            }
            if (enter == SIZE_MAX) break;
            std::size_t leave = SIZE_MAX;
            mpq_class best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] <= 0) continue;
                mpq_class ratio = t_[i][width_ - 1] / t_[i][enter];
                if (leave == SIZE_MAX || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == SIZE_MAX) {
                rc_.clear();
                return false;
            }
            stall = best > 0 ? 0 : stall + 1;
            pivot(leave, enter);
        }
        rc_.clear();
        return true;
    }

    void pivot(std::size_t row, std::size_t col)
    {
        ++pivots_;
        const mpq_class p = t_[row][col];
        for (auto& v : t_[row]) {
            if (v != 0) v /= p;
        }
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < width_; ++j) {
            if (t_[row][j] != 0) nz.push_back(j);
        }
        auto eliminate = [&](std::vector<mpq_class>& target) {
            if (target[col] == 0) return;
            const mpq_class f = target[col];
            for (std::size_t j : nz) target[j] -= f * t_[row][j];
        };
        for (std::size_t i = 0; i < m_; ++i) {
            if (i != row) eliminate(t_[i]);
        }
        if (!rc_.empty()) eliminate(rc_);
        basis_[row] = col;
    }

    std::vector<mpq_class> reduced_costs(const std::vector<mpq_class>& cost) const
    {
        std::vector<mpq_class> rc(cost.begin(), cost.end());
        for (std::size_t i = 0; i < m_; ++i) {
            const mpq_class& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (t_[i][j] != 0) rc[j] -= cb * t_[i][j];
            }
        }
        return rc;
    }

    mpq_class objective(const std::vector<mpq_class>& cost) const
    {
        mpq_class z = 0;
        for (std::size_t i = 0; i < m_; ++i) z += cost[basis_[i]] * t_[i][width_ - 1];
        return z;
    }

    // Pivots zero-level artificials out of the basis where possible.
    void drive_out_artificials()
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (t_[i][j] != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
        for (std::size_t j = n_; j < n_ + m_; ++j) blocked_[j] = 1;
    }

    std::vector<mpq_class> solution() const
    {
        std::vector<mpq_class> x(n_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) x[basis_[i]] = t_[i][width_ - 1];
        }
        return x;
    }

    // Phase-I duals in the original row signs.
    std::vector<mpq_class> phase_one_duals(const std::vector<mpq_class>& cost) const
    {
        const auto rc = reduced_costs(cost);
        std::vector<mpq_class> y(m_);
        for (std::size_t i = 0; i < m_; ++i) y[i] = (1 - rc[n_ + i]) * sign_[i];
        return y;
    }

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    std::uint64_t pivots() const { return pivots_; }

private:
    std::size_t m_, n_, width_ = 0;
    PivotRule rule_;
    std::vector<std::vector<mpq_class>> t_;
    std::vector<int> sign_;
    std::vector<std::size_t> basis_;
    std::vector<char> blocked_;
    std::vector<mpq_class> rc_;  // reduced costs and -objective while optimizing
    std::uint64_t pivots_ = 0;
};

}  // namespace

LpResult simplex_solve(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b,
                       const std::vector<mpq_class>& c, PivotRule rule)
{
    if (a.size() != b.size()) throw InvalidArgument("row count of A and b differ");
    LpResult res;
    Tableau tab(a, b, rule);
    const std::size_t n = tab.n(), m = tab.m();
    if (!c.empty() && c.size() != n) throw InvalidArgument("cost vector length differs from the column count");

    std::vector<mpq_class> phase1(n + m, 0);
    for (std::size_t j = n; j < n + m; ++j) phase1[j] = 1;
    tab.optimize(phase1);
    if (tab.objective(phase1) > 0) {
        res.status = LpResult::Status::Infeasible;
        res.farkas = tab.phase_one_duals(phase1);
        res.pivots = tab.pivots();
        return res;
    }
    tab.drive_out_artificials();
    if (!c.empty()) {
        std::vector<mpq_class> cost(n + m, 0);
        for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
        if (!tab.optimize(cost)) {
            res.status = LpResult::Status::Unbounded;
            res.pivots = tab.pivots();
            return res;
        }
        res.objective = tab.objective(cost);
    }
    res.status = LpResult::Status::Optimal;
    res.x = tab.solution();
    res.pivots = tab.pivots();
    return res;
}

bool verify_farkas(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b,
                   const std::vector<mpq_class>& y)
{
    if (y.size() != a.size()) return false;
    const std::size_t n = a.empty() ? 0 : a[0].size();
    for (std::size_t j = 0; j < n; ++j) {
        mpq_class s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += y[i] * a[i][j];
        if (s > 0) return false;
    }
    mpq_class s = 0;
    for (std::size_t i = 0; i < b.size(); ++i) s += y[i] * b[i];
    return s > 0;
}

const char* to_string(LpResult::Status s)
{
    switch (s) {
    case LpResult::Status::Optimal: return "optimal";
    case LpResult::Status::Infeasible: return "infeasible";
    case LpResult::Status::Unbounded: return "unbounded";
    }
    return "unknown";
}

}  // namespace hd
