#include "stabhull/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace stabhull {

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
    // rows x cols matrix, column-major friendly enough at these sizes
    std::vector<std::vector<double>> a;
    std::vector<double> rhs;
    std::vector<int> basis;
    size_t rows = 0, cols = 0;

    void pivot(size_t pr, size_t pc) {
        double piv = a[pr][pc];
        for (size_t j = 0; j < cols; ++j) a[pr][j] /= piv;
        rhs[pr] /= piv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == pr) continue;
            double f = a[i][pc];
            if (f == 0.0) continue;
            for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[pr][j];
            rhs[i] -= f * rhs[pr];
        }
        basis[pr] = static_cast<int>(pc);
    }
};

// Minimize cost . z over the tableau with Bland's rule; `allowed` masks columns
// permitted to enter the basis. Returns false if unbounded.
bool run_simplex(Tableau& t, std::vector<double>& cost, const std::vector<bool>& allowed) {
    size_t iter_cap = 50000;
    std::vector<double> reduced(t.cols);
    for (size_t iter = 0; iter < iter_cap; ++iter) {
        // reduced costs: c_j - c_B . B^{-1} A_j  (tableau already in canonical form:
        // recompute via basic costs)
        for (size_t j = 0; j < t.cols; ++j) {
            double r = cost[j];
            for (size_t i = 0; i < t.rows; ++i) {
                double cb = cost[static_cast<size_t>(t.basis[i])];
                if (cb != 0.0) r -= cb * t.a[i][j];
            }
            reduced[j] = r;
        }
        int enter = -1;
        for (size_t j = 0; j < t.cols; ++j) {
            if (!allowed[j]) continue;
            if (reduced[j] < -kEps) {
                enter = static_cast<int>(j);
                break;  // Bland: smallest index
            }
        }
        if (enter < 0) return true;  // optimal
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < t.rows; ++i) {
            double aij = t.a[i][static_cast<size_t>(enter)];
            if (aij > kEps) {
                double ratio = t.rhs[i] / aij;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 &&
                     (leave < 0 || t.basis[i] < t.basis[static_cast<size_t>(leave)]))) {
                    best_ratio = ratio;
                    leave = static_cast<int>(i);
                }
            }
        }
        if (leave < 0) return false;  // unbounded
        t.pivot(static_cast<size_t>(leave), static_cast<size_t>(enter));
    }
    throw std::runtime_error("simplex: iteration cap exceeded");
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const size_t n = static_cast<size_t>(lp.num_vars);
    const size_t m_le = lp.a_le.size();
    const size_t m_eq = lp.a_eq.size();
    const size_t m = m_le + m_eq;

    // Columns: split vars (2n), slacks (m_le), artificials (m).
    const size_t n_split = 2 * n;
    const size_t n_slack = m_le;
    const size_t cols = n_split + n_slack + m;

    Tableau t;
    t.rows = m;
    t.cols = cols;
    t.a.assign(m, std::vector<double>(cols, 0.0));
    t.rhs.assign(m, 0.0);
    t.basis.assign(m, -1);

    auto fill_row = [&](size_t r, const std::vector<double>& a, double b, int slack_idx) {
        for (size_t j = 0; j < n; ++j) {
            t.a[r][2 * j] = a[j];
            t.a[r][2 * j + 1] = -a[j];
        }
        if (slack_idx >= 0) t.a[r][n_split + static_cast<size_t>(slack_idx)] = 1.0;
        t.rhs[r] = b;
        if (t.rhs[r] < 0.0) {
            for (size_t j = 0; j < cols; ++j) t.a[r][j] = -t.a[r][j];
            t.rhs[r] = -t.rhs[r];
        }
    };
    for (size_t r = 0; r < m_le; ++r) fill_row(r, lp.a_le[r], lp.b_le[r], static_cast<int>(r));
    for (size_t r = 0; r < m_eq; ++r) fill_row(m_le + r, lp.a_eq[r], lp.b_eq[r], -1);

    for (size_t r = 0; r < m; ++r) {
        size_t art = n_split + n_slack + r;
        t.a[r][art] = 1.0;
        t.basis[r] = static_cast<int>(art);
    }

    // Phase 1: minimize sum of artificials.
    std::vector<double> cost1(cols, 0.0);
    for (size_t r = 0; r < m; ++r) cost1[n_split + n_slack + r] = 1.0;
    std::vector<bool> allow_all(cols, true);
    if (!run_simplex(t, cost1, allow_all)) return {LpStatus::infeasible, {}, 0.0};
    double phase1 = 0.0;
    for (size_t i = 0; i < m; ++i)
        if (static_cast<size_t>(t.basis[i]) >= n_split + n_slack) phase1 += t.rhs[i];
    if (phase1 > 1e-7) return {LpStatus::infeasible, {}, 0.0};

    // Drive remaining artificials out of the basis. Rows whose non-artificial
    // entries are all zero are redundant and can never change afterwards.
    for (size_t i = 0; i < m; ++i) {
        if (static_cast<size_t>(t.basis[i]) < n_split + n_slack) continue;
        for (size_t j = 0; j < n_split + n_slack; ++j) {
            if (std::abs(t.a[i][j]) > kEps) {
                t.pivot(i, j);
                break;
            }
        }
    }

    // Phase 2: maximize objective == minimize -objective; artificials barred.
    std::vector<double> cost2(cols, 0.0);
    for (size_t j = 0; j < n; ++j) {
        cost2[2 * j] = -lp.objective[j];
        cost2[2 * j + 1] = lp.objective[j];
    }
    std::vector<bool> allowed(cols, true);
    for (size_t r = 0; r < m; ++r) allowed[n_split + n_slack + r] = false;
    if (!run_simplex(t, cost2, allowed)) return {LpStatus::unbounded, {}, 0.0};

    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.x.assign(n, 0.0);
    for (size_t i = 0; i < m; ++i) {
        int b = t.basis[i];
        if (b >= 0 && static_cast<size_t>(b) < n_split) {
            size_t var = static_cast<size_t>(b) / 2;
            double sign = (static_cast<size_t>(b) % 2 == 0) ? 1.0 : -1.0;
            sol.x[var] += sign * t.rhs[i];
        }
    }
    sol.value = 0.0;
    for (size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];
    return sol;
}

}  // namespace stabhull
