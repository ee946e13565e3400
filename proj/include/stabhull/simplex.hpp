#pragma once

#include <vector>

namespace stabhull {

enum class LpStatus { optimal, infeasible, unbounded };

/// maximize objective . x  subject to A_le x <= b_le, A_eq x = b_eq, x free.
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<std::vector<double>> a_le;
    std::vector<double> b_le;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;

    void add_le(std::vector<double> a, double b) {
        a_le.push_back(std::move(a));
        b_le.push_back(b);
    }
    void add_eq(std::vector<double> a, double b) {
        a_eq.push_back(std::move(a));
        b_eq.push_back(b);
    }
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double value = 0.0;
};

/// Dense two-phase simplex with Bland's rule. Free variables are split
/// internally; intended for the small problems this project generates.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace stabhull
