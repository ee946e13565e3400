#pragma once

#include <cstdint>

namespace stabhull {

/// Runtime knobs shared by the solvers. Defaults are sized for desk-scale
/// instances (a handful of objects in a unit-scale box).
struct SolverConfig {
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int threads = 1;
    int max_iters = 100000;

    // perimeter grid DP
    int dp_cells = 48;      // cells per side of the square localization grid
    int refine_rounds = 2;  // local refinement passes around the incumbent

    // area grid DP
    int area_grid_budget = 40;    // candidate grids actually run
    double area_dp_radius = 8.0;  // half-span of the DP window in ellipse frame
    int area_dp_cells = 20;

    // constant-size area search
    int csa_starts = 6;
    int csa_tuple_budget = 256;

    // exact solver
    int subI_samples_per_line = 24;
};

}  // namespace stabhull
