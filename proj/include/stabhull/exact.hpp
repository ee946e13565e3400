#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "stabhull/config.hpp"
#include "stabhull/dp_grid.hpp"
#include "stabhull/tpp.hpp"
#include "stabhull/types.hpp"

namespace stabhull {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChainResult {
    double value = kInf;  // chain length (excluding the closing edge u-v)
    ConvexPolygon polygon;
};

/// Minimum convex chain from u to v whose induced polygon meets every object
/// in objs, with no vertex other than u, v among the forbidden endpoints.
/// Validation failures yield value infinity; tour non-convergence throws.
ChainResult subroutine_II(Point2 u, Point2 v, const std::vector<ConvexObject>& objs,
                          std::span<const Point2> forbidden, double tol = kDefaultTol);

/// Best endpoint-free intersecting polygon over a surrogate candidate set
/// (pairwise line intersections, perpendicular feet, line samples).
ChainResult subroutine_I(const std::vector<ConvexObject>& objs, const SolverConfig& cfg = {});

struct PrefixContext {
    Point2 w;
    std::vector<double> psi;             // sorted distinct tangent angles at w
    std::vector<ObjMask> prefix_masks;   // O(w, j), j = 0..psi.size()
    ObjMask star = 0;                    // objects meeting rho*(w)
};

/// Tangent-angle thresholds and nested prefix sets at w (angles measured
/// clockwise from the ray p_bot -> w).
PrefixContext psi_prefix_sets(Point2 w, Point2 p_bot, const std::vector<ConvexObject>& objs,
                              double tol = kDefaultTol);

struct ExactGuess {
    Point2 p_bot;
    double ray_angle = kPi;  // direction of rho_0 in world coordinates
    int range_index = 0;     // tangent range [psi_j, psi_j+1]
};

struct ExactDpResult {
    double table_value = kInf;  // A[p_bot-sentinel, 0]
    double value = kInf;        // perimeter of the reconstructed feasible hull
    ConvexPolygon polygon;
};

/// The coverage set O*(w, j) for a subproblem, exposed for tests.
/// w_index == -1 denotes p_bot, w_index == |Y| the closing sentinel.
ObjMask o_star(int w_index, int j, const std::vector<Point2>& y_order, Point2 p_bot, Vec2 ray0,
               ObjMask minus_mask, const std::vector<ConvexObject>& objs,
               double tol = kDefaultTol);

/// Endpoint-anchored DP for one (p_bot, ray, tangent-range) guess.
ExactDpResult dp_exact(const std::vector<ConvexObject>& objects, const ExactGuess& guess,
                       const SolverConfig& cfg = {});

/// Exact minimum-perimeter intersecting polygon for segments / rays / lines /
/// points: minimum over subroutine I and the endpoint DP over all guesses.
Solution solve_exact(const std::vector<ConvexObject>& objects, const SolverConfig& cfg = {});

}  // namespace stabhull
