#pragma once

#include <optional>
#include <vector>

#include "stabhull/config.hpp"
#include "stabhull/dp_grid.hpp"
#include "stabhull/locate.hpp"
#include "stabhull/types.hpp"

namespace stabhull {

/// A line meeting every object, if one exists (searched over lines through
/// pairs of arrangement vertices plus the objects' own supporting lines).
std::optional<Line2> line_stab(const std::vector<ConvexObject>& objects, double tol = kDefaultTol);

/// Area DP for one anchor guess; thin wrapper over the shared grid DP.
GridDpResult dp_area(const AngularVertexOrder& order, const std::vector<ConvexObject>& objects,
                     double prune_bound = kInf, double tol = kDefaultTol);

/// Concrete positive lower bound for the area of a positive-area optimum on
/// integer instances of an n^c x n^c grid; only used to start binary search.
double area_lower_bound(int n, int c);

/// Best-effort minimum-area polygon with at most 8 vertices: stabbing-line
/// test for two vertices, then per side-assignment multi-start local search
/// inside a (1+eps)^z binary search on the target area.
Solution constant_size_area(const std::vector<ConvexObject>& objects, double eps,
                            const SolverConfig& cfg = {});

/// Minimum over the constant-size branch and the area DP on the candidate
/// grid collection.
Solution solve_area(const std::vector<ConvexObject>& objects, double eps,
                    const SolverConfig& cfg = {});

}  // namespace stabhull
