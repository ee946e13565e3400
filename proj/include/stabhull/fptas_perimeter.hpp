#pragma once

#include <vector>

#include "stabhull/config.hpp"
#include "stabhull/dp_grid.hpp"
#include "stabhull/locate.hpp"
#include "stabhull/types.hpp"

namespace stabhull {

/// Regular grid covering sigma with cell edge at most (eps/8)*lb_opt.
GridSpec build_grid(const Square& sigma, double lb_opt, double eps);

/// Length DP for one anchor guess; thin wrapper over the shared grid DP.
GridDpResult dp_perimeter(const AngularVertexOrder& order,
                          const std::vector<ConvexObject>& objects, double prune_bound = kInf,
                          double tol = kDefaultTol);

/// (1+eps)-approximate minimum-perimeter intersecting polygon: locator
/// rectangle, localization square, anchored grid DPs, local refinement;
/// returns the better of the rectangle and the best DP polygon.
Solution solve_perimeter(const std::vector<ConvexObject>& objects, double eps,
                         const SolverConfig& cfg = {});

}  // namespace stabhull
