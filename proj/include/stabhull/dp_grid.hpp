#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stabhull/geom.hpp"
#include "stabhull/types.hpp"

namespace stabhull {

using ObjMask = std::uint64_t;

/// Candidate vertices sorted by clockwise angle around the anchor from the
/// leftward horizontal ray, ties by distance. Index size() acts as the closing
/// sentinel (a copy of the anchor at angle pi).
struct AngularVertexOrder {
    Point2 anchor;
    std::vector<Point2> vertices;
    std::vector<double> phi;

    int sentinel() const { return static_cast<int>(vertices.size()); }
    Point2 point_of(int idx) const {
        return idx < 0 || idx >= sentinel() ? anchor : vertices[static_cast<size_t>(idx)];
    }
};

/// Keeps only candidates in the closed upper half-plane of the anchor minus
/// the leftward ray, then sorts.
AngularVertexOrder make_angular_order(Point2 anchor, std::span<const Point2> candidates,
                                      double tol = kDefaultTol);

/// The coverage set O(v, w): objects that a chain ending with edge v->w must
/// already have met. v_index = -1 means the anchor; w_index = order.sentinel()
/// means the closing copy of the anchor.
ObjMask coverage_set(const AngularVertexOrder& order, int v_index, int w_index,
                     const std::vector<ConvexObject>& objects, double tol = kDefaultTol);

struct GridDpResult {
    double value = kInf;
    ConvexPolygon polygon;  // closed polygon (anchor + chain), CCW
};

/// The angular-order DP: minimum closed convex chain from the anchor through
/// the candidate vertices whose polygon meets every object. Objective is chain
/// length (perimeter) or swept triangle area. `prune_bound` skips partial
/// chains that provably cannot beat it; pass kInf for the unpruned table.
GridDpResult grid_dp(const AngularVertexOrder& order, const std::vector<ConvexObject>& objects,
                     bool area_objective, double prune_bound = kInf, double tol = kDefaultTol);

}  // namespace stabhull
