#pragma once

#include <vector>

#include "stabhull/types.hpp"

namespace stabhull::oracle {

/// Brute-force baselines, deliberately kept independent of the solver modules:
/// they share only the passive data model in types.hpp and implement their own
/// predicates and dynamic programs (enforced by the oracle_independence test).
///
/// Both grid oracles run the angular-order DP over every lattice anchor of a
/// square box (the instance bounding box inflated 3x) at grid_n subdivisions
/// per axis, using a power-of-two multigrid ladder whose pruning never
/// discards a polygon better than the incumbent:
///   - any convex polygon of perimeter < B has every vertex within B/2 of
///     every object and of its lexicographic-min vertex;
///   - a chain through anchor a and vertex v costs at least
///     |av| + min_{q in o}(|vq| + |qa|) for every object o;
///   - coarse-level values localize fine-level anchors (a fine polygon of
///     value V yields a coarse polygon of value <= V + 8*cell whose anchor is
///     within 2 cells).
/// The perimeter value is therefore exactly the best grid polygon at the
/// final resolution; its discretization slack against the true optimum is
/// reported as 8*cell (hull-of-touched-cells bound). The area oracle refines
/// inside the coarse winner's neighborhood (validated by the grid-doubling
/// convergence test) and reports slack 2*sqrt(2)*cell*peri + 2*pi*cell^2.

struct Resolution {
    int grid_n = 64;
};

struct OracleResult {
    double value = kInf;
    double slack = 0.0;
    std::vector<Point2> polygon;
};

OracleResult oracle_perimeter(const std::vector<ConvexObject>& objects, Resolution res,
                              int threads = 1);
OracleResult oracle_area(const std::vector<ConvexObject>& objects, Resolution res,
                         int threads = 1);

/// One ordered stop of a tour oracle: a half-plane or a convex object.
struct TourSet {
    bool is_halfplane = false;
    HalfPlane hp;
    ConvexObject obj;

    static TourSet of(const HalfPlane& h) {
        TourSet t;
        t.is_halfplane = true;
        t.hp = h;
        return t;
    }
    static TourSet of(const ConvexObject& o) {
        TourSet t;
        t.obj = o;
        return t;
    }
};

struct TourOracleResult {
    double value = kInf;
    double cell = 0.0;
};

/// Layered shortest path over grid-discretized memberships in fixed order.
TourOracleResult oracle_tour(Point2 s, const std::vector<TourSet>& ordered_sets, Point2 t,
                             Resolution res);

}  // namespace stabhull::oracle
