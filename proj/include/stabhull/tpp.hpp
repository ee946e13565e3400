#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stabhull/geom.hpp"
#include "stabhull/types.hpp"

namespace stabhull {

struct OrderedHalfPlanes {
    struct Entry {
        HalfPlane hp;
        int source = -1;  // index of the defining object
    };
    std::vector<Entry> entries;
};

/// Half-plane of o with respect to (u, v): the closed side of line(o) not
/// containing u; if u is on line(o), the side containing v; if line(o) equals
/// line(uv), the left side of u->v (the chain side). Returns nullopt in the
/// degenerate u = v on line(o) case, which post-validation covers.
std::optional<HalfPlane> halfplane_of(const ConvexObject& o, Point2 u, Point2 v,
                                      double tol = kDefaultTol);

/// Stable sort by clockwise angle of the normal starting from base_normal.
OrderedHalfPlanes order_halfplanes(const std::vector<std::pair<HalfPlane, int>>& hps,
                                   Vec2 base_normal = {0.0, -1.0});

enum class ContactKind { pass_through, boundary_touch };

struct TourPath {
    std::vector<Point2> waypoints;  // s, one point per target, t
    double length = 0.0;
    std::vector<ContactKind> contacts;
    std::vector<double> trace;  // incumbent length per sweep, nonincreasing
    bool converged = true;
    bool grazing = false;  // some contact distance fell in [tol, 10*tol)
};

struct TourOptions {
    double tol = kDefaultTol;
    int max_iters = 100000;
    int restarts = 2;
    std::uint64_t seed = 0;
};

/// Shortest path from s to t visiting each half-plane in sequence order.
TourPath tour(Point2 s, const OrderedHalfPlanes& seq, Point2 t, double tol = kDefaultTol);
TourPath tour(Point2 s, const OrderedHalfPlanes& seq, Point2 t, const TourOptions& opts);

/// Shortest path visiting arbitrary convex objects in order (used for ray tours).
TourPath tour_objects(Point2 s, const std::vector<ConvexObject>& seq, Point2 t,
                      const TourOptions& opts = {});

struct WitnessError : std::runtime_error {
    int violated_index;
    explicit WitnessError(int idx, const std::string& what)
        : std::runtime_error(what), violated_index(idx) {}
};

/// Queue-walk procedure producing points t_i in H_i that appear along the path
/// in index order; throws WitnessError naming the first violated half-plane if
/// the path is infeasible.
std::vector<Point2> order_witness(const TourPath& path, const OrderedHalfPlanes& seq,
                                  double tol = kDefaultTol);

}  // namespace stabhull
