#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stabhull/geom.hpp"
#include "stabhull/types.hpp"

namespace stabhull {

struct OrientedRect {
    Point2 center;
    double axis_angle = 0.0;
    double half_width = 0.0;
    double half_height = 0.0;

    double perimeter() const { return 2.0 * ((2.0 * half_width) + (2.0 * half_height)); }
    ConvexPolygon polygon() const;
};

struct Square {
    Point2 center;
    double axis_angle = 0.0;
    double side = 0.0;
};

struct Ellipse {
    Point2 center;
    double a = 0.0;  // semi-major
    double b = 0.0;  // semi-minor
    double angle = 0.0;

    double area() const { return kPi * a * b; }
    /// (p-c)^T M (p-c), equals 1 on the boundary.
    double quad_eval(Point2 p) const;
    bool contains(Point2 p, double rel_tol = 1e-7) const { return quad_eval(p) <= 1.0 + rel_tol; }
    Point2 to_unit_circle(Point2 p) const;    // frame inverse
    Point2 from_unit_circle(Point2 u) const;  // frame
};

/// Affine lattice: point(i,j) = origin + i*ex + j*ey, 0<=i<=cols, 0<=j<=rows.
struct GridSpec {
    Point2 origin;
    Vec2 ex, ey;
    int cols = 1, rows = 1;
    std::optional<Ellipse> ellipse;  // defining ellipse for area-candidate grids

    Point2 point(int i, int j) const { return origin + static_cast<double>(i) * ex + static_cast<double>(j) * ey; }
    double cell_edge() const { return std::max(norm(ex), norm(ey)); }
    int point_count() const { return (cols + 1) * (rows + 1); }
};

struct RectResult {
    OrientedRect rect;
    std::vector<Point2> witnesses;  // one per object
};

/// A1: best intersecting rectangle over ceil(pi/(4*eps1)) orientations, one
/// exact witness-point LP per orientation.
RectResult min_perimeter_rect(const std::vector<ConvexObject>& objects, double eps1);

/// Square concentric and axis-parallel with R, side exactly 3*peri(R).
Square localization_square(const OrientedRect& r);

/// Object vertices plus pairwise boundary intersections, deduplicated.
std::vector<Point2> arrangement_vertices(const std::vector<ConvexObject>& objects,
                                         double tol = kDefaultTol);

/// Minimum-area covering ellipse via support-subset enumeration
/// (3: Steiner circumellipse, 4: pencil minimization, 5: unique conic).
Ellipse min_area_ellipse(const std::vector<Point2>& points);

/// Minimum-area ellipse through/around at most 5 points; nullopt if degenerate.
std::optional<Ellipse> ellipse_of_support(const std::vector<Point2>& support);

struct CandidateGridOptions {
    double k_max = 2048;       // cap on cells per side
    int full_enum_limit = 20;  // |X| up to which all subsets are enumerated
    std::size_t subset_budget = 20000;
};

std::vector<GridSpec> candidate_grids(const std::vector<ConvexObject>& objects, double eps,
                                      const CandidateGridOptions& opts = {});

}  // namespace stabhull
