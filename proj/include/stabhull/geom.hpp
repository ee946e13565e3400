#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stabhull/types.hpp"

namespace stabhull {

/// Sign of det(q-p, r-p): +1 CCW, -1 CW, 0 within the tolerance band.
int orientation(Point2 p, Point2 q, Point2 r, double tol = kDefaultTol);

/// Exact-rational orientation sign for tie-sensitive tests.
int orientation_exact(Point2 p, Point2 q, Point2 r);

/// Minimal convex polygon containing all inputs (monotone chain).
/// Degenerate inputs yield point/segment hulls. Throws on empty input.
ConvexPolygon convex_hull(std::span<const Point2> points);

bool point_in_polygon(Point2 p, const ConvexPolygon& poly, double tol = kDefaultTol);
bool point_in_object(Point2 p, const ConvexObject& o, double tol = kDefaultTol);

/// Parameter interval {t : origin + t*dir in o}, possibly unbounded; nullopt if empty.
std::optional<std::pair<double, double>> clip_line_to_object(Point2 origin, Vec2 dir,
                                                             const ConvexObject& o,
                                                             double tol = kDefaultTol);
std::optional<std::pair<double, double>> clip_line_to_polygon(Point2 origin, Vec2 dir,
                                                              const ConvexPolygon& poly,
                                                              double tol = kDefaultTol);

/// Closed-set intersection test between an input object and a solution polygon
/// (polygon includes its interior; boundary touching counts).
bool intersects(const ConvexObject& o, const ConvexPolygon& poly, double tol = kDefaultTol);

/// A point of o ∩ poly; nullopt if the sets are disjoint.
std::optional<Point2> intersection_witness(const ConvexObject& o, const ConvexPolygon& poly,
                                           double tol = kDefaultTol);

bool objects_intersect(const ConvexObject& a, const ConvexObject& b, double tol = kDefaultTol);

ConvexPolygon minkowski_sum(const ConvexPolygon& p, const ConvexPolygon& q);

struct Line2 {
    Point2 anchor;
    Vec2 dir;
};

struct FirstHit {
    double t = 0.0;
    Point2 point;
    Line2 tangent;
};

/// First point of o hit by the ray (origin, dir) together with a supporting
/// line of o there. At a polygon vertex the supporting line is the incident
/// edge whose undirected direction is reached first rotating CCW from the ray
/// direction.
std::optional<FirstHit> first_hit_tangent(Point2 origin, Vec2 dir, const ConvexObject& o,
                                          double tol = kDefaultTol);

struct CommonPointResult {
    std::optional<Point2> point;
    std::vector<int> infeasible_core;  // <=3 objects with empty common intersection
};

/// A point lying in every object, if one exists.
CommonPointResult common_point_check(const std::vector<ConvexObject>& objects,
                                     double tol = kDefaultTol);

double distance_point_object(Point2 p, const ConvexObject& o);
double distance_object_polygon(const ConvexObject& o, const ConvexPolygon& poly,
                               double tol = kDefaultTol);

/// min over q in o of |a-q| + |q-b| (shortest a->o->b detour).
double min_detour_via_object(Point2 a, Point2 b, const ConvexObject& o);

/// Finite defining points (vertices, endpoints, ray origins, line anchors).
std::vector<Point2> object_vertices(const ConvexObject& o);

/// Boundary of an object as linear pieces with parameter ranges (+-inf allowed).
struct LinearPiece {
    Point2 a;
    Vec2 d;
    double t0 = 0.0;
    double t1 = 1.0;
};
std::vector<LinearPiece> boundary_pieces(const ConvexObject& o);

/// Intersection points of two linear pieces (two points for collinear overlap ends).
std::vector<Point2> piece_intersections(const LinearPiece& p, const LinearPiece& q,
                                        double tol = kDefaultTol);

/// Clockwise angle in [0, 2*pi) rotating `from` onto `to`.
double cw_angle(Vec2 from, Vec2 to);

/// Clockwise angle in [0, pi) rotating ray direction `from` until parallel to `dir`.
double cw_angle_to_parallel(Vec2 from, Vec2 dir);

/// Does o meet the closed wedge swept clockwise from direction d0 by `angle` around apex?
bool object_hits_wedge(Point2 apex, Vec2 d0, double angle, const ConvexObject& o,
                       double tol = kDefaultTol);

bool object_hits_segment(const ConvexObject& o, Point2 a, Point2 b, double tol = kDefaultTol);
bool object_hits_ray(const ConvexObject& o, Point2 origin, Vec2 dir, double tol = kDefaultTol);
bool object_hits_triangle(const ConvexObject& o, Point2 a, Point2 b, Point2 c,
                          double tol = kDefaultTol);
bool line_hits_object(Point2 anchor, Vec2 dir, const ConvexObject& o, double tol = kDefaultTol);

ConvexObject transformed(const ConvexObject& o, double angle, Vec2 translate);
Point2 transformed(Point2 p, double angle, Vec2 translate);

}  // namespace stabhull
