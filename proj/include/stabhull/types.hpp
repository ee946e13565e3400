#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabhull {

constexpr double kDefaultTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

using Vec2 = Point2;

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline Vec2 perp_ccw(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 perp_cw(Vec2 a) { return {a.y, -a.x}; }
inline Vec2 normalized(Vec2 a) {
    double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return {a.x / n, a.y / n};
}
inline Vec2 rotated(Vec2 a, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

enum class ObjectKind { point, segment, ray, line, polygon };

std::string to_string(ObjectKind k);

/// One element of the input set: a point, segment, ray, line, or convex polygon.
/// `pts` holds the defining points (polygon vertices are CCW and strictly convex
/// after normalization); `dir` is the direction for rays and lines.
struct ConvexObject {
    ObjectKind kind = ObjectKind::point;
    std::vector<Point2> pts;
    Vec2 dir{0.0, 0.0};

    static ConvexObject make_point(Point2 p);
    static ConvexObject make_segment(Point2 a, Point2 b);
    static ConvexObject make_ray(Point2 origin, Vec2 d);
    static ConvexObject make_line(Point2 anchor, Vec2 d);
    static ConvexObject make_polygon(std::vector<Point2> vertices);

    bool bounded() const { return kind != ObjectKind::ray && kind != ObjectKind::line; }
};

/// Convex polygon with CCW vertices; 1 or 2 vertices encode the degenerate
/// point / doubled-segment cases. The polygon always includes its interior.
struct ConvexPolygon {
    std::vector<Point2> v;

    double perimeter() const;
    double area() const;
};

/// Closed half-plane {p : dot(normal, p) >= offset} with unit normal.
struct HalfPlane {
    Vec2 normal{0.0, 1.0};
    double offset = 0.0;

    double signed_dist(Point2 p) const { return dot(normal, p) - offset; }
    bool contains(Point2 p, double tol = kDefaultTol) const { return signed_dist(p) >= -tol; }
};

struct InstanceConfig {
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    double eps = 0.25;
};

struct Instance {
    std::vector<ConvexObject> objects;
    InstanceConfig config;
};

enum class Objective { perimeter, area, tour };

std::string to_string(Objective o);

/// Result of a solve: objective value, the polygon (or tour path), one witness
/// point per object certifying feasibility, and method metadata.
struct Solution {
    Objective objective = Objective::perimeter;
    double value = kInf;
    ConvexPolygon polygon;
    std::vector<Point2> witnesses;
    std::string branch;
    double eps = 0.0;
    std::vector<std::string> caveats;
    bool feasible = true;
};

}  // namespace stabhull
