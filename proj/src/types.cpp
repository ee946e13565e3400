#include "stabhull/types.hpp"

#include <algorithm>
#include <span>

#include "stabhull/geom.hpp"

namespace stabhull {

std::string to_string(ObjectKind k) {
    switch (k) {
        case ObjectKind::point: return "point";
        case ObjectKind::segment: return "segment";
        case ObjectKind::ray: return "ray";
        case ObjectKind::line: return "line";
        case ObjectKind::polygon: return "polygon";
    }
    return "?";
}

std::string to_string(Objective o) {
    switch (o) {
        case Objective::perimeter: return "perimeter";
        case Objective::area: return "area";
        case Objective::tour: return "tour";
    }
    return "?";
}

static void require_finite(std::span<const Point2> pts) {
    for (const auto& p : pts)
        if (!finite(p)) throw std::invalid_argument("non-finite coordinate");
}

ConvexObject ConvexObject::make_point(Point2 p) {
    require_finite({{p}});
    ConvexObject o;
    o.kind = ObjectKind::point;
    o.pts = {p};
    return o;
}

ConvexObject ConvexObject::make_segment(Point2 a, Point2 b) {
    require_finite({{a, b}});
    if (a == b) return make_point(a);
    ConvexObject o;
    o.kind = ObjectKind::segment;
    o.pts = {a, b};
    return o;
}

ConvexObject ConvexObject::make_ray(Point2 origin, Vec2 d) {
    require_finite({{origin, d}});
    ConvexObject o;
    o.kind = ObjectKind::ray;
    o.pts = {origin};
    o.dir = normalized(d);
    return o;
}

ConvexObject ConvexObject::make_line(Point2 anchor, Vec2 d) {
    require_finite({{anchor, d}});
    ConvexObject o;
    o.kind = ObjectKind::line;
    o.pts = {anchor};
    o.dir = normalized(d);
    return o;
}

ConvexObject ConvexObject::make_polygon(std::vector<Point2> vertices) {
    require_finite(vertices);
    if (vertices.empty()) throw std::invalid_argument("empty polygon");
    ConvexPolygon hull = convex_hull(vertices);
    if (hull.v.size() == 1) return make_point(hull.v[0]);
    if (hull.v.size() == 2) return make_segment(hull.v[0], hull.v[1]);
    ConvexObject o;
    o.kind = ObjectKind::polygon;
    o.pts = std::move(hull.v);
    return o;
}

double ConvexPolygon::perimeter() const {
    if (v.size() < 2) return 0.0;
    if (v.size() == 2) return 2.0 * dist(v[0], v[1]);
    double p = 0.0;
    for (size_t i = 0; i < v.size(); ++i) p += dist(v[i], v[(i + 1) % v.size()]);
    return p;
}

double ConvexPolygon::area() const {
    if (v.size() < 3) return 0.0;
    double a = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        size_t j = (i + 1) % v.size();
        a += cross(v[i], v[j]);
    }
    return 0.5 * a;
}

}  // namespace stabhull
