#include "stabhull/geom.hpp"

#include <algorithm>
#include <array>
#include <cassert>

#include <boost/multiprecision/cpp_int.hpp>

#include "stabhull/simplex.hpp"

namespace stabhull {

namespace {

constexpr double kTinyDir = 1e-14;

double signed_dist_to_line(Point2 p, Point2 a, Vec2 d) {
    return cross(d, p - a) / norm(d);
}

// Effective geometric kind after polygon normalization (make_polygon already
// collapses degenerate polygons, but be defensive for hand-built objects).
ObjectKind effective_kind(const ConvexObject& o) {
    if (o.kind == ObjectKind::polygon) {
        if (o.pts.size() == 1) return ObjectKind::point;
        if (o.pts.size() == 2) return ObjectKind::segment;
    }
    return o.kind;
}

}  // namespace

int orientation(Point2 p, Point2 q, Point2 r, double tol) {
    double det = cross(q - p, r - p);
    if (std::abs(det) <= tol) return 0;
    return det > 0 ? 1 : -1;
}

int orientation_exact(Point2 p, Point2 q, Point2 r) {
    using rational = boost::multiprecision::cpp_rational;
    rational ax(q.x), ay(q.y), bx(r.x), by(r.y), px(p.x), py(p.y);
    rational det = (ax - px) * (by - py) - (ay - py) * (bx - px);
    if (det == 0) return 0;
    return det > 0 ? 1 : -1;
}

ConvexPolygon convex_hull(std::span<const Point2> points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: empty input");
    std::vector<Point2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return ConvexPolygon{pts};

    auto build = [&](auto begin, auto end, std::vector<Point2>& out) {
        for (auto it = begin; it != end; ++it) {
            while (out.size() >= 2 &&
                   cross(out.back() - out[out.size() - 2], *it - out[out.size() - 2]) <= 0.0)
                out.pop_back();
            out.push_back(*it);
        }
    };
    std::vector<Point2> lower, upper;
    build(pts.begin(), pts.end(), lower);
    build(pts.rbegin(), pts.rend(), upper);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) return ConvexPolygon{{pts.front(), pts.back()}};
    return ConvexPolygon{lower};
}

bool point_in_polygon(Point2 p, const ConvexPolygon& poly, double tol) {
    size_t n = poly.v.size();
    if (n == 0) return false;
    if (n == 1) return dist(p, poly.v[0]) <= tol;
    if (n == 2) return distance_point_object(p, ConvexObject::make_segment(poly.v[0], poly.v[1])) <= tol;
    for (size_t i = 0; i < n; ++i) {
        Point2 a = poly.v[i], b = poly.v[(i + 1) % n];
        if (signed_dist_to_line(p, a, b - a) < -tol) return false;
    }
    return true;
}

bool point_in_object(Point2 p, const ConvexObject& o, double tol) {
    switch (effective_kind(o)) {
        case ObjectKind::point:
            return dist(p, o.pts[0]) <= tol;
        case ObjectKind::segment: {
            Point2 a = o.pts[0], b = o.pts[1];
            Vec2 e = b - a;
            double t = dot(p - a, e) / norm2(e);
            t = std::clamp(t, 0.0, 1.0);
            return dist(p, a + t * e) <= tol;
        }
        case ObjectKind::ray: {
            double t = std::max(0.0, dot(p - o.pts[0], o.dir));
            return dist(p, o.pts[0] + t * o.dir) <= tol;
        }
        case ObjectKind::line:
            return std::abs(signed_dist_to_line(p, o.pts[0], o.dir)) <= tol;
        case ObjectKind::polygon:
            return point_in_polygon(p, ConvexPolygon{o.pts}, tol);
    }
    return false;
}

namespace {

// Intersects the line origin + t*dir with a 1-parameter object base + s*e,
// s in [s0, s1] (s1 may be +inf, s0 may be -inf). Returns t-interval.
std::optional<std::pair<double, double>> clip_line_to_piece(Point2 origin, Vec2 dir, Point2 base,
                                                            Vec2 e, double s0, double s1,
                                                            double tol) {
    double denom = cross(dir, e);
    double dn = norm(dir), en = norm(e);
    if (std::abs(denom) <= kTinyDir * dn * en) {
        // Parallel: either collinear (interval) or disjoint.
        if (std::abs(signed_dist_to_line(base, origin, dir)) > tol) return std::nullopt;
        auto t_of_s = [&](double s) {
            if (std::isinf(s)) {
                double sgn = dot(e, dir) > 0 ? s : -s;
                return sgn;
            }
            return dot(base + s * e - origin, dir) / (dn * dn);
        };
        double ta = t_of_s(s0), tb = t_of_s(s1);
        if (ta > tb) std::swap(ta, tb);
        return std::make_pair(ta, tb);
    }
    double t = cross(base - origin, e) / denom;
    double s = cross(base - origin, dir) / denom;
    double pad = tol / en;
    if (s < s0 - pad || s > s1 + pad) return std::nullopt;
    return std::make_pair(t, t);
}

}  // namespace

std::optional<std::pair<double, double>> clip_line_to_polygon(Point2 origin, Vec2 dir,
                                                              const ConvexPolygon& poly,
                                                              double tol) {
    size_t n = poly.v.size();
    if (n == 0) return std::nullopt;
    if (n == 1) {
        Point2 p = poly.v[0];
        if (std::abs(signed_dist_to_line(p, origin, dir)) > tol) return std::nullopt;
        double t = dot(p - origin, dir) / norm2(dir);
        return std::make_pair(t, t);
    }
    if (n == 2)
        return clip_line_to_piece(origin, dir, poly.v[0], poly.v[1] - poly.v[0], 0.0, 1.0, tol);

    double lo = -kInf, hi = kInf;
    for (size_t i = 0; i < n; ++i) {
        Point2 a = poly.v[i], b = poly.v[(i + 1) % n];
        Vec2 nrm = normalized(perp_ccw(b - a));  // inward for CCW
        double num = dot(nrm, origin - a) + tol;
        double den = dot(nrm, dir);
        if (std::abs(den) <= kTinyDir * norm(dir)) {
            if (num < 0.0) return std::nullopt;
        } else if (den > 0.0) {
            lo = std::max(lo, -num / den);
        } else {
            hi = std::min(hi, -num / den);
        }
        if (lo > hi) return std::nullopt;
    }
    return std::make_pair(lo, hi);
}

std::optional<std::pair<double, double>> clip_line_to_object(Point2 origin, Vec2 dir,
                                                             const ConvexObject& o, double tol) {
    switch (effective_kind(o)) {
        case ObjectKind::point: {
            Point2 p = o.pts[0];
            if (std::abs(signed_dist_to_line(p, origin, dir)) > tol) return std::nullopt;
            double t = dot(p - origin, dir) / norm2(dir);
            return std::make_pair(t, t);
        }
        case ObjectKind::segment:
            return clip_line_to_piece(origin, dir, o.pts[0], o.pts[1] - o.pts[0], 0.0, 1.0, tol);
        case ObjectKind::ray:
            return clip_line_to_piece(origin, dir, o.pts[0], o.dir, 0.0, kInf, tol);
        case ObjectKind::line:
            return clip_line_to_piece(origin, dir, o.pts[0], o.dir, -kInf, kInf, tol);
        case ObjectKind::polygon:
            return clip_line_to_polygon(origin, dir, ConvexPolygon{o.pts}, tol);
    }
    return std::nullopt;
}

namespace {

bool ranges_overlap(double a0, double a1, double b0, double b1, double pad) {
    return a0 <= b1 + pad && b0 <= a1 + pad;
}

// Param range of the object along its own defining line.
std::pair<double, double> own_range(const ConvexObject& o) {
    switch (effective_kind(o)) {
        case ObjectKind::segment: return {0.0, 1.0};
        case ObjectKind::ray: return {0.0, kInf};
        case ObjectKind::line: return {-kInf, kInf};
        default: return {0.0, 0.0};
    }
}

Point2 own_base(const ConvexObject& o) { return o.pts[0]; }
Vec2 own_dir(const ConvexObject& o) {
    return effective_kind(o) == ObjectKind::segment ? o.pts[1] - o.pts[0] : o.dir;
}

bool bounded_polys_intersect(const ConvexPolygon& a, const ConvexPolygon& b, double tol) {
    for (const auto& p : a.v)
        if (point_in_polygon(p, b, tol)) return true;
    for (const auto& p : b.v)
        if (point_in_polygon(p, a, tol)) return true;
    size_t na = a.v.size();
    for (size_t i = 0; i < na; ++i) {
        Point2 p = a.v[i], q = a.v[(i + 1) % na];
        auto clip = clip_line_to_polygon(p, q - p, b, tol);
        if (clip && ranges_overlap(clip->first, clip->second, 0.0, 1.0, tol / std::max(dist(p, q), tol)))
            return true;
    }
    return false;
}

}  // namespace

bool intersects(const ConvexObject& o, const ConvexPolygon& poly, double tol) {
    size_t n = poly.v.size();
    if (n == 0) return false;
    if (n == 1) return point_in_object(poly.v[0], o, tol);
    ObjectKind k = effective_kind(o);
    if (k == ObjectKind::point) return point_in_polygon(o.pts[0], poly, tol);
    if (k == ObjectKind::polygon) {
        if (n == 2) {
            auto clip = clip_line_to_polygon(poly.v[0], poly.v[1] - poly.v[0],
                                             ConvexPolygon{o.pts}, tol);
            return clip && ranges_overlap(clip->first, clip->second, 0.0, 1.0,
                                          tol / std::max(dist(poly.v[0], poly.v[1]), tol));
        }
        return bounded_polys_intersect(ConvexPolygon{o.pts}, poly, tol);
    }
    // Linear object: clip its own line against the polygon, compare param ranges.
    Vec2 d = own_dir(o);
    auto clip = clip_line_to_polygon(own_base(o), d, poly, tol);
    if (!clip) return false;
    auto [r0, r1] = own_range(o);
    return ranges_overlap(clip->first, clip->second, r0, r1, tol / std::max(norm(d), tol));
}

std::optional<Point2> intersection_witness(const ConvexObject& o, const ConvexPolygon& poly,
                                           double tol) {
    if (!intersects(o, poly, tol)) return std::nullopt;
    size_t n = poly.v.size();
    if (n == 1) return poly.v[0];
    ObjectKind k = effective_kind(o);
    if (k == ObjectKind::point) return o.pts[0];
    if (k != ObjectKind::polygon) {
        Vec2 d = own_dir(o);
        auto clip = clip_line_to_polygon(own_base(o), d, poly, tol);
        if (!clip) return std::nullopt;
        auto [r0, r1] = own_range(o);
        double lo = std::max(clip->first, r0), hi = std::min(clip->second, r1);
        if (lo > hi) lo = hi = std::clamp(0.5 * (clip->first + clip->second), r0, r1);
        double t = std::isinf(lo) ? (std::isinf(hi) ? 0.0 : hi) : (std::isinf(hi) ? lo : 0.5 * (lo + hi));
        return own_base(o) + t * d;
    }
    // polygon object
    ConvexPolygon op{o.pts};
    for (const auto& p : op.v)
        if (point_in_polygon(p, poly, tol)) return p;
    for (const auto& p : poly.v)
        if (point_in_polygon(p, op, tol)) return p;
    size_t m = op.v.size();
    for (size_t i = 0; i < m; ++i) {
        Point2 a = op.v[i], b = op.v[(i + 1) % m];
        auto clip = clip_line_to_polygon(a, b - a, poly, tol);
        if (clip) {
            double lo = std::max(clip->first, 0.0), hi = std::min(clip->second, 1.0);
            if (lo <= hi + tol) return a + std::clamp(0.5 * (lo + hi), 0.0, 1.0) * (b - a);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generic convex-shape intersection (supports unbounded shapes).

namespace {

struct ShapeData {
    std::vector<Point2> verts;  // hull vertices in order
    std::vector<Vec2> recs;     // recession directions
};

ShapeData shape_of(const ConvexObject& o) {
    switch (effective_kind(o)) {
        case ObjectKind::point: return {{o.pts[0]}, {}};
        case ObjectKind::segment: return {{o.pts[0], o.pts[1]}, {}};
        case ObjectKind::ray: return {{o.pts[0]}, {o.dir}};
        case ObjectKind::line: return {{o.pts[0]}, {o.dir, -1.0 * o.dir}};
        case ObjectKind::polygon: return {o.pts, {}};
    }
    return {};
}

std::pair<double, double> shape_support(const ShapeData& s, Vec2 axis) {
    double lo = kInf, hi = -kInf;
    for (const auto& p : s.verts) {
        double v = dot(p, axis);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (const auto& r : s.recs) {
        double v = dot(r, axis);
        if (v > kTinyDir) hi = kInf;
        if (v < -kTinyDir) lo = -kInf;
    }
    return {lo, hi};
}

bool shapes_intersect(const ShapeData& a, const ShapeData& b, double tol) {
    std::vector<Vec2> axes;
    auto add_axis = [&](Vec2 v) {
        double n = norm(v);
        if (n > kTinyDir) axes.push_back({v.x / n, v.y / n});
    };
    auto add_shape_axes = [&](const ShapeData& s) {
        size_t n = s.verts.size();
        if (n == 2) add_axis(perp_ccw(s.verts[1] - s.verts[0]));
        if (n >= 3)
            for (size_t i = 0; i < n; ++i) add_axis(perp_ccw(s.verts[(i + 1) % n] - s.verts[i]));
        for (const auto& r : s.recs) add_axis(perp_ccw(r));
    };
    add_shape_axes(a);
    add_shape_axes(b);
    for (const auto& p : a.verts)
        for (const auto& q : b.verts) add_axis(p - q);
    if (axes.empty()) return true;
    for (const auto& ax : axes) {
        auto [alo, ahi] = shape_support(a, ax);
        auto [blo, bhi] = shape_support(b, ax);
        if (alo > bhi + tol || blo > ahi + tol) return false;
    }
    return true;
}

}  // namespace

bool objects_intersect(const ConvexObject& a, const ConvexObject& b, double tol) {
    if (a.bounded() && b.bounded()) {
        if (effective_kind(b) == ObjectKind::polygon)
            return intersects(a, ConvexPolygon{b.pts}, tol);
        if (effective_kind(a) == ObjectKind::polygon)
            return intersects(b, ConvexPolygon{a.pts}, tol);
    }
    return shapes_intersect(shape_of(a), shape_of(b), tol);
}

ConvexPolygon minkowski_sum(const ConvexPolygon& p, const ConvexPolygon& q) {
    if (p.v.empty() || q.v.empty()) throw std::invalid_argument("minkowski_sum: empty polygon");
    std::vector<Point2> sums;
    sums.reserve(p.v.size() * q.v.size());
    for (const auto& a : p.v)
        for (const auto& b : q.v) sums.push_back(a + b);
    return convex_hull(sums);
}

std::optional<FirstHit> first_hit_tangent(Point2 origin, Vec2 dir, const ConvexObject& o,
                                          double tol) {
    if (norm(dir) <= kTinyDir) throw std::invalid_argument("first_hit_tangent: zero direction");
    Vec2 d = normalized(dir);
    auto clip = clip_line_to_object(origin, d, o, tol);
    if (!clip) return std::nullopt;
    double pad = tol;
    if (clip->second < -pad) return std::nullopt;
    double t = std::max(clip->first, 0.0);
    Point2 hit = origin + t * d;

    FirstHit fh;
    fh.t = t;
    fh.point = hit;
    switch (effective_kind(o)) {
        case ObjectKind::point:
            fh.tangent = {o.pts[0], perp_ccw(d)};
            break;
        case ObjectKind::segment:
            fh.tangent = {o.pts[0], o.pts[1] - o.pts[0]};
            break;
        case ObjectKind::ray:
        case ObjectKind::line:
            fh.tangent = {o.pts[0], o.dir};
            break;
        case ObjectKind::polygon: {
            // Collect incident edges at the hit point; pick per the CCW-from-ray rule.
            const auto& vs = o.pts;
            size_t n = vs.size();
            double best_delta = kInf;
            bool found = false;
            double ray_ang = std::atan2(d.y, d.x);
            for (size_t i = 0; i < n; ++i) {
                Point2 a = vs[i], b = vs[(i + 1) % n];
                Vec2 e = b - a;
                double sd = std::abs(signed_dist_to_line(hit, a, e));
                double s = dot(hit - a, e) / norm2(e);
                if (sd <= 4.0 * tol && s >= -tol && s <= 1.0 + tol) {
                    double edge_ang = std::atan2(e.y, e.x);
                    double delta = std::fmod(edge_ang - ray_ang, kPi);
                    if (delta < 0) delta += kPi;
                    if (!found || delta < best_delta) {
                        best_delta = delta;
                        fh.tangent = {a, e};
                        found = true;
                    }
                }
            }
            if (!found) fh.tangent = {hit, perp_ccw(d)};  // origin inside the polygon
            break;
        }
    }
    return fh;
}

// ---------------------------------------------------------------------------
// Common point feasibility.

namespace {

std::optional<Point2> polygons_common_point(const std::vector<const ConvexObject*>& polys,
                                            double tol) {
    // Chebyshev center: maximize r s.t. n·x - r >= c for every edge half-plane.
    LinearProgram lp;
    lp.num_vars = 3;  // x, y, r
    lp.objective = {0.0, 0.0, 1.0};
    for (const auto* o : polys) {
        size_t n = o->pts.size();
        for (size_t i = 0; i < n; ++i) {
            Point2 a = o->pts[i], b = o->pts[(i + 1) % n];
            Vec2 nrm = normalized(perp_ccw(b - a));
            // -n·x + r <= -c
            lp.add_le({-nrm.x, -nrm.y, 1.0}, -dot(nrm, a));
        }
    }
    lp.add_le({0.0, 0.0, 1.0}, 1.0);  // bound r, the LP is otherwise unbounded above
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) return std::nullopt;
    if (sol.x[2] < -tol) return std::nullopt;
    return Point2{sol.x[0], sol.x[1]};
}

}  // namespace

CommonPointResult common_point_check(const std::vector<ConvexObject>& objects, double tol) {
    if (objects.empty()) throw std::invalid_argument("common_point_check: empty input");
    CommonPointResult res;

    auto verify = [&](Point2 p) {
        for (size_t i = 0; i < objects.size(); ++i)
            if (!point_in_object(p, objects[i], tol)) return static_cast<int>(i);
        return -1;
    };

    // A point object pins the candidate.
    for (size_t i = 0; i < objects.size(); ++i) {
        if (effective_kind(objects[i]) == ObjectKind::point) {
            Point2 p = objects[i].pts[0];
            int bad = verify(p);
            if (bad < 0) {
                res.point = p;
            } else {
                res.infeasible_core = {static_cast<int>(i), bad};
            }
            return res;
        }
    }

    // A linear object restricts the search to one line.
    int linear = -1;
    for (size_t i = 0; i < objects.size() && linear < 0; ++i)
        if (effective_kind(objects[i]) != ObjectKind::polygon) linear = static_cast<int>(i);
    if (linear >= 0) {
        const ConvexObject& base = objects[linear];
        Vec2 d = own_dir(base);
        auto [lo, hi] = own_range(base);
        int lo_owner = linear, hi_owner = linear;
        for (size_t i = 0; i < objects.size(); ++i) {
            if (static_cast<int>(i) == linear) continue;
            auto clip = clip_line_to_object(own_base(base), d, objects[i], tol);
            double pad = tol / std::max(norm(d), tol);
            if (!clip) {
                res.infeasible_core = {linear, static_cast<int>(i)};
                return res;
            }
            if (clip->first > lo + pad) { lo = clip->first; lo_owner = static_cast<int>(i); }
            if (clip->second < hi - pad) { hi = clip->second; hi_owner = static_cast<int>(i); }
            if (lo > hi + 2.0 * pad) {
                res.infeasible_core = {lo_owner, hi_owner, static_cast<int>(i)};
                std::sort(res.infeasible_core.begin(), res.infeasible_core.end());
                res.infeasible_core.erase(
                    std::unique(res.infeasible_core.begin(), res.infeasible_core.end()),
                    res.infeasible_core.end());
                return res;
            }
        }
        double t;
        if (std::isinf(lo) && std::isinf(hi)) t = 0.0;
        else if (std::isinf(lo)) t = hi;
        else if (std::isinf(hi)) t = lo;
        else t = 0.5 * (lo + hi);
        res.point = own_base(base) + t * d;
        return res;
    }

    // All polygons: 2D feasibility LP.
    std::vector<const ConvexObject*> polys;
    for (const auto& o : objects) polys.push_back(&o);
    auto p = polygons_common_point(polys, tol);
    if (p) {
        res.point = *p;
        return res;
    }
    // Helly: locate an infeasible pair or triple.
    size_t n = objects.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!polygons_common_point({&objects[i], &objects[j]}, tol)) {
                res.infeasible_core = {static_cast<int>(i), static_cast<int>(j)};
                return res;
            }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                if (!polygons_common_point({&objects[i], &objects[j], &objects[k]}, tol)) {
                    res.infeasible_core = {static_cast<int>(i), static_cast<int>(j),
                                           static_cast<int>(k)};
                    return res;
                }
    return res;
}

// ---------------------------------------------------------------------------
// Distances and detours.

double distance_point_object(Point2 p, const ConvexObject& o) {
    switch (effective_kind(o)) {
        case ObjectKind::point:
            return dist(p, o.pts[0]);
        case ObjectKind::segment: {
            Vec2 e = o.pts[1] - o.pts[0];
            double t = std::clamp(dot(p - o.pts[0], e) / norm2(e), 0.0, 1.0);
            return dist(p, o.pts[0] + t * e);
        }
        case ObjectKind::ray: {
            double t = std::max(0.0, dot(p - o.pts[0], o.dir));
            return dist(p, o.pts[0] + t * o.dir);
        }
        case ObjectKind::line:
            return std::abs(signed_dist_to_line(p, o.pts[0], o.dir));
        case ObjectKind::polygon: {
            ConvexPolygon poly{o.pts};
            if (point_in_polygon(p, poly, 0.0)) return 0.0;
            double best = kInf;
            size_t n = o.pts.size();
            for (size_t i = 0; i < n; ++i) {
                best = std::min(best, distance_point_object(
                                          p, ConvexObject::make_segment(o.pts[i], o.pts[(i + 1) % n])));
            }
            return best;
        }
    }
    return kInf;
}

double distance_object_polygon(const ConvexObject& o, const ConvexPolygon& poly, double tol) {
    if (poly.v.empty()) return kInf;
    if (intersects(o, poly, tol)) return 0.0;
    double best = kInf;
    for (const auto& p : poly.v) best = std::min(best, distance_point_object(p, o));
    ConvexObject polyobj = poly.v.size() >= 3 ? ConvexObject::make_polygon(poly.v)
                           : poly.v.size() == 2 ? ConvexObject::make_segment(poly.v[0], poly.v[1])
                                                : ConvexObject::make_point(poly.v[0]);
    for (const auto& q : object_vertices(o)) best = std::min(best, distance_point_object(q, polyobj));
    return best;
}

namespace {

double detour_via_piece(Point2 a, Point2 b, Point2 base, Vec2 e, double s0, double s1) {
    double en = norm(e);
    if (en <= kTinyDir) return dist(a, base) + dist(base, b);
    Vec2 n{-e.y / en, e.x / en};
    double da = dot(a - base, n);
    double db = dot(b - base, n);
    double s_star;
    if (da * db <= 0.0) {
        // a-b crosses or touches the supporting line; optimum is the crossing point.
        double denom = da - db;
        if (std::abs(denom) <= kTinyDir) {
            s_star = dot(a - base, e) / (en * en);
        } else {
            Point2 q = a + (da / denom) * (b - a);
            s_star = dot(q - base, e) / (en * en);
        }
    } else {
        // Same side: reflect b across the line; optimum where a-b_ref crosses it.
        Point2 b_ref = b - 2.0 * db * n;
        Point2 q = a + (da / (da + db)) * (b_ref - a);
        s_star = dot(q - base, e) / (en * en);
    }
    double s = std::clamp(s_star, s0, s1);
    Point2 q = base + s * e;
    return dist(a, q) + dist(q, b);
}

}  // namespace

double min_detour_via_object(Point2 a, Point2 b, const ConvexObject& o) {
    switch (effective_kind(o)) {
        case ObjectKind::point:
            return dist(a, o.pts[0]) + dist(o.pts[0], b);
        case ObjectKind::segment:
            return detour_via_piece(a, b, o.pts[0], o.pts[1] - o.pts[0], 0.0, 1.0);
        case ObjectKind::ray:
            return detour_via_piece(a, b, o.pts[0], o.dir, 0.0, 1e18);
        case ObjectKind::line:
            return detour_via_piece(a, b, o.pts[0], o.dir, -1e18, 1e18);
        case ObjectKind::polygon: {
            ConvexPolygon poly{o.pts};
            if (point_in_polygon(a, poly, 0.0) || point_in_polygon(b, poly, 0.0)) return dist(a, b);
            auto clip = clip_line_to_polygon(a, b - a, poly, 0.0);
            if (clip && ranges_overlap(clip->first, clip->second, 0.0, 1.0, 0.0)) return dist(a, b);
            double best = kInf;
            size_t n = o.pts.size();
            for (size_t i = 0; i < n; ++i)
                best = std::min(best, detour_via_piece(a, b, o.pts[i],
                                                       o.pts[(i + 1) % n] - o.pts[i], 0.0, 1.0));
            return best;
        }
    }
    return kInf;
}

std::vector<Point2> object_vertices(const ConvexObject& o) { return o.pts; }

std::vector<LinearPiece> boundary_pieces(const ConvexObject& o) {
    switch (effective_kind(o)) {
        case ObjectKind::point: return {};
        case ObjectKind::segment: return {{o.pts[0], o.pts[1] - o.pts[0], 0.0, 1.0}};
        case ObjectKind::ray: return {{o.pts[0], o.dir, 0.0, kInf}};
        case ObjectKind::line: return {{o.pts[0], o.dir, -kInf, kInf}};
        case ObjectKind::polygon: {
            std::vector<LinearPiece> out;
            size_t n = o.pts.size();
            for (size_t i = 0; i < n; ++i)
                out.push_back({o.pts[i], o.pts[(i + 1) % n] - o.pts[i], 0.0, 1.0});
            return out;
        }
    }
    return {};
}

std::vector<Point2> piece_intersections(const LinearPiece& p, const LinearPiece& q, double tol) {
    std::vector<Point2> out;
    double denom = cross(p.d, q.d);
    double pn = norm(p.d), qn = norm(q.d);
    if (std::abs(denom) <= kTinyDir * pn * qn) {
        if (std::abs(signed_dist_to_line(q.a, p.a, p.d)) > tol) return out;
        // Collinear overlap: report the finite endpoints of the overlap range.
        auto s_of = [&](Point2 x) { return dot(x - p.a, p.d) / (pn * pn); };
        double q0 = q.t0, q1 = q.t1;
        double b0 = std::isinf(q0) ? -kInf : s_of(q.a + q0 * q.d);
        double b1 = std::isinf(q1) ? kInf : s_of(q.a + q1 * q.d);
        if (b0 > b1) std::swap(b0, b1);
        double lo = std::max(p.t0, b0), hi = std::min(p.t1, b1);
        if (lo > hi + tol / std::max(pn, tol)) return out;
        if (std::isfinite(lo)) out.push_back(p.a + lo * p.d);
        if (std::isfinite(hi) && hi > lo + tol / std::max(pn, tol)) out.push_back(p.a + hi * p.d);
        return out;
    }
    double t = cross(q.a - p.a, q.d) / denom;
    double s = cross(q.a - p.a, p.d) / denom;
    double tpad = tol / std::max(pn, tol), spad = tol / std::max(qn, tol);
    if (t >= p.t0 - tpad && t <= p.t1 + tpad && s >= q.t0 - spad && s <= q.t1 + spad)
        out.push_back(p.a + t * p.d);
    return out;
}

double cw_angle(Vec2 from, Vec2 to) {
    double a = std::atan2(cross(to, from), dot(to, from));
    if (a < 0.0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi) a -= 2.0 * kPi;
    return a;
}

double cw_angle_to_parallel(Vec2 from, Vec2 dir) {
    double a = cw_angle(from, dir);
    if (a >= kPi) a -= kPi;
    if (a >= kPi) a -= kPi;
    return a;
}

bool object_hits_wedge(Point2 apex, Vec2 d0, double angle, const ConvexObject& o, double tol) {
    if (angle >= 2.0 * kPi - 1e-12) return true;
    Vec2 d1 = rotated(d0, -angle);  // clockwise sweep end
    if (angle <= kPi + 1e-12) {
        // include the mid direction: for angle == pi the two boundary
        // directions are antipodal and alone would span only a line
        Vec2 dm = rotated(d0, -0.5 * angle);
        ShapeData cone{{apex}, {normalized(d0), normalized(dm), normalized(d1)}};
        return shapes_intersect(cone, shape_of(o), tol);
    }
    // Reflex wedge: o misses it iff o lies strictly in the open complement cone
    // (from d1 clockwise to d0, an angle < pi, hence convex).
    double comp_angle = 2.0 * kPi - angle;
    auto strictly_in_complement = [&](Point2 p) {
        Vec2 u = p - apex;
        double n = norm(u);
        if (n <= tol) return false;
        double ang = cw_angle(d1, u);
        double pad = std::min(tol / n, 0.5 * comp_angle);
        return ang > pad && ang < comp_angle - pad;
    };
    ShapeData s = shape_of(o);
    for (const auto& p : s.verts)
        if (!strictly_in_complement(p)) return true;
    for (const auto& r : s.recs) {
        double ang = cw_angle(d1, r);
        if (!(ang >= 0.0 && ang <= comp_angle)) return true;
    }
    return false;
}

bool object_hits_segment(const ConvexObject& o, Point2 a, Point2 b, double tol) {
    Vec2 d = b - a;
    if (norm(d) <= kTinyDir) return point_in_object(a, o, tol);
    auto clip = clip_line_to_object(a, d, o, tol);
    return clip && ranges_overlap(clip->first, clip->second, 0.0, 1.0, tol / norm(d));
}

bool object_hits_ray(const ConvexObject& o, Point2 origin, Vec2 dir, double tol) {
    auto clip = clip_line_to_object(origin, dir, o, tol);
    return clip && clip->second >= -tol / std::max(norm(dir), tol);
}

bool line_hits_object(Point2 anchor, Vec2 dir, const ConvexObject& o, double tol) {
    return clip_line_to_object(anchor, dir, o, tol).has_value();
}

bool object_hits_triangle(const ConvexObject& o, Point2 a, Point2 b, Point2 c, double tol) {
    if (orientation(a, b, c, 0.0) < 0) std::swap(b, c);
    double ar = std::abs(cross(b - a, c - a));
    double scale = std::max({dist(a, b), dist(b, c), dist(c, a)});
    if (ar <= 2.0 * tol * std::max(scale, 1e-300)) {
        // Degenerate triangle: test the covering segment along the longest side.
        if (dist(a, b) >= dist(a, c) && dist(a, b) >= dist(b, c))
            return object_hits_segment(o, a, b, tol) || object_hits_segment(o, a, c, tol) ||
                   object_hits_segment(o, b, c, tol);
        if (dist(a, c) >= dist(b, c))
            return object_hits_segment(o, a, c, tol) || object_hits_segment(o, a, b, tol) ||
                   object_hits_segment(o, b, c, tol);
        return object_hits_segment(o, b, c, tol) || object_hits_segment(o, a, b, tol) ||
               object_hits_segment(o, a, c, tol);
    }
    ConvexPolygon tri{{a, b, c}};
    return intersects(o, tri, tol);
}

ConvexObject transformed(const ConvexObject& o, double angle, Vec2 translate) {
    ConvexObject out = o;
    for (auto& p : out.pts) p = rotated(p, angle) + translate;
    if (o.kind == ObjectKind::ray || o.kind == ObjectKind::line) out.dir = rotated(o.dir, angle);
    return out;
}

Point2 transformed(Point2 p, double angle, Vec2 translate) { return rotated(p, angle) + translate; }

}  // namespace stabhull
