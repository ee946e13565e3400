#include "stabhull/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "stabhull/parallel.hpp"

namespace stabhull::oracle {

namespace {

using Mask = std::uint64_t;

double xprod(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// --- independent object representation: clipped boundary pieces -----------

struct Piece {
    Point2 a;
    Vec2 d;  // finite: piece is a .. a+d
};

struct Obj {
    std::vector<Point2> verts;   // polygon vertices (CCW) or piece endpoints
    std::vector<Piece> pieces;   // boundary, clipped to the working window
    bool has_interior = false;
    bool is_point = false;
    Point2 pt;
};

Obj build_obj(const ConvexObject& o, Point2 lo, Point2 hi) {
    Obj b;
    switch (o.kind) {
        case ObjectKind::point:
            b.is_point = true;
            b.pt = o.pts[0];
            b.verts = {o.pts[0]};
            break;
        case ObjectKind::segment:
            b.verts = o.pts;
            b.pieces.push_back({o.pts[0], o.pts[1] - o.pts[0]});
            break;
        case ObjectKind::ray:
        case ObjectKind::line: {
            // Clip the (half-)line to the window box.
            double t0 = o.kind == ObjectKind::ray ? 0.0 : -kInf;
            double t1 = kInf;
            Point2 a = o.pts[0];
            Vec2 d = o.dir;
            for (int axis = 0; axis < 2; ++axis) {
                double p = axis == 0 ? a.x : a.y;
                double v = axis == 0 ? d.x : d.y;
                double l = axis == 0 ? lo.x : lo.y;
                double h = axis == 0 ? hi.x : hi.y;
                if (std::abs(v) < 1e-15) {
                    if (p < l || p > h) t1 = -kInf;
                } else {
                    double ta = (l - p) / v, tb = (h - p) / v;
                    if (ta > tb) std::swap(ta, tb);
                    t0 = std::max(t0, ta);
                    t1 = std::min(t1, tb);
                }
            }
            if (t0 <= t1) {
                Point2 p0 = a + t0 * d, p1 = a + t1 * d;
                b.verts = {p0, p1};
                b.pieces.push_back({p0, p1 - p0});
            } else {
                // Outside the window entirely; keep a far stub so distances stay big.
                b.verts = {a};
                b.pieces.push_back({a, d});
            }
            break;
        }
        case ObjectKind::polygon: {
            b.has_interior = o.pts.size() >= 3;
            b.verts = o.pts;
            size_t n = o.pts.size();
            for (size_t i = 0; i < n; ++i)
                b.pieces.push_back({o.pts[i], o.pts[(i + 1) % n] - o.pts[i]});
            break;
        }
    }
    return b;
}

double pt_seg_dist2(Point2 p, Point2 a, Vec2 d) {
    double dd = d.x * d.x + d.y * d.y;
    double t = dd < 1e-300 ? 0.0 : std::clamp(((p.x - a.x) * d.x + (p.y - a.y) * d.y) / dd, 0.0, 1.0);
    double ex = p.x - (a.x + t * d.x), ey = p.y - (a.y + t * d.y);
    return ex * ex + ey * ey;
}

double pt_seg_dist(Point2 p, Point2 a, Vec2 d) { return std::sqrt(pt_seg_dist2(p, a, d)); }

bool point_inside(const Obj& o, Point2 p, double tol) {
    if (o.is_point) return std::hypot(p.x - o.pt.x, p.y - o.pt.y) <= tol;
    if (o.has_interior) {
        size_t n = o.verts.size();
        bool pos = false, neg = false;
        for (size_t i = 0; i < n; ++i) {
            Vec2 e = o.verts[(i + 1) % n] - o.verts[i];
            double c = xprod(e, p - o.verts[i]);
            if (c > tol) pos = true;
            if (c < -tol) neg = true;
        }
        if (!(pos && neg)) return true;
    }
    for (const auto& pc : o.pieces)
        if (pt_seg_dist2(p, pc.a, pc.d) <= tol * tol) return true;
    return false;
}

double point_obj_dist(const Obj& o, Point2 p) {
    if (o.is_point) return std::hypot(p.x - o.pt.x, p.y - o.pt.y);
    if (o.has_interior && point_inside(o, p, 0.0)) return 0.0;
    double best = kInf;
    for (const auto& pc : o.pieces) best = std::min(best, pt_seg_dist(p, pc.a, pc.d));
    return best;
}

int seg_side(Point2 a, Point2 b, Point2 p, double tol) {
    double c = xprod(b - a, p - a);
    if (c > tol) return 1;
    if (c < -tol) return -1;
    return 0;
}

bool seg_seg_hit(Point2 a, Point2 b, Point2 c, Point2 d, double tol) {
    // bounding-box early out
    if (std::max(a.x, b.x) + tol < std::min(c.x, d.x)) return false;
    if (std::max(c.x, d.x) + tol < std::min(a.x, b.x)) return false;
    if (std::max(a.y, b.y) + tol < std::min(c.y, d.y)) return false;
    if (std::max(c.y, d.y) + tol < std::min(a.y, b.y)) return false;
    int s1 = seg_side(a, b, c, tol), s2 = seg_side(a, b, d, tol);
    int s3 = seg_side(c, d, a, tol), s4 = seg_side(c, d, b, tol);
    if (s1 != s2 && s3 != s4 && s1 * s2 <= 0 && s3 * s4 <= 0) return true;
    double t2 = tol * tol;
    auto on = [&](Point2 p, Point2 u, Point2 v) { return pt_seg_dist2(p, u, v - u) <= t2; };
    return on(c, a, b) || on(d, a, b) || on(a, c, d) || on(b, c, d);
}

bool hits_segment(const Obj& o, Point2 a, Point2 b, double tol) {
    if (o.is_point) return pt_seg_dist2(o.pt, a, b - a) <= tol * tol;
    if (o.has_interior && (point_inside(o, a, tol) || point_inside(o, b, tol))) return true;
    for (const auto& pc : o.pieces)
        if (seg_seg_hit(a, b, pc.a, pc.a + pc.d, tol)) return true;
    return false;
}

bool hits_triangle(const Obj& o, Point2 p, Point2 q, Point2 r, double tol) {
    if (hits_segment(o, p, q, tol) || hits_segment(o, q, r, tol) || hits_segment(o, p, r, tol))
        return true;
    // degenerate triangles are exactly the union of their edges
    double scale = std::max({std::hypot(q.x - p.x, q.y - p.y), std::hypot(r.x - p.x, r.y - p.y),
                             std::hypot(r.x - q.x, r.y - q.y), 1e-300});
    if (std::abs(xprod(q - p, r - p)) <= 2.0 * tol * scale) return false;
    auto inside_tri = [&](Point2 x) {
        int s1 = seg_side(p, q, x, tol), s2 = seg_side(q, r, x, tol), s3 = seg_side(r, p, x, tol);
        bool pos = s1 > 0 || s2 > 0 || s3 > 0;
        bool neg = s1 < 0 || s2 < 0 || s3 < 0;
        return !(pos && neg);
    };
    for (const auto& v : o.verts)
        if (inside_tri(v)) return true;
    if (o.has_interior) return point_inside(o, p, tol);
    if (o.is_point) return inside_tri(o.pt);
    return false;
}

// clockwise angle from u to v, in [0, 2pi)
double cw(Vec2 u, Vec2 v) {
    double a = std::atan2(xprod(v, u), v.x * u.x + v.y * u.y);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

// Ray from `org` along `dir` (unit), as a long segment for hit tests.
struct LongRay {
    Point2 a, b;
};

bool hits_longseg(const Obj& o, const LongRay& r, double tol) { return hits_segment(o, r.a, r.b, tol); }

struct FirstHitO {
    bool hit = false;
    double t = kInf;
    Vec2 tangent_dir{0.0, 0.0};
};

FirstHitO first_hit(const Obj& o, Point2 org, Vec2 dir, double tol) {
    FirstHitO fh;
    if (o.is_point) {
        Vec2 u = o.pt - org;
        double t = dot(u, dir);
        if (t >= -tol && std::abs(xprod(dir, u)) <= tol) {
            fh.hit = true;
            fh.t = std::max(0.0, t);
            fh.tangent_dir = perp_ccw(dir);
        }
        return fh;
    }
    if (o.has_interior && point_inside(o, org, tol)) {
        fh.hit = true;
        fh.t = 0.0;
        fh.tangent_dir = perp_ccw(dir);  // inside: any direction, never used downstream
        return fh;
    }
    for (const auto& pc : o.pieces) {
        double denom = xprod(dir, pc.d);
        double pl = std::hypot(pc.d.x, pc.d.y);
        if (std::abs(denom) <= 1e-14 * pl) {
            // parallel piece: collinear overlap
            if (std::abs(xprod(dir, pc.a - org)) <= tol) {
                double t0 = dot(pc.a - org, dir);
                double t1 = dot(pc.a + pc.d - org, dir);
                double tmin = std::min(t0, t1), tmax = std::max(t0, t1);
                if (tmax >= -tol) {
                    double t = std::max(0.0, tmin);
                    if (t < fh.t) {
                        fh.hit = true;
                        fh.t = t;
                        fh.tangent_dir = pc.d;
                    }
                }
            }
            continue;
        }
        double t = xprod(pc.a - org, pc.d) / denom;
        double s = xprod(pc.a - org, dir) / denom;
        if (t >= -tol && s >= -tol / pl && s <= 1.0 + tol / pl) {
            double tc = std::max(0.0, t);
            if (tc < fh.t) {
                fh.hit = true;
                fh.t = tc;
                fh.tangent_dir = pc.d;
            }
        }
    }
    return fh;
}

double max_reach_y(const Obj& o) {
    double y = -kInf;
    for (const auto& v : o.verts) y = std::max(y, v.y);
    for (const auto& pc : o.pieces) y = std::max({y, pc.a.y, pc.a.y + pc.d.y});
    if (o.is_point) y = std::max(y, o.pt.y);
    return y;
}

// shortest a -> (point on piece) -> b
double detour_piece(Point2 a, Point2 b, const Piece& pc) {
    double en = std::hypot(pc.d.x, pc.d.y);
    if (en < 1e-300) {
        return std::hypot(a.x - pc.a.x, a.y - pc.a.y) + std::hypot(b.x - pc.a.x, b.y - pc.a.y);
    }
    Vec2 n{-pc.d.y / en, pc.d.x / en};
    double da = dot(a - pc.a, n), db = dot(b - pc.a, n);
    double s;
    if (da * db <= 0.0) {
        double denom = da - db;
        if (std::abs(denom) < 1e-300) {
            s = dot(a - pc.a, pc.d) / (en * en);
        } else {
            Point2 q = a + (da / denom) * (b - a);
            s = dot(q - pc.a, pc.d) / (en * en);
        }
    } else {
        Point2 br = b - 2.0 * db * n;
        Point2 q = a + (da / (da + db)) * (br - a);
        s = dot(q - pc.a, pc.d) / (en * en);
    }
    s = std::clamp(s, 0.0, 1.0);
    Point2 q = pc.a + s * pc.d;
    return std::hypot(a.x - q.x, a.y - q.y) + std::hypot(b.x - q.x, b.y - q.y);
}

double detour(const Obj& o, Point2 a, Point2 b, double tol) {
    if (o.is_point)
        return std::hypot(a.x - o.pt.x, a.y - o.pt.y) + std::hypot(b.x - o.pt.x, b.y - o.pt.y);
    if (o.has_interior && (point_inside(o, a, tol) || point_inside(o, b, tol) ||
                           hits_segment(o, a, b, tol)))
        return std::hypot(a.x - b.x, a.y - b.y);
    double best = kInf;
    for (const auto& pc : o.pieces) best = std::min(best, detour_piece(a, b, pc));
    return best;
}

// min over q in o of area of triangle (a, v, q)
double min_tri_area(const Obj& o, Point2 a, Point2 v) {
    Vec2 e = v - a;
    auto val = [&](Point2 q) { return 0.5 * std::abs(xprod(e, q - a)); };
    if (o.is_point) return val(o.pt);
    if (o.has_interior && point_inside(o, a, 0.0)) return 0.0;
    double best = kInf;
    for (const auto& pc : o.pieces) {
        // linear in the piece parameter: min at an endpoint or a zero crossing
        double f0 = xprod(e, pc.a - a);
        double f1 = xprod(e, pc.a + pc.d - a);
        if (f0 * f1 <= 0.0) return 0.0;
        best = std::min({best, 0.5 * std::abs(f0), 0.5 * std::abs(f1)});
    }
    return best;
}

// --- independent convex hull (monotone chain) ------------------------------

std::vector<Point2> hull_of(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point2> h;
    auto build = [&](auto begin, auto end) {
        size_t start = h.size();
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= start + 2 &&
                   xprod(h.back() - h[h.size() - 2], *it - h[h.size() - 2]) <= 0.0)
                h.pop_back();
            h.push_back(*it);
        }
        h.pop_back();
    };
    build(pts.begin(), pts.end());
    build(pts.rbegin(), pts.rend());
    if (h.size() < 3) return {pts.front(), pts.back()};
    return h;
}

double poly_perimeter(const std::vector<Point2>& v) {
    if (v.size() < 2) return 0.0;
    if (v.size() == 2) return 2.0 * std::hypot(v[0].x - v[1].x, v[0].y - v[1].y);
    double p = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        Point2 a = v[i], b = v[(i + 1) % v.size()];
        p += std::hypot(a.x - b.x, a.y - b.y);
    }
    return p;
}

double poly_area(const std::vector<Point2>& v) {
    if (v.size() < 3) return 0.0;
    double a = 0.0;
    for (size_t i = 0; i < v.size(); ++i) a += xprod(v[i], v[(i + 1) % v.size()]);
    return 0.5 * std::abs(a);
}

// --- the angular-order DP over one anchor ----------------------------------

struct AnchorDp {
    double value = kInf;
    std::vector<Point2> chain;  // anchor + vertices
};

AnchorDp anchor_dp(Point2 anchor, const std::vector<Point2>& cand, const std::vector<Obj>& objs,
                   bool area_obj, double bound, double tol) {
    AnchorDp out;
    size_t n = objs.size();
    Mask full = n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);

    // order by clockwise angle from the leftward ray, ties by distance
    struct V {
        Point2 p;
        double phi, r;
    };
    std::vector<V> vs;
    for (const auto& p : cand) {
        if (p.y < anchor.y - tol) continue;
        if (std::abs(p.y - anchor.y) <= tol && p.x <= anchor.x + tol) continue;
        vs.push_back({p, cw({-1.0, 0.0}, p - anchor), std::hypot(p.x - anchor.x, p.y - anchor.y)});
    }
    std::sort(vs.begin(), vs.end(), [](const V& a, const V& b) {
        if (a.phi != b.phi) return a.phi < b.phi;
        if (a.r != b.r) return a.r < b.r;
        return a.p.x < b.p.x || (a.p.x == b.p.x && a.p.y < b.p.y);
    });
    int m = static_cast<int>(vs.size());
    if (m == 0) return out;
    int sent = m;
    double far = 0.0;
    for (const auto& v : vs) far = std::max(far, v.r);
    double raylen = 4.0 * far + 1.0;

    struct MaskRow {
        Mask wedge = 0, ray = 0, seg = 0, star = 0;
        std::vector<Vec2> tan;
    };
    std::vector<MaskRow> rows(static_cast<size_t>(m) + 1);
    for (int w = 0; w <= sent; ++w) {
        MaskRow& row = rows[static_cast<size_t>(w)];
        row.tan.assign(n, Vec2{0.0, 0.0});
        bool is_sent = w == sent;
        Point2 wp = is_sent ? anchor : vs[static_cast<size_t>(w)].p;
        Vec2 rdir = is_sent ? Vec2{1.0, 0.0} : normalized(wp - anchor);
        double phi = is_sent ? kPi : vs[static_cast<size_t>(w)].phi;
        Point2 ray_end = anchor + raylen * rdir;
        Point2 left_end = anchor + Point2{-raylen, 0.0};
        Point2 cwi_end = anchor + raylen * rotated(Vec2{-1.0, 0.0}, -phi);
        for (size_t i = 0; i < n; ++i) {
            Mask bit = Mask{1} << i;
            const Obj& o = objs[i];
            // wedge: endpoint inside, or boundary crossing either bounding ray
            bool in_wedge = false;
            for (const auto& vv : o.verts) {
                Vec2 u = vv - anchor;
                double r = std::hypot(u.x, u.y);
                if (r <= tol || cw({-1.0, 0.0}, u) <= phi + tol / std::max(r, tol)) {
                    in_wedge = true;
                    break;
                }
            }
            if (!in_wedge && hits_longseg(o, {anchor, left_end}, tol)) in_wedge = true;
            if (!in_wedge && hits_longseg(o, {anchor, cwi_end}, tol)) in_wedge = true;
            if (!in_wedge && o.has_interior && point_inside(o, anchor, tol)) in_wedge = true;
            if (in_wedge) row.wedge |= bit;
            if (hits_longseg(o, {anchor, ray_end}, tol)) row.ray |= bit;
            bool seg_hit = is_sent ? point_inside(o, anchor, tol) : hits_segment(o, anchor, wp, tol);
            if (seg_hit) row.seg |= bit;
            FirstHitO fh = first_hit(o, wp, rdir, tol);
            if (fh.hit) {
                row.star |= bit;
                row.tan[i] = fh.tangent_dir;
            }
        }
    }

    // Tangent anchor points are needed for condition (iii).
    std::vector<std::vector<Point2>> tan_pt(static_cast<size_t>(m) + 1,
                                            std::vector<Point2>(n));
    for (int w = 0; w <= sent; ++w) {
        bool is_sent = w == sent;
        Point2 wp = is_sent ? anchor : vs[static_cast<size_t>(w)].p;
        Vec2 rdir = is_sent ? Vec2{1.0, 0.0} : normalized(wp - anchor);
        for (size_t i = 0; i < n; ++i) {
            if (!(rows[static_cast<size_t>(w)].star & (Mask{1} << i))) continue;
            FirstHitO fh = first_hit(objs[i], wp, rdir, tol);
            tan_pt[static_cast<size_t>(w)][i] = wp + fh.t * rdir;
        }
    }

    auto meets_backray = [&](int w, size_t i, Point2 up) {
        bool is_sent = w == sent;
        Point2 wp = is_sent ? anchor : vs[static_cast<size_t>(w)].p;
        Vec2 ldir = rows[static_cast<size_t>(w)].tan[i];
        Point2 lpt = tan_pt[static_cast<size_t>(w)][i];
        Vec2 rdir = up - wp;
        double rn = std::hypot(rdir.x, rdir.y);
        if (rn <= 1e-15) return true;
        double denom = xprod(ldir, rdir);
        if (std::abs(denom) <= 1e-14 * std::hypot(ldir.x, ldir.y) * rn)
            return std::abs(xprod(ldir, wp - lpt)) <= tol * std::hypot(ldir.x, ldir.y);
        double t = xprod(ldir, lpt - wp) / denom;
        return t >= -tol / rn;
    };

    auto coverage = [&](int v, int w) {
        const MaskRow& row = rows[static_cast<size_t>(w)];
        Mask out_mask = (row.wedge & ~row.ray) | row.seg;
        Mask cand_mask = row.star & ~row.seg;
        Point2 up = v < 0 ? anchor : vs[static_cast<size_t>(v)].p;
        for (size_t i = 0; i < n; ++i)
            if (cand_mask & (Mask{1} << i))
                if (meets_backray(w, i, up)) out_mask |= Mask{1} << i;
        return out_mask;
    };

    std::vector<double> tbl(static_cast<size_t>(m + 1) * static_cast<size_t>(m), kInf);
    std::vector<int> prd(static_cast<size_t>(m + 1) * static_cast<size_t>(m), -2);
    std::vector<double> base(static_cast<size_t>(m) + 1, kInf);
    auto at = [&](int v, int w) -> double& {
        return tbl[static_cast<size_t>(w) * static_cast<size_t>(m) + static_cast<size_t>(v)];
    };
    auto pat = [&](int v, int w) -> int& {
        return prd[static_cast<size_t>(w) * static_cast<size_t>(m) + static_cast<size_t>(v)];
    };
    // finite predecessors of each column, ascending by value: the first one
    // passing the geometric checks wins
    std::vector<std::vector<std::pair<double, int>>> col_sorted(static_cast<size_t>(m));
    std::vector<std::uint8_t> col_ready(static_cast<size_t>(m), 0);
    auto sorted_col = [&](int v) -> const std::vector<std::pair<double, int>>& {
        if (!col_ready[static_cast<size_t>(v)]) {
            auto& list = col_sorted[static_cast<size_t>(v)];
            for (int u = 0; u < v; ++u) {
                double c = at(u, v);
                if (c < kInf) list.emplace_back(c, u);
            }
            std::sort(list.begin(), list.end());
            col_ready[static_cast<size_t>(v)] = 1;
        }
        return col_sorted[static_cast<size_t>(v)];
    };

    double best_val = kInf;
    int best_v = -2;
    for (int w = 0; w <= sent; ++w) {
        bool is_sent = w == sent;
        Point2 wp = is_sent ? anchor : vs[static_cast<size_t>(w)].p;
        const MaskRow& row = rows[static_cast<size_t>(w)];
        {
            Mask cov = coverage(-1, w);
            if ((cov & ~row.seg) == 0) {
                double v0 = area_obj ? 0.0 : std::hypot(wp.x - anchor.x, wp.y - anchor.y);
                if (v0 < bound) base[static_cast<size_t>(w)] = v0;
            }
        }
        for (int v = 0; v < (is_sent ? m : w); ++v) {
            if (!is_sent && vs[static_cast<size_t>(v)].phi >= vs[static_cast<size_t>(w)].phi - 1e-14)
                continue;
            bool has_base = base[static_cast<size_t>(v)] < kInf;
            const auto& preds = sorted_col(v);
            if (!has_base && preds.empty()) continue;
            Point2 vp = vs[static_cast<size_t>(v)].p;
            double ec = area_obj ? 0.5 * std::abs(xprod(vp - anchor, wp - anchor))
                                 : std::hypot(vp.x - wp.x, vp.y - wp.y);
            double lb = area_obj ? ec
                                 : vs[static_cast<size_t>(v)].r + ec +
                                       (is_sent ? 0.0 : vs[static_cast<size_t>(w)].r);
            if (lb >= bound) continue;
            Mask cov = coverage(v, w);
            Mask tri = 0;
            for (size_t i = 0; i < n; ++i)
                if (cov & (Mask{1} << i))
                    if (hits_triangle(objs[i], anchor, vp, wp, tol)) tri |= Mask{1} << i;
            Mask need = cov & ~tri;
            const MaskRow& vrow = rows[static_cast<size_t>(v)];
            Mask vbase = (vrow.wedge & ~vrow.ray) | vrow.seg;
            Mask req = need & ~vbase;
            if (req & ~(vrow.star & ~vrow.seg)) continue;

            double bu = kInf;
            int bui = -2;
            // the closing transition back to the anchor may be collinear (the
            // doubled-segment polygon), so the turn test is waived there
            if (has_base && (is_sent || xprod(wp - vp, anchor - vp) < 0.0)) {
                bool ok = true;
                for (size_t i = 0; i < n && ok; ++i)
                    if (req & (Mask{1} << i)) ok = meets_backray(v, i, anchor);
                if (ok) {
                    bu = base[static_cast<size_t>(v)];
                    bui = -1;
                }
            }
            for (const auto& [c, u] : preds) {
                if (c >= bu) break;  // ascending order: nothing better follows
                if (vs[static_cast<size_t>(u)].phi >= vs[static_cast<size_t>(v)].phi - 1e-14)
                    continue;
                Point2 up = vs[static_cast<size_t>(u)].p;
                if (xprod(wp - vp, up - vp) >= 0.0) continue;
                bool ok = true;
                for (size_t i = 0; i < n && ok; ++i)
                    if (req & (Mask{1} << i)) ok = meets_backray(v, i, up);
                if (!ok) continue;
                bu = c;
                bui = u;
                break;
            }
            if (bui == -2) continue;
            double val = ec + bu;
            double closing = (!area_obj && !is_sent) ? vs[static_cast<size_t>(w)].r : 0.0;
            if (val + closing >= bound) continue;
            at(v, w) = val;
            pat(v, w) = bui;
            if (is_sent && cov == full && val < best_val) {
                best_val = val;
                best_v = v;
            }
        }
    }
    if (best_v == -2) return out;
    out.value = best_val;
    out.chain.push_back(anchor);
    std::vector<int> rv;
    int v = best_v, w = sent;
    while (v >= 0) {
        rv.push_back(v);
        int u = pat(v, w);
        w = v;
        v = u;
    }
    for (auto it = rv.rbegin(); it != rv.rend(); ++it)
        out.chain.push_back(vs[static_cast<size_t>(*it)].p);
    return out;
}

// --- multigrid driver -------------------------------------------------------

struct Box {
    Point2 lo, hi;
    Point2 center() const { return {0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)}; }
    double side() const { return std::max(hi.x - lo.x, hi.y - lo.y); }
};

Box working_box(const std::vector<ConvexObject>& objects) {
    double minx = kInf, maxx = -kInf, miny = kInf, maxy = -kInf;
    auto feed = [&](Point2 p) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    };
    for (const auto& o : objects)
        for (const auto& p : o.pts) feed(p);
    if (minx > maxx) feed({0.0, 0.0});
    double side = std::max({maxx - minx, maxy - miny, 1e-3});
    Point2 c{0.5 * (minx + maxx), 0.5 * (miny + maxy)};
    double h = 1.5 * side;  // inflated 3x
    return {{c.x - h, c.y - h}, {c.x + h, c.y + h}};
}

std::vector<Point2> closest_witnesses(const std::vector<Obj>& objs, Point2 c) {
    std::vector<Point2> w;
    for (const auto& o : objs) {
        if (o.is_point) {
            w.push_back(o.pt);
            continue;
        }
        if (o.has_interior && point_inside(o, c, 0.0)) {
            w.push_back(c);
            continue;
        }
        double best = kInf;
        Point2 bp = o.verts.front();
        for (const auto& pc : o.pieces) {
            double dd = dot(pc.d, pc.d);
            double t = dd < 1e-300 ? 0.0 : std::clamp(dot(c - pc.a, pc.d) / dd, 0.0, 1.0);
            Point2 q = pc.a + t * pc.d;
            double dq = std::hypot(c.x - q.x, c.y - q.y);
            if (dq < best) {
                best = dq;
                bp = q;
            }
        }
        w.push_back(bp);
    }
    return w;
}

struct Lattice {
    Point2 origin;
    double cell = 0.0;
    int nx = 0, ny = 0;

    Point2 at(int i, int j) const { return origin + Point2{cell * i, cell * j}; }
    size_t count() const { return static_cast<size_t>(nx + 1) * static_cast<size_t>(ny + 1); }
};

struct PassOutcome {
    double best;
    std::vector<Point2> best_poly;
    std::vector<std::uint8_t> good;  // per lattice point: may host a better fine anchor
};

// One resolution level. classify_slack is the hull-of-touched-cells margin
// (8 * coarse cell) that keeps refinement sound; dp_slack is the pruning slack
// of the DP itself (fat on the first pass to establish the incumbent, tight
// afterwards since only improvements matter).
PassOutcome run_pass(const std::vector<Obj>& objs, const Lattice& lat, bool area_obj,
                     double incumbent, const std::vector<Point2>& incumbent_poly,
                     double classify_slack, double dp_slack,
                     const std::vector<std::uint8_t>* prev_good, const Lattice* prev_lat,
                     int threads, double tol) {
    PassOutcome out;
    out.best = incumbent;
    out.best_poly = incumbent_poly;
    out.good.assign(lat.count(), 0);
    double bound_classify = incumbent + classify_slack + 1e-12;
    double bound_dp = incumbent + dp_slack + 1e-12;

    std::vector<Point2> pts;
    pts.reserve(lat.count());
    for (int j = 0; j <= lat.ny; ++j)
        for (int i = 0; i <= lat.nx; ++i) pts.push_back(lat.at(i, j));

    std::vector<double> maxy(objs.size());
    for (size_t i = 0; i < objs.size(); ++i) maxy[i] = max_reach_y(objs[i]);

    // Per lattice point: the largest distance to any object. 2*maxdist lower
    // bounds the perimeter of any polygon through the point.
    std::vector<double> maxdist(pts.size(), 0.0);
    std::vector<std::uint8_t> yok(pts.size(), 1);
    parallel_for(lat.ny + 1, threads, [&](int j) {
        for (int i = 0; i <= lat.nx; ++i) {
            size_t id = static_cast<size_t>(j) * (lat.nx + 1) + static_cast<size_t>(i);
            double d = 0.0;
            for (const auto& o : objs) d = std::max(d, point_obj_dist(o, pts[id]));
            maxdist[id] = d;
            for (size_t oi = 0; oi < objs.size(); ++oi)
                if (maxy[oi] < pts[id].y - tol) yok[id] = 0;
        }
    });

    std::vector<int> anchors;
    for (size_t id = 0; id < pts.size(); ++id) {
        if (!yok[id]) continue;
        if (!area_obj && 2.0 * maxdist[id] > bound_classify + 2.0 * lat.cell) continue;
        if (prev_good) {
            bool near = false;
            Point2 p = pts[id];
            int pi = static_cast<int>(std::floor((p.x - prev_lat->origin.x) / prev_lat->cell));
            int pj = static_cast<int>(std::floor((p.y - prev_lat->origin.y) / prev_lat->cell));
            for (int dj = -2; dj <= 3 && !near; ++dj)
                for (int di = -2; di <= 3 && !near; ++di) {
                    int qi = pi + di, qj = pj + dj;
                    if (qi < 0 || qj < 0 || qi > prev_lat->nx || qj > prev_lat->ny) continue;
                    if ((*prev_good)[static_cast<size_t>(qj) * (prev_lat->nx + 1) +
                                     static_cast<size_t>(qi)])
                        near = true;
                }
            if (!near) continue;
        }
        anchors.push_back(static_cast<int>(id));
    }

    std::vector<AnchorDp> results(anchors.size());
    std::vector<int> cand_counts(anchors.size(), 0);
    std::vector<double> collect_ms(anchors.size(), 0.0), dp_ms(anchors.size(), 0.0);
    parallel_for(static_cast<int>(anchors.size()), threads, [&](int t) {
        auto t0 = std::chrono::steady_clock::now();
        size_t aid = static_cast<size_t>(anchors[static_cast<size_t>(t)]);
        Point2 anchor = pts[aid];
        std::vector<Point2> cand;
        if (!area_obj) {
            double radius = 0.5 * bound_dp + lat.cell;
            int ai = static_cast<int>(aid) % (lat.nx + 1);
            int aj = static_cast<int>(aid) / (lat.nx + 1);
            int r = static_cast<int>(std::ceil(radius / lat.cell)) + 1;
            for (int j = aj; j <= std::min(lat.ny, aj + r); ++j)
                for (int i = std::max(0, ai - r); i <= std::min(lat.nx, ai + r); ++i) {
                    size_t id = static_cast<size_t>(j) * (lat.nx + 1) + static_cast<size_t>(i);
                    Point2 p = pts[id];
                    if (p.y < anchor.y - tol) continue;
                    if (2.0 * maxdist[id] > bound_dp + 2.0 * lat.cell) continue;
                    double base = std::hypot(p.x - anchor.x, p.y - anchor.y);
                    if (base > radius) continue;
                    bool ok = true;
                    for (const auto& o : objs)
                        if (base + detour(o, p, anchor, tol) > bound_dp) {
                            ok = false;
                            break;
                        }
                    if (ok) cand.push_back(p);
                }
        } else {
            for (size_t id = 0; id < pts.size(); ++id) {
                Point2 p = pts[id];
                if (p.y < anchor.y - tol) continue;
                bool ok = true;
                for (const auto& o : objs)
                    if (min_tri_area(o, anchor, p) > bound_dp) {
                        ok = false;
                        break;
                    }
                if (ok) cand.push_back(p);
            }
        }
        cand_counts[static_cast<size_t>(t)] = static_cast<int>(cand.size());
        auto t1 = std::chrono::steady_clock::now();
        collect_ms[static_cast<size_t>(t)] = std::chrono::duration<double>(t1 - t0).count() * 1e3;
        results[static_cast<size_t>(t)] = anchor_dp(anchor, cand, objs, area_obj, bound_dp, tol);
        dp_ms[static_cast<size_t>(t)] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count() * 1e3;
    });
    if (std::getenv("STABHULL_ORACLE_TRACE")) {
        long long total = 0;
        int mx = 0;
        double col = 0.0, dpt = 0.0;
        for (size_t t = 0; t < anchors.size(); ++t) {
            total += cand_counts[t];
            mx = std::max(mx, cand_counts[t]);
            col += collect_ms[t];
            dpt += dp_ms[t];
        }
        std::fprintf(stderr,
                     "pass n=%d anchors=%zu avg_cand=%.1f max_cand=%d bound=%.6g collect=%.0fms "
                     "dp=%.0fms\n",
                     lat.nx, anchors.size(),
                     anchors.empty() ? 0.0 : double(total) / double(anchors.size()), mx, bound_dp,
                     col, dpt);
    }

    for (size_t t = 0; t < anchors.size(); ++t) {
        if (results[t].value < out.best) {
            out.best = results[t].value;
            out.best_poly = results[t].chain;
        }
    }
    // Refinement candidates: the admissible anchors whose cheap lower bound
    // still allows a polygon within classify_slack of the updated incumbent.
    for (size_t t = 0; t < anchors.size(); ++t) {
        size_t id = static_cast<size_t>(anchors[t]);
        if (area_obj || 2.0 * maxdist[id] <= out.best + classify_slack + 2.0 * lat.cell)
            out.good[id] = 1;
    }
    return out;
}

OracleResult run_grid_oracle(const std::vector<ConvexObject>& objects, Resolution res, int threads,
                             bool area_obj) {
    if (objects.empty()) throw std::invalid_argument("oracle: empty input");
    if (res.grid_n < 4) throw std::invalid_argument("oracle: grid_n >= 4 required");
    Box box = working_box(objects);
    double side = box.side();
    Point2 origin = box.center() + Point2{-0.5 * side, -0.5 * side};
    double tol = 1e-9;

    std::vector<Obj> objs;
    for (const auto& o : objects)
        objs.push_back(build_obj(o, origin, origin + Point2{side, side}));

    // Initial incumbent: hulls of per-object closest points over a center grid.
    double best = kInf;
    std::vector<Point2> best_poly;
    for (int cy = 0; cy <= 6; ++cy)
        for (int cx = 0; cx <= 6; ++cx) {
            Point2 c = origin + Point2{side * cx / 6.0, side * cy / 6.0};
            auto w = closest_witnesses(objs, c);
            auto h = hull_of(w);
            double v = area_obj ? poly_area(h) : poly_perimeter(h);
            if (v < best) {
                best = v;
                best_poly = h;
            }
        }

    double final_cell = side / res.grid_n;

    if (!area_obj) {
        // Full-box multigrid with value-sound anchor refinement.
        std::vector<int> ladder{res.grid_n};
        while (ladder.front() > 48 && ladder.front() % 2 == 0)
            ladder.insert(ladder.begin(), ladder.front() / 2);
        Lattice prev_lat;
        std::vector<std::uint8_t> prev_good;
        for (size_t li = 0; li < ladder.size(); ++li) {
            int gn = ladder[li];
            Lattice lat{origin, side / gn, gn, gn};
            double classify_slack = 8.0 * lat.cell;
            double dp_slack = li == 0 ? classify_slack : 1e-9 * (1.0 + best);
            PassOutcome po =
                run_pass(objs, lat, false, best, best_poly, classify_slack, dp_slack,
                         li == 0 ? nullptr : &prev_good, li == 0 ? nullptr : &prev_lat, threads,
                         tol);
            best = po.best;
            best_poly = po.best_poly;
            prev_good = std::move(po.good);
            prev_lat = lat;
        }
    } else {
        // Area: one coarse exhaustive pass, then windowed refinement around the
        // winner (heuristic localization; see header notes).
        int coarse = std::min(24, res.grid_n);
        Lattice lat{origin, side / coarse, coarse, coarse};
        double peri_ref = poly_perimeter(best_poly);
        double slack = 2.0 * std::sqrt(2.0) * lat.cell * peri_ref + 2.0 * kPi * lat.cell * lat.cell;
        PassOutcome po = run_pass(objs, lat, true, best, best_poly, slack, slack, nullptr,
                                  nullptr, threads, tol);
        best = po.best;
        best_poly = po.best_poly;
        double cell = lat.cell;
        while (cell > final_cell * 1.0001 && !best_poly.empty()) {
            double minx = kInf, maxx = -kInf, miny = kInf, mxy = -kInf;
            for (const auto& p : best_poly) {
                minx = std::min(minx, p.x);
                maxx = std::max(maxx, p.x);
                miny = std::min(miny, p.y);
                mxy = std::max(mxy, p.y);
            }
            double margin = 4.0 * cell;
            double w = std::max(maxx - minx, mxy - miny) + 2.0 * margin;
            double next_cell = std::max(final_cell, cell / 3.0);
            int cellsx = std::max(8, static_cast<int>(std::ceil(w / next_cell)));
            if (cellsx > 72) {
                cellsx = 72;
                next_cell = w / cellsx;
            }
            Lattice win{{0.5 * (minx + maxx) - 0.5 * w, 0.5 * (miny + mxy) - 0.5 * w}, next_cell,
                        cellsx, cellsx};
            peri_ref = poly_perimeter(best_poly);
            double s2 = 2.0 * std::sqrt(2.0) * win.cell * peri_ref + 2.0 * kPi * win.cell * win.cell;
            PassOutcome p2 = run_pass(objs, win, true, best, best_poly, s2, s2, nullptr, nullptr,
                                      threads, tol);
            best = p2.best;
            best_poly = p2.best_poly;
            if (std::abs(next_cell - final_cell) < 1e-15 || next_cell <= final_cell) break;
            cell = next_cell;
        }
    }

    OracleResult r;
    r.value = best;
    r.polygon = hull_of(best_poly);
    r.slack = area_obj ? (2.0 * std::sqrt(2.0) * final_cell * poly_perimeter(r.polygon) +
                          2.0 * kPi * final_cell * final_cell)
                       : 8.0 * final_cell;
    return r;
}

}  // namespace

OracleResult oracle_perimeter(const std::vector<ConvexObject>& objects, Resolution res,
                              int threads) {
    return run_grid_oracle(objects, res, threads, false);
}

OracleResult oracle_area(const std::vector<ConvexObject>& objects, Resolution res, int threads) {
    return run_grid_oracle(objects, res, threads, true);
}

TourOracleResult oracle_tour(Point2 s, const std::vector<TourSet>& ordered_sets, Point2 t,
                             Resolution res) {
    TourOracleResult out;
    double minx = std::min(s.x, t.x), maxx = std::max(s.x, t.x);
    double miny = std::min(s.y, t.y), maxy = std::max(s.y, t.y);
    auto feed = [&](Point2 p) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    };
    for (const auto& set : ordered_sets) {
        if (set.is_halfplane) {
            // projection of s and t onto the boundary line
            for (Point2 p : {s, t}) feed(p - set.hp.signed_dist(p) * set.hp.normal);
        } else {
            for (const auto& p : set.obj.pts) feed(p);
        }
    }
    double side = std::max({maxx - minx, maxy - miny, 1e-3}) * 3.0;
    Point2 c{0.5 * (minx + maxx), 0.5 * (miny + maxy)};
    Point2 origin{c.x - 0.5 * side, c.y - 0.5 * side};
    int gn = res.grid_n;
    double cell = side / gn;
    out.cell = cell;

    std::vector<Obj> objs;
    for (const auto& set : ordered_sets)
        if (!set.is_halfplane) objs.push_back(build_obj(set.obj, origin, origin + Point2{side, side}));

    size_t oi = 0;
    std::vector<std::pair<Point2, double>> layer;  // point, best distance so far
    layer.emplace_back(s, 0.0);
    for (const auto& set : ordered_sets) {
        std::vector<Point2> members;
        for (int j = 0; j <= gn; ++j)
            for (int i = 0; i <= gn; ++i) {
                Point2 p = origin + Point2{cell * i, cell * j};
                bool in = set.is_halfplane ? set.hp.signed_dist(p) >= -0.5 * cell
                                           : point_obj_dist(objs[oi], p) <= 0.5 * cell;
                if (in) members.push_back(p);
            }
        if (!set.is_halfplane) ++oi;
        if (members.empty()) return out;  // set unreachable at this resolution
        std::vector<std::pair<Point2, double>> next;
        next.reserve(members.size());
        for (const auto& q : members) {
            double bestd = kInf;
            for (const auto& [p, d] : layer)
                bestd = std::min(bestd, d + std::hypot(p.x - q.x, p.y - q.y));
            next.emplace_back(q, bestd);
        }
        layer = std::move(next);
    }
    double bestd = kInf;
    for (const auto& [p, d] : layer) bestd = std::min(bestd, d + std::hypot(p.x - t.x, p.y - t.y));
    out.value = bestd;
    return out;
}

}  // namespace stabhull::oracle
