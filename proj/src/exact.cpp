#include "stabhull/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "stabhull/parallel.hpp"

namespace stabhull {

namespace {

constexpr double kYTol = 1e-7;   // proximity at which a vertex counts as an endpoint
constexpr double kAngTol = 1e-9;

TourOptions chain_tour_options(double tol) {
    TourOptions t;
    t.tol = tol;
    t.restarts = 0;
    return t;
}

ChainResult validated_chain(Point2 u, Point2 v, const TourPath& path,
                            const std::vector<ConvexObject>& all_objs,
                            std::span<const Point2> forbidden, double tol) {
    ChainResult out;
    if (!path.converged) throw SolverError("tour solver did not converge");
    std::vector<Point2> pts = path.waypoints;
    pts.push_back(u);
    pts.push_back(v);
    ConvexPolygon hull = convex_hull(pts);
    double closing = dist(u, v);
    double scale = 1.0;
    for (const auto& p : hull.v) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    // A convex chain closed with uv has hull perimeter equal to chain length
    // plus the closing edge; a shortfall means the tour was not convex.
    if (std::abs(hull.perimeter() - (path.length + closing)) > 1e-6 * scale) return out;
    double feas_tol = std::max(tol, 1e-7);
    for (const auto& o : all_objs)
        if (!intersects(o, hull, feas_tol)) return out;
    for (const auto& p : hull.v) {
        if (dist(p, u) <= kYTol * scale || dist(p, v) <= kYTol * scale) continue;
        for (const auto& y : forbidden)
            if (dist(p, y) <= kYTol * scale) return out;
    }
    out.value = path.length;
    out.polygon = std::move(hull);
    return out;
}

}  // namespace

ChainResult subroutine_II(Point2 u, Point2 v, const std::vector<ConvexObject>& objs,
                          std::span<const Point2> forbidden, double tol) {
    bool closed = dist(u, v) <= tol;
    std::vector<const ConvexObject*> rest;
    for (const auto& o : objs) {
        bool covered = closed ? point_in_object(u, o, tol) : object_hits_segment(o, u, v, tol);
        if (!covered) rest.push_back(&o);
    }
    if (rest.empty()) {
        ChainResult r;
        r.value = closed ? 0.0 : dist(u, v);
        r.polygon = closed ? ConvexPolygon{{u}} : ConvexPolygon{{u, v}};
        return r;
    }

    std::vector<std::pair<HalfPlane, int>> hps;
    for (size_t i = 0; i < rest.size(); ++i)
        if (auto hp = halfplane_of(*rest[i], u, v, tol)) hps.emplace_back(*hp, static_cast<int>(i));

    Vec2 base = closed ? Vec2{0.0, -1.0} : -1.0 * perp_ccw(normalized(v - u));
    OrderedHalfPlanes sorted = order_halfplanes(hps, base);

    size_t shifts = closed ? std::max<size_t>(1, sorted.entries.size()) : 1;
    ChainResult best;
    TourOptions topts = chain_tour_options(tol);
    for (size_t s = 0; s < shifts; ++s) {
        OrderedHalfPlanes cur;
        cur.entries.reserve(sorted.entries.size());
        for (size_t i = 0; i < sorted.entries.size(); ++i)
            cur.entries.push_back(sorted.entries[(i + s) % sorted.entries.size()]);
        TourPath path = tour(u, cur, v, topts);
        ChainResult cand = validated_chain(u, v, path, objs, forbidden, tol);
        if (cand.value < best.value) best = std::move(cand);
    }
    return best;
}

ChainResult subroutine_I(const std::vector<ConvexObject>& objs, const SolverConfig& cfg) {
    std::vector<Line2> lines;
    for (const auto& o : objs) {
        if (o.kind == ObjectKind::segment) lines.push_back({o.pts[0], o.pts[1] - o.pts[0]});
        if (o.kind == ObjectKind::ray || o.kind == ObjectKind::line)
            lines.push_back({o.pts[0], o.dir});
    }
    std::vector<Point2> y;
    for (const auto& o : objs)
        for (const auto& p : object_vertices(o)) y.push_back(p);

    Point2 centroid{0.0, 0.0};
    double diam = 1.0;
    if (!y.empty()) {
        for (const auto& p : y) centroid = centroid + p;
        centroid = (1.0 / static_cast<double>(y.size())) * centroid;
        for (const auto& p : y)
            for (const auto& q : y) diam = std::max(diam, dist(p, q));
    }

    std::vector<Point2> cands;
    auto push = [&](Point2 p) {
        if (!finite(p)) return;
        for (const auto& yy : y)
            if (dist(p, yy) <= kYTol) return;
        for (const auto& c : cands)
            if (dist(p, c) <= 1e-9) return;
        cands.push_back(p);
    };
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j) {
            double denom = cross(lines[i].dir, lines[j].dir);
            if (std::abs(denom) <= 1e-12 * norm(lines[i].dir) * norm(lines[j].dir)) continue;
            double t = cross(lines[j].anchor - lines[i].anchor, lines[j].dir) / denom;
            push(lines[i].anchor + t * lines[i].dir);
        }
    for (const auto& e : y)
        for (const auto& l : lines) {
            double t = dot(e - l.anchor, l.dir) / norm2(l.dir);
            push(l.anchor + t * l.dir);
        }
    for (const auto& l : lines) {
        Vec2 d = normalized(l.dir);
        double t0 = dot(centroid - l.anchor, d);
        int half = cfg.subI_samples_per_line / 2;
        for (int k = -half; k <= half; ++k)
            push(l.anchor + (t0 + static_cast<double>(k) * diam / std::max(1, half)) * d);
    }

    ChainResult best;
    for (const auto& c : cands) {
        ChainResult r = subroutine_II(c, c, objs, y, cfg.tol);
        if (r.value < best.value) best = std::move(r);
    }
    return best;
}

PrefixContext psi_prefix_sets(Point2 w, Point2 p_bot, const std::vector<ConvexObject>& objs,
                              double tol) {
    if (dist(w, p_bot) <= tol) throw std::invalid_argument("psi_prefix_sets: w == p_bot");
    PrefixContext ctx;
    ctx.w = w;
    Vec2 dir = normalized(w - p_bot);
    std::vector<double> angles(objs.size(), -1.0);
    for (size_t i = 0; i < objs.size(); ++i) {
        auto hit = first_hit_tangent(w, dir, objs[i], tol);
        if (!hit) continue;
        ctx.star |= ObjMask{1} << i;
        angles[i] = cw_angle_to_parallel(dir, hit->tangent.dir);
    }
    std::vector<double> distinct;
    for (size_t i = 0; i < objs.size(); ++i) {
        if (angles[i] < 0.0) continue;
        bool seen = false;
        for (double v : distinct)
            if (std::abs(v - angles[i]) <= kAngTol) {
                seen = true;
                break;
            }
        if (!seen) distinct.push_back(angles[i]);
    }
    std::sort(distinct.begin(), distinct.end());
    ctx.psi = distinct;
    ctx.prefix_masks.assign(distinct.size() + 1, 0);
    for (size_t j = 1; j <= distinct.size(); ++j) {
        ObjMask m = 0;
        for (size_t i = 0; i < objs.size(); ++i)
            if (angles[i] >= 0.0 && angles[i] <= distinct[j - 1] + kAngTol) m |= ObjMask{1} << i;
        ctx.prefix_masks[j] = m;
    }
    return ctx;
}

ObjMask o_star(int w_index, int j, const std::vector<Point2>& y_order, Point2 p_bot, Vec2 ray0,
               ObjMask minus_mask, const std::vector<ConvexObject>& objs, double tol) {
    size_t n = objs.size();
    ObjMask full = n >= 64 ? ~ObjMask{0} : ((ObjMask{1} << n) - 1);
    if (w_index < 0) return 0;
    if (w_index >= static_cast<int>(y_order.size())) return full;
    Point2 w = y_order[static_cast<size_t>(w_index)];
    double phi = cw_angle(ray0, w - p_bot);
    ObjMask wedge = 0, ray = 0, seg = 0;
    Vec2 dir = normalized(w - p_bot);
    for (size_t i = 0; i < n; ++i) {
        ObjMask bit = ObjMask{1} << i;
        if (object_hits_wedge(p_bot, ray0, phi, objs[i], tol)) wedge |= bit;
        if (object_hits_ray(objs[i], p_bot, dir, tol)) ray |= bit;
        if (object_hits_segment(objs[i], p_bot, w, tol)) seg |= bit;
    }
    PrefixContext ctx = psi_prefix_sets(w, p_bot, objs, tol);
    size_t jj = std::min<size_t>(static_cast<size_t>(j), ctx.prefix_masks.size() - 1);
    return ((wedge & ~ray) & ~minus_mask) | seg | ctx.prefix_masks[jj];
}

// ---------------------------------------------------------------------------
// Endpoint-anchored DP.

namespace {

double support_max(const ConvexObject& o, Vec2 n) {
    double hi = -kInf;
    for (const auto& q : object_vertices(o)) hi = std::max(hi, dot(n, q));
    if (o.kind == ObjectKind::ray && dot(n, o.dir) > 1e-15) hi = kInf;
    if (o.kind == ObjectKind::line && std::abs(dot(n, o.dir)) > 1e-15) hi = kInf;
    return hi;
}

struct DpContext {
    // Everything lives in the frame: p_bot at the origin, rho_0 = (-1, 0).
    std::vector<ConvexObject> objs;   // reduced: p_bot-containing objects dropped
    std::vector<Point2> y;            // sorted by (cw angle, distance)
    std::vector<double> psi_global;   // distinct parallel angles over the reduced set
    ObjMask ray0_mask = 0;            // objects meeting rho_0
    std::vector<double> obj_psi;      // per object, -1 if directionless
    ObjMask full = 0;
    std::vector<PrefixContext> prefix;           // per y
    std::vector<ObjMask> wedge, raym, segm;      // per y
    std::map<std::tuple<int, int, ObjMask>, ChainResult> cache;
    bool feasible_anchor = true;

    Point2 point_of(int idx) const {
        if (idx < 0 || idx >= static_cast<int>(y.size())) return {0.0, 0.0};
        return y[static_cast<size_t>(idx)];
    }
};

DpContext build_context(const std::vector<ConvexObject>& objects, Point2 p_bot, double ray_angle,
                        double tol) {
    DpContext ctx;
    double rot = kPi - ray_angle;
    std::vector<ConvexObject> frame;
    frame.reserve(objects.size());
    for (const auto& o : objects) {
        ConvexObject shifted = o;
        for (auto& p : shifted.pts) p = p - p_bot;
        frame.push_back(transformed(shifted, rot, {0.0, 0.0}));
    }
    Point2 origin{0.0, 0.0};
    for (const auto& o : frame)
        if (!point_in_object(origin, o, tol)) ctx.objs.push_back(o);
    size_t n = ctx.objs.size();
    ctx.full = n == 0 ? 0 : (n >= 64 ? ~ObjMask{0} : ((ObjMask{1} << n) - 1));

    // Feasibility: some half-plane through p_bot must meet every object.
    if (n > 0) {
        std::vector<Vec2> normals{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
        for (const auto& o : ctx.objs) {
            for (const auto& q : object_vertices(o)) {
                if (norm(q) > 1e-12) {
                    Vec2 u = normalized(q);
                    normals.push_back(perp_ccw(u));
                    normals.push_back(perp_cw(u));
                    normals.push_back(u);
                }
            }
            if (o.kind == ObjectKind::ray || o.kind == ObjectKind::line) {
                normals.push_back(perp_ccw(o.dir));
                normals.push_back(perp_cw(o.dir));
            }
        }
        bool ok = false;
        for (const auto& nn : normals) {
            bool all = true;
            for (const auto& o : ctx.objs)
                if (support_max(o, nn) < -tol) {
                    all = false;
                    break;
                }
            if (all) {
                ok = true;
                break;
            }
        }
        ctx.feasible_anchor = ok;
        if (!ok) return ctx;
    }

    // Y: every input endpoint except p_bot itself and points on rho_0.
    std::vector<Point2> raw;
    for (const auto& o : frame)
        for (const auto& p : object_vertices(o)) raw.push_back(p);
    for (const auto& p : raw) {
        if (norm(p) <= tol) continue;
        if (std::abs(p.y) <= tol && p.x < 0.0) continue;
        bool dup = false;
        for (const auto& q : ctx.y)
            if (dist(p, q) <= tol) {
                dup = true;
                break;
            }
        if (!dup) ctx.y.push_back(p);
    }
    std::sort(ctx.y.begin(), ctx.y.end(), [](Point2 a, Point2 b) {
        double pa = cw_angle({-1.0, 0.0}, a), pb = cw_angle({-1.0, 0.0}, b);
        if (pa != pb) return pa < pb;
        double ra = norm(a), rb = norm(b);
        if (ra != rb) return ra < rb;
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });

    ctx.obj_psi.assign(n, -1.0);
    for (size_t i = 0; i < n; ++i) {
        const auto& o = ctx.objs[i];
        if (o.kind == ObjectKind::point) continue;
        Vec2 d = o.kind == ObjectKind::segment ? o.pts[1] - o.pts[0] : o.dir;
        ctx.obj_psi[i] = cw_angle_to_parallel({-1.0, 0.0}, d);
        if (object_hits_ray(o, origin, {-1.0, 0.0}, tol)) ctx.ray0_mask |= ObjMask{1} << i;
    }
    for (size_t i = 0; i < n; ++i) {
        if (ctx.objs[i].kind == ObjectKind::point &&
            object_hits_ray(ctx.objs[i], origin, {-1.0, 0.0}, tol))
            ctx.ray0_mask |= ObjMask{1} << i;
    }
    std::vector<double> distinct;
    for (size_t i = 0; i < n; ++i) {
        if (ctx.obj_psi[i] < 0.0) continue;
        bool seen = false;
        for (double v : distinct)
            if (std::abs(v - ctx.obj_psi[i]) <= kAngTol) {
                seen = true;
                break;
            }
        if (!seen) distinct.push_back(ctx.obj_psi[i]);
    }
    std::sort(distinct.begin(), distinct.end());
    ctx.psi_global = distinct;

    Vec2 ray0{-1.0, 0.0};
    for (const auto& w : ctx.y) {
        ctx.prefix.push_back(psi_prefix_sets(w, origin, ctx.objs, tol));
        double phi = cw_angle(ray0, w);
        ObjMask wm = 0, rm = 0, sm = 0;
        Vec2 dir = normalized(w);
        for (size_t i = 0; i < n; ++i) {
            ObjMask bit = ObjMask{1} << i;
            if (object_hits_wedge(origin, ray0, phi, ctx.objs[i], tol)) wm |= bit;
            if (object_hits_ray(ctx.objs[i], origin, dir, tol)) rm |= bit;
            if (object_hits_segment(ctx.objs[i], origin, w, tol)) sm |= bit;
        }
        ctx.wedge.push_back(wm);
        ctx.raym.push_back(rm);
        ctx.segm.push_back(sm);
    }
    return ctx;
}

ChainResult& cached_chain(DpContext& ctx, int vi, int wi, ObjMask mask, double tol) {
    auto key = std::make_tuple(vi, wi, mask);
    auto it = ctx.cache.find(key);
    if (it != ctx.cache.end()) return it->second;
    std::vector<ConvexObject> subset;
    for (size_t i = 0; i < ctx.objs.size(); ++i)
        if (mask & (ObjMask{1} << i)) subset.push_back(ctx.objs[i]);
    ChainResult r = subroutine_II(ctx.point_of(vi), ctx.point_of(wi), subset, ctx.y, tol);
    return ctx.cache.emplace(key, std::move(r)).first->second;
}

struct FrameDpOut {
    double table = kInf;
    double value = kInf;
    ConvexPolygon polygon;  // frame coordinates
};

FrameDpOut dp_in_frame(DpContext& ctx, int range_index, double tol) {
    FrameDpOut out;
    if (!ctx.feasible_anchor) return out;
    size_t n = ctx.objs.size();
    if (n == 0) {
        out.table = 0.0;
        out.value = 0.0;
        out.polygon = ConvexPolygon{{{0.0, 0.0}}};
        return out;
    }
    int m = static_cast<int>(ctx.y.size());

    // Tangent range [psi_j, psi_j+1]: objects on rho_0 with parallel angle at
    // or below psi_j belong to the later part of the boundary.
    double psi_j = range_index <= 0
                       ? 0.0
                       : ctx.psi_global[std::min<size_t>(static_cast<size_t>(range_index) - 1,
                                                         ctx.psi_global.size() - 1)];
    ObjMask minus = 0;
    for (size_t i = 0; i < n; ++i)
        if ((ctx.ray0_mask >> i) & 1)
            if (ctx.obj_psi[i] >= 0.0 && ctx.obj_psi[i] <= psi_j + kAngTol) minus |= ObjMask{1} << i;

    auto star_of = [&](int w, int j) -> ObjMask {
        if (w < 0) return 0;
        if (w >= m) return ctx.full;
        const auto& pc = ctx.prefix[static_cast<size_t>(w)];
        size_t jj = std::min<size_t>(static_cast<size_t>(j), pc.prefix_masks.size() - 1);
        return ((ctx.wedge[static_cast<size_t>(w)] & ~ctx.raym[static_cast<size_t>(w)]) & ~minus) |
               ctx.segm[static_cast<size_t>(w)] | pc.prefix_masks[jj];
    };
    auto levels_of = [&](int w) -> int {
        if (w < 0 || w >= m) return 1;
        return static_cast<int>(ctx.prefix[static_cast<size_t>(w)].prefix_masks.size());
    };

    std::vector<std::vector<double>> table(static_cast<size_t>(m) + 1);
    std::vector<std::vector<std::pair<int, int>>> pred(static_cast<size_t>(m) + 1);
    for (int w = 0; w <= m; ++w) {
        table[static_cast<size_t>(w)].assign(static_cast<size_t>(levels_of(w == m ? m : w)), kInf);
        pred[static_cast<size_t>(w)].assign(table[static_cast<size_t>(w)].size(), {-2, 0});
    }

    auto tri_mask = [&](int vi, int wi) -> ObjMask {
        Point2 a{0.0, 0.0};
        Point2 v = ctx.point_of(vi), w = ctx.point_of(wi);
        ObjMask mask = 0;
        for (size_t i = 0; i < n; ++i)
            if (object_hits_triangle(ctx.objs[i], a, v, w, tol)) mask |= ObjMask{1} << i;
        return mask;
    };

    for (int w = 0; w <= m; ++w) {
        int jl = w == m ? 1 : levels_of(w);
        for (int j = 0; j < jl; ++j) {
            ObjMask target = star_of(w == m ? m : w, j);
            double best = kInf;
            std::pair<int, int> bp{-2, 0};
            for (int v = -1; v < (w == m ? m : w); ++v) {
                int vjl = levels_of(v);
                ObjMask tri = tri_mask(v, w == m ? m : w);
                for (int j2 = 0; j2 < vjl; ++j2) {
                    double base = v < 0 ? 0.0 : table[static_cast<size_t>(v)][static_cast<size_t>(j2)];
                    if (base >= best) continue;
                    ObjMask have = star_of(v, j2) | tri;
                    ObjMask need = target & ~have;
                    const ChainResult& cr =
                        cached_chain(ctx, v, w == m ? m : w, need, tol);
                    if (cr.value == kInf) continue;
                    double cand = base + cr.value;
                    if (cand < best) {
                        best = cand;
                        bp = {v, j2};
                    }
                }
            }
            table[static_cast<size_t>(w)][static_cast<size_t>(j)] = best;
            pred[static_cast<size_t>(w)][static_cast<size_t>(j)] = bp;
        }
    }

    out.table = table[static_cast<size_t>(m)][0];
    if (out.table == kInf) return out;

    // Reconstruct: union of piece polygons, then the convex hull.
    std::vector<Point2> pts{{0.0, 0.0}};
    int w = m, j = 0;
    while (w >= 0) {
        auto [v, j2] = pred[static_cast<size_t>(w)][static_cast<size_t>(j)];
        if (v == -2) break;
        ObjMask target = star_of(w, j);
        ObjMask have = star_of(v, j2) | tri_mask(v, w);
        const ChainResult& cr = cached_chain(ctx, v, w, target & ~have, tol);
        for (const auto& p : cr.polygon.v) pts.push_back(p);
        if (w < m) pts.push_back(ctx.point_of(w));
        if (v < 0) break;
        w = v;
        j = j2;
    }
    ConvexPolygon hull = convex_hull(pts);
    double feas_tol = std::max(tol, 1e-7);
    for (const auto& o : ctx.objs)
        if (!intersects(o, hull, feas_tol)) return out;  // table kept, value stays infinite
    out.value = hull.perimeter();
    out.polygon = std::move(hull);
    return out;
}

Solution point_solution_exact(Point2 p, size_t n_objects) {
    Solution s;
    s.objective = Objective::perimeter;
    s.value = 0.0;
    s.polygon = ConvexPolygon{{p}};
    s.witnesses.assign(n_objects, p);
    s.branch = "common_point";
    return s;
}

}  // namespace

ExactDpResult dp_exact(const std::vector<ConvexObject>& objects, const ExactGuess& guess,
                       const SolverConfig& cfg) {
    DpContext ctx = build_context(objects, guess.p_bot, guess.ray_angle, cfg.tol);
    FrameDpOut f = dp_in_frame(ctx, guess.range_index, cfg.tol);
    ExactDpResult out;
    out.table_value = f.table;
    out.value = f.value;
    if (f.value < kInf) {
        double rot = kPi - guess.ray_angle;
        ConvexPolygon world;
        for (const auto& p : f.polygon.v) world.v.push_back(rotated(p, -rot) + guess.p_bot);
        out.polygon = convex_hull(world.v);
    }
    return out;
}

Solution solve_exact(const std::vector<ConvexObject>& objects, const SolverConfig& cfg) {
    if (objects.empty()) throw std::invalid_argument("solve_exact: empty input");
    for (const auto& o : objects)
        if (o.kind == ObjectKind::polygon)
            throw std::invalid_argument("solve_exact: handles segments, rays, lines and points");

    auto common = common_point_check(objects, cfg.tol);
    if (common.point) return point_solution_exact(*common.point, objects.size());

    std::vector<Point2> y;
    for (const auto& o : objects)
        for (const auto& p : object_vertices(o)) {
            bool dup = false;
            for (const auto& q : y)
                if (dist(p, q) <= cfg.tol) {
                    dup = true;
                    break;
                }
            if (!dup) y.push_back(p);
        }

    struct Branch {
        double value = kInf;
        ConvexPolygon polygon;
        std::string tag;
    };
    Branch sub1;
    {
        ChainResult r = subroutine_I(objects, cfg);
        sub1.value = r.value == kInf ? kInf : r.polygon.perimeter();
        sub1.polygon = r.polygon;
        sub1.tag = "subroutine_I";
    }

    struct Task {
        Point2 p_bot;
        double ray_angle;
    };
    std::vector<Task> tasks;
    for (const auto& p : y)
        for (int k = 0; k < 3; ++k)
            tasks.push_back({p, kPi + static_cast<double>(k) * 2.0 * kPi / 3.0});

    std::vector<Branch> results(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int t) {
        const Task& task = tasks[static_cast<size_t>(t)];
        DpContext ctx = build_context(objects, task.p_bot, task.ray_angle, cfg.tol);
        if (!ctx.feasible_anchor) return;
        int ranges = static_cast<int>(ctx.psi_global.size()) + 1;
        Branch& br = results[static_cast<size_t>(t)];
        br.tag = "endpoint_dp";
        for (int j = 0; j < ranges; ++j) {
            FrameDpOut f = dp_in_frame(ctx, j, cfg.tol);
            if (f.value < br.value) {
                double rot = kPi - task.ray_angle;
                ConvexPolygon world;
                for (const auto& p : f.polygon.v)
                    world.v.push_back(rotated(p, -rot) + task.p_bot);
                br.value = f.value;
                br.polygon = convex_hull(world.v);
                br.value = br.polygon.perimeter();
            }
        }
    });

    Branch best = sub1;
    for (const auto& r : results)
        if (r.value < best.value) best = r;

    Solution s;
    s.objective = Objective::perimeter;
    s.value = best.value;
    s.polygon = best.polygon;
    s.branch = best.tag;
    if (best.tag == "subroutine_I") s.caveats.push_back("event_point_surrogate");
    if (best.value == kInf) {
        s.feasible = false;
        return s;
    }
    for (const auto& o : objects) {
        auto w = intersection_witness(o, s.polygon, std::max(cfg.tol, 1e-7));
        if (!w) throw std::runtime_error("solve_exact: produced an infeasible polygon");
        s.witnesses.push_back(*w);
    }
    return s;
}

}  // namespace stabhull
