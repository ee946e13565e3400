#include "stabhull/fptas_area.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "stabhull/parallel.hpp"

namespace stabhull {

std::optional<Line2> line_stab(const std::vector<ConvexObject>& objects, double tol) {
    if (objects.empty()) return std::nullopt;
    std::vector<Point2> verts = arrangement_vertices(objects, tol);
    std::vector<Vec2> dirs;
    for (const auto& o : objects) {
        if (o.kind == ObjectKind::segment) dirs.push_back(normalized(o.pts[1] - o.pts[0]));
        if (o.kind == ObjectKind::ray || o.kind == ObjectKind::line) dirs.push_back(o.dir);
        if (o.kind == ObjectKind::polygon)
            for (size_t i = 0; i < o.pts.size(); ++i)
                dirs.push_back(normalized(o.pts[(i + 1) % o.pts.size()] - o.pts[i]));
    }
    auto stabs_all = [&](Point2 a, Vec2 d) {
        if (norm(d) <= 1e-15) return false;
        for (const auto& o : objects)
            if (!line_hits_object(a, d, o, tol)) return false;
        return true;
    };
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            if (stabs_all(verts[i], verts[j] - verts[i]))
                return Line2{verts[i], normalized(verts[j] - verts[i])};
    for (const auto& v : verts) {
        for (const auto& d : dirs)
            if (stabs_all(v, d)) return Line2{v, d};
        for (const auto& d : dirs)
            if (stabs_all(v, perp_ccw(d))) return Line2{v, perp_ccw(d)};
    }
    // Degenerate inventories (e.g. a single object, or lines only).
    if (!verts.empty()) {
        if (stabs_all(verts[0], {1.0, 0.0})) return Line2{verts[0], {1.0, 0.0}};
        if (stabs_all(verts[0], {0.0, 1.0})) return Line2{verts[0], {0.0, 1.0}};
    }
    return std::nullopt;
}

GridDpResult dp_area(const AngularVertexOrder& order, const std::vector<ConvexObject>& objects,
                     double prune_bound, double tol) {
    return grid_dp(order, objects, /*area_objective=*/true, prune_bound, tol);
}

double area_lower_bound(int n, int c) {
    if (n < 1 || c < 1) throw std::invalid_argument("area_lower_bound: need n, c >= 1");
    return 1.0 / (64.0 * std::pow(static_cast<double>(n), 8.0 * c));
}

// ---------------------------------------------------------------------------
// Constant-size branch.

namespace {

struct Side {
    Point2 base;
    Vec2 dir;  // unit
    double s0, s1;
};

std::vector<Side> object_sides(const std::vector<ConvexObject>& objects, double big) {
    std::vector<Side> sides;
    for (const auto& o : objects) {
        switch (o.kind) {
            case ObjectKind::point:
                sides.push_back({o.pts[0], {0.0, 0.0}, 0.0, 0.0});
                break;
            case ObjectKind::segment: {
                double len = dist(o.pts[0], o.pts[1]);
                sides.push_back({o.pts[0], normalized(o.pts[1] - o.pts[0]), 0.0, len});
                break;
            }
            case ObjectKind::ray:
                sides.push_back({o.pts[0], o.dir, 0.0, big});
                break;
            case ObjectKind::line:
                sides.push_back({o.pts[0], o.dir, -big, big});
                break;
            case ObjectKind::polygon:
                for (size_t i = 0; i < o.pts.size(); ++i) {
                    Point2 a = o.pts[i], b = o.pts[(i + 1) % o.pts.size()];
                    sides.push_back({a, normalized(b - a), 0.0, dist(a, b)});
                }
                break;
        }
    }
    return sides;
}

struct CsaEval {
    bool feasible = false;
    double area = kInf;
    ConvexPolygon polygon;
};

CsaEval evaluate_lambda(const std::vector<Side>& sides, const std::vector<int>& tuple,
                        const std::vector<double>& lambda,
                        const std::vector<ConvexObject>& objects, double mu, double scale,
                        double tol) {
    size_t k = tuple.size();
    std::vector<Point2> verts(k);
    for (size_t i = 0; i < k; ++i) {
        const Side& s = sides[static_cast<size_t>(tuple[i])];
        double lam = std::clamp(lambda[i], s.s0, s.s1);
        verts[i] = s.base + lam * s.dir;
    }
    CsaEval ev;
    ev.polygon = convex_hull(verts);
    double area = ev.polygon.area();
    double dist_max = 0.0;
    for (const auto& o : objects)
        dist_max = std::max(dist_max, distance_object_polygon(o, ev.polygon, tol));
    ev.area = area;
    ev.feasible = dist_max <= 1e-7 * scale && area <= mu * (1.0 + 1e-9) + 1e-12;
    return ev;
}

double csa_merit(const std::vector<Side>& sides, const std::vector<int>& tuple,
                 const std::vector<double>& lambda, const std::vector<ConvexObject>& objects,
                 double mu, double scale, double tol) {
    size_t k = tuple.size();
    std::vector<Point2> verts(k);
    double range_pen = 0.0;
    for (size_t i = 0; i < k; ++i) {
        const Side& s = sides[static_cast<size_t>(tuple[i])];
        double lam = lambda[i];
        if (lam < s.s0) range_pen += (s.s0 - lam);
        if (lam > s.s1) range_pen += (lam - s.s1);
        verts[i] = s.base + std::clamp(lam, s.s0, s.s1) * s.dir;
    }
    ConvexPolygon hull = convex_hull(verts);
    double dist_pen = 0.0;
    for (const auto& o : objects) dist_pen += distance_object_polygon(o, hull, tol);
    double area_pen = std::max(0.0, hull.area() - mu);
    return dist_pen / scale + range_pen / scale + area_pen / (scale * scale);
}

}  // namespace

Solution constant_size_area(const std::vector<ConvexObject>& objects, double eps,
                            const SolverConfig& cfg) {
    if (objects.empty()) throw std::invalid_argument("constant_size_area: empty input");
    if (eps <= 0.0 || eps >= 1.0)
        throw std::invalid_argument("constant_size_area: need 0 < eps < 1");

    Solution s;
    s.objective = Objective::area;
    s.eps = eps;
    s.feasible = false;
    s.branch = "constant_size";
    s.caveats.push_back("constant_size_heuristic");

    auto common = common_point_check(objects, cfg.tol);
    if (common.point) {
        s.value = 0.0;
        s.polygon = ConvexPolygon{{*common.point}};
        s.witnesses.assign(objects.size(), *common.point);
        s.branch = "common_point";
        s.feasible = true;
        return s;
    }

    // k = 2: a stabbing line gives a zero-area doubled segment.
    if (auto line = line_stab(objects, cfg.tol)) {
        std::vector<Point2> pts;
        for (const auto& o : objects) {
            auto clip = clip_line_to_object(line->anchor, line->dir, o, std::max(cfg.tol, 1e-9));
            if (!clip) continue;
            double lo = clip->first, hi = clip->second;
            double t = std::isinf(lo) ? (std::isinf(hi) ? 0.0 : hi)
                                      : (std::isinf(hi) ? lo : 0.5 * (lo + hi));
            pts.push_back(line->anchor + t * line->dir);
        }
        if (pts.size() == objects.size()) {
            s.value = 0.0;
            s.polygon = convex_hull(pts);
            s.branch = "line_stab";
            s.feasible = true;
            s.witnesses.clear();
            for (const auto& o : objects) {
                auto w = intersection_witness(o, s.polygon, std::max(cfg.tol, 1e-7));
                if (!w) {
                    s.feasible = false;
                    break;
                }
                s.witnesses.push_back(*w);
            }
            if (s.feasible) return s;
        }
    }

    // 3 <= k <= 8: side assignments + multi-start pattern search on the
    // vertex parameters, inside a (1+eps)^z binary search on the target area.
    std::vector<Point2> x = arrangement_vertices(objects, cfg.tol);
    double minx = kInf, maxx = -kInf, miny = kInf, maxy = -kInf;
    for (const auto& p : x) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    if (x.empty()) return s;
    double span = std::max({maxx - minx, maxy - miny, 1e-6});
    double scale = span;
    double big = 4.0 * span;
    std::vector<Side> sides = object_sides(objects, big);
    size_t ns = sides.size();

    double ub = 16.0 * span * span;
    double lb;
    {
        // Integer instances get the proof-chain bound; otherwise rescale.
        bool integral = true;
        int count = 0;
        double max_abs = 1.0;
        for (const auto& o : objects)
            for (const auto& p : object_vertices(o)) {
                integral = integral && std::abs(p.x - std::round(p.x)) < 1e-9 &&
                           std::abs(p.y - std::round(p.y)) < 1e-9;
                max_abs = std::max({max_abs, std::abs(p.x), std::abs(p.y)});
                ++count;
            }
        int n = std::max(2, count);
        if (integral) {
            int c = std::max(1, static_cast<int>(std::ceil(std::log(max_abs + 2.0) /
                                                           std::log(static_cast<double>(n)))));
            lb = area_lower_bound(n, c);
        } else {
            lb = std::max(1e-18, 1e-10 * span * span);
        }
    }
    lb = std::min(lb, ub / 4.0);

    // Ordered cyclic tuples of side indices. Full enumeration at small sizes,
    // seeded sampling beyond the budget.
    std::vector<std::vector<int>> tuples;
    {
        std::vector<std::vector<int>> all;
        for (int k = 3; k <= 8; ++k) {
            std::vector<int> cur(static_cast<size_t>(k), 0);
            long long total = 1;
            for (int i = 0; i < k; ++i) total *= static_cast<long long>(ns);
            if (total <= static_cast<long long>(cfg.csa_tuple_budget) * 8 && ns <= 12) {
                std::vector<int> stack(static_cast<size_t>(k));
                std::function<void(int)> rec = [&](int depth) {
                    if (depth == k) {
                        // canonical under rotation: smallest element first
                        int mn = *std::min_element(stack.begin(), stack.end());
                        if (stack[0] != mn) return;
                        all.push_back(stack);
                        return;
                    }
                    for (int v = 0; v < static_cast<int>(ns); ++v) {
                        stack[static_cast<size_t>(depth)] = v;
                        rec(depth + 1);
                    }
                };
                rec(0);
            } else {
                std::mt19937_64 rng(cfg.seed ^ (0xabcdefull + static_cast<std::uint64_t>(k)));
                std::uniform_int_distribution<int> pick(0, static_cast<int>(ns) - 1);
                for (int t = 0; t < cfg.csa_tuple_budget / 6; ++t) {
                    std::vector<int> tup(static_cast<size_t>(k));
                    for (auto& v : tup) v = pick(rng);
                    all.push_back(tup);
                }
            }
        }
        if (all.size() > static_cast<size_t>(cfg.csa_tuple_budget)) {
            // deterministic thinning: keep a stride-spread subset
            size_t stride = all.size() / static_cast<size_t>(cfg.csa_tuple_budget) + 1;
            for (size_t i = 0; i < all.size(); i += stride) tuples.push_back(all[i]);
        } else {
            tuples = std::move(all);
        }
    }

    ConvexPolygon best_poly;
    double best_area = kInf;

    auto decide = [&](double mu) {
        bool any = false;
        for (size_t ti = 0; ti < tuples.size(); ++ti) {
            const auto& tuple = tuples[ti];
            size_t k = tuple.size();
            for (int start = 0; start < cfg.csa_starts; ++start) {
                std::mt19937_64 rng(cfg.seed ^ (ti * 1315423911ull) ^
                                    (static_cast<std::uint64_t>(start) << 32));
                std::uniform_real_distribution<double> uni(0.0, 1.0);
                std::vector<double> lam(k);
                for (size_t i = 0; i < k; ++i) {
                    const Side& sd = sides[static_cast<size_t>(tuple[i])];
                    double lo = std::max(sd.s0, -big), hi = std::min(sd.s1, big);
                    lam[i] = lo + uni(rng) * (hi - lo);
                }
                double step = 0.25 * span;
                double cur = csa_merit(sides, tuple, lam, objects, mu, scale, cfg.tol);
                int iters = 0;
                while (step > 1e-9 * span && iters < 400) {
                    ++iters;
                    bool improved = false;
                    for (size_t i = 0; i < k; ++i) {
                        for (double d : {step, -step}) {
                            lam[i] += d;
                            double m2 = csa_merit(sides, tuple, lam, objects, mu, scale, cfg.tol);
                            if (m2 < cur - 1e-15) {
                                cur = m2;
                                improved = true;
                            } else {
                                lam[i] -= d;
                            }
                        }
                    }
                    if (!improved) step *= 0.5;
                    if (cur <= 0.0) break;
                }
                auto ev = evaluate_lambda(sides, tuple, lam, objects, mu, scale, cfg.tol);
                if (ev.feasible) {
                    any = true;
                    if (ev.area < best_area) {
                        best_area = ev.area;
                        best_poly = ev.polygon;
                    }
                    break;  // next tuple
                }
            }
        }
        return any;
    };

    double log1e = std::log1p(eps);
    long long z_lo = static_cast<long long>(std::floor(std::log(lb) / log1e));
    long long z_hi = static_cast<long long>(std::ceil(std::log(ub) / log1e));
    if (!decide(std::exp(static_cast<double>(z_hi) * log1e))) {
        z_hi += 8;
        if (!decide(std::exp(static_cast<double>(z_hi) * log1e))) {
            s.value = kInf;
            return s;  // infinity marker; grid branch may still succeed
        }
    }
    while (z_lo + 1 < z_hi) {
        long long mid = z_lo + (z_hi - z_lo) / 2;
        if (decide(std::exp(static_cast<double>(mid) * log1e)))
            z_hi = mid;
        else
            z_lo = mid;
    }

    if (best_area == kInf) {
        s.value = kInf;
        return s;
    }
    s.value = best_area;
    s.polygon = best_poly;
    s.feasible = true;
    s.witnesses.clear();
    for (const auto& o : objects) {
        auto w = intersection_witness(o, s.polygon, std::max(cfg.tol, 1e-6));
        if (!w) {
            s.feasible = false;
            s.value = kInf;
            return s;
        }
        s.witnesses.push_back(*w);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Grid branch and assembly.

namespace {

ConvexObject affine_object(const ConvexObject& o, const Ellipse& el, bool to_unit) {
    ConvexObject out = o;
    for (auto& p : out.pts) p = to_unit ? el.to_unit_circle(p) : el.from_unit_circle(p);
    if (o.kind == ObjectKind::ray || o.kind == ObjectKind::line) {
        Point2 a = o.pts[0], b = o.pts[0] + o.dir;
        Point2 a2 = to_unit ? el.to_unit_circle(a) : el.from_unit_circle(a);
        Point2 b2 = to_unit ? el.to_unit_circle(b) : el.from_unit_circle(b);
        out.dir = normalized(b2 - a2);
        out.pts = {a2};
    }
    return out;
}

struct GridOutcome {
    double area_world = kInf;
    ConvexPolygon polygon_world;
};

GridOutcome run_area_grid(const Ellipse& el, const std::vector<ConvexObject>& objects,
                          double bound_world, const SolverConfig& cfg) {
    GridOutcome out;
    double det = el.a * el.b;
    if (det <= 1e-300) return out;
    std::vector<ConvexObject> objs_t;
    objs_t.reserve(objects.size());
    for (const auto& o : objects) objs_t.push_back(affine_object(o, el, true));

    double r = cfg.area_dp_radius;
    ConvexPolygon window{{{-r, -r}, {r, -r}, {r, r}, {-r, r}}};
    for (const auto& o : objs_t)
        if (!intersects(o, window, cfg.tol)) return out;  // optimum cannot live in this window

    int cells = cfg.area_dp_cells;
    double bound_t = bound_world / det;

    Point2 origin{-r, -r};
    double edge = 2.0 * r / static_cast<double>(cells);
    ConvexPolygon best_poly_t;
    double best_t = bound_t;
    for (int round = 0; round <= cfg.refine_rounds; ++round) {
        std::vector<Point2> pts;
        for (int j = 0; j <= cells; ++j)
            for (int i = 0; i <= cells; ++i)
                pts.push_back(origin + Point2{edge * static_cast<double>(i), edge * static_cast<double>(j)});

        std::vector<double> maxy(objs_t.size(), -kInf);
        for (size_t i = 0; i < objs_t.size(); ++i) {
            for (const auto& q : object_vertices(objs_t[i])) maxy[i] = std::max(maxy[i], q.y);
            if (objs_t[i].kind == ObjectKind::ray && objs_t[i].dir.y > 1e-15) maxy[i] = kInf;
            if (objs_t[i].kind == ObjectKind::line && std::abs(objs_t[i].dir.y) > 1e-15)
                maxy[i] = kInf;
        }
        std::vector<int> anchors;
        for (size_t ai = 0; ai < pts.size(); ++ai) {
            bool ok = true;
            for (size_t i = 0; i < objs_t.size(); ++i)
                if (maxy[i] < pts[ai].y - 1e-9) {
                    ok = false;
                    break;
                }
            if (ok) anchors.push_back(static_cast<int>(ai));
        }
        std::vector<GridDpResult> results(anchors.size());
        parallel_for(static_cast<int>(anchors.size()), cfg.threads, [&](int t) {
            Point2 anchor = pts[static_cast<size_t>(anchors[static_cast<size_t>(t)])];
            auto order = make_angular_order(anchor, pts, cfg.tol);
            results[static_cast<size_t>(t)] =
                grid_dp(order, objs_t, true, best_t * (1.0 + 1e-9) + 1e-12, cfg.tol);
        });
        bool improved = false;
        for (auto& rr : results) {
            if (rr.value < best_t) {
                best_t = rr.value;
                best_poly_t = std::move(rr.polygon);
                improved = true;
            }
        }
        if (round == cfg.refine_rounds || best_poly_t.v.empty()) break;
        if (!improved && round > 0) break;
        double minx = kInf, maxx = -kInf, miny = kInf, mxy = -kInf;
        for (const auto& p : best_poly_t.v) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            mxy = std::max(mxy, p.y);
        }
        double margin = 2.0 * edge;
        double side = std::max({maxx - minx, mxy - miny, 4.0 * edge / cells}) + 2.0 * margin;
        double new_edge = side / static_cast<double>(cells);
        if (new_edge >= 0.9 * edge) break;
        origin = {0.5 * (minx + maxx) - 0.5 * side, 0.5 * (miny + mxy) - 0.5 * side};
        edge = new_edge;
    }

    if (!best_poly_t.v.empty()) {
        ConvexPolygon world;
        for (const auto& p : best_poly_t.v) world.v.push_back(el.from_unit_circle(p));
        world = convex_hull(world.v);
        out.polygon_world = world;
        out.area_world = world.area();
    }
    return out;
}

}  // namespace

Solution solve_area(const std::vector<ConvexObject>& objects, double eps, const SolverConfig& cfg) {
    if (objects.empty()) throw std::invalid_argument("solve_area: empty input");
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("solve_area: need 0 < eps < 1");

    Solution best = constant_size_area(objects, eps, cfg);
    if (best.feasible && best.value <= 0.0) return best;
    double bound = best.feasible ? best.value : kInf;

    CandidateGridOptions gopts;
    std::vector<GridSpec> grids = candidate_grids(objects, eps, gopts);

    // Cheap adaptation score: grids whose ellipse sits near all objects first.
    std::vector<size_t> order_idx(grids.size());
    for (size_t i = 0; i < grids.size(); ++i) order_idx[i] = i;
    std::vector<double> score(grids.size(), kInf);
    for (size_t i = 0; i < grids.size(); ++i) {
        const auto& el = grids[i].ellipse;
        if (!el) continue;
        double sc = 0.0;
        for (const auto& o : objects)
            sc = std::max(sc, distance_point_object(el->center, o) / std::max(el->a, 1e-12));
        score[i] = sc;
    }
    std::stable_sort(order_idx.begin(), order_idx.end(),
                     [&](size_t a, size_t b) { return score[a] < score[b]; });
    size_t budget = std::min<size_t>(order_idx.size(), static_cast<size_t>(cfg.area_grid_budget));

    std::vector<GridOutcome> outcomes(budget);
    std::vector<double> bounds(budget, bound);
    parallel_for(static_cast<int>(budget), cfg.threads, [&](int t) {
        const auto& g = grids[order_idx[static_cast<size_t>(t)]];
        if (!g.ellipse) return;
        outcomes[static_cast<size_t>(t)] =
            run_area_grid(*g.ellipse, objects, bounds[static_cast<size_t>(t)], cfg);
    });
    bool grid_won = false;
    ConvexPolygon grid_poly;
    double grid_area = kInf;
    for (auto& oc : outcomes) {
        if (oc.area_world < grid_area) {
            grid_area = oc.area_world;
            grid_poly = std::move(oc.polygon_world);
        }
    }
    if (grid_area < bound) {
        grid_won = true;
        bound = grid_area;
    }

    if (!grid_won) {
        if (!best.feasible) {
            best.value = kInf;
            best.feasible = false;
        }
        return best;
    }
    Solution s;
    s.objective = Objective::area;
    s.eps = eps;
    s.branch = "grid_dp";
    s.polygon = grid_poly;
    s.value = grid_poly.area();
    s.feasible = true;
    for (const auto& o : objects) {
        auto w = intersection_witness(o, s.polygon, std::max(cfg.tol, 1e-7));
        if (!w) throw std::runtime_error("solve_area: produced an infeasible polygon");
        s.witnesses.push_back(*w);
    }
    return s;
}

}  // namespace stabhull
