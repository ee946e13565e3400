#include "stabhull/fptas_perimeter.hpp"

#include <algorithm>
#include <cmath>

#include "stabhull/parallel.hpp"

namespace stabhull {

GridSpec build_grid(const Square& sigma, double lb_opt, double eps) {
    if (lb_opt <= 0.0 || eps <= 0.0) throw std::invalid_argument("build_grid: need positive lb_opt, eps");
    double target = (eps / 8.0) * lb_opt;
    int cells = std::max(1, static_cast<int>(std::ceil(sigma.side / target)));
    double edge = sigma.side / static_cast<double>(cells);
    GridSpec g;
    g.origin = sigma.center + rotated({-0.5 * sigma.side, -0.5 * sigma.side}, sigma.axis_angle);
    g.ex = rotated({edge, 0.0}, sigma.axis_angle);
    g.ey = rotated({0.0, edge}, sigma.axis_angle);
    g.cols = cells;
    g.rows = cells;
    return g;
}

GridDpResult dp_perimeter(const AngularVertexOrder& order, const std::vector<ConvexObject>& objects,
                          double prune_bound, double tol) {
    return grid_dp(order, objects, /*area_objective=*/false, prune_bound, tol);
}

namespace {

Solution point_solution(Point2 p, size_t n_objects, Objective obj, const std::string& branch,
                        double eps) {
    Solution s;
    s.objective = obj;
    s.value = 0.0;
    s.polygon = ConvexPolygon{{p}};
    s.witnesses.assign(n_objects, p);
    s.branch = branch;
    s.eps = eps;
    return s;
}

struct AnchorOutcome {
    double value = kInf;
    ConvexPolygon polygon;
};

// Refinement rounds only look near the incumbent: anchors near its
// lexicographic-min vertex, vertices near its boundary.
struct Focus {
    ConvexPolygon incumbent;
    double radius = 0.0;
};

// One DP round over every lattice point of `grid` as the anchor guess, in the
// axis-aligned frame of sigma. `bound` prunes: any polygon beating it has all
// vertices within bound/2 of every object and of its own anchor.
AnchorOutcome run_round(const std::vector<ConvexObject>& objs_frame, const GridSpec& grid,
                        double bound, const SolverConfig& cfg, const Focus* focus) {
    std::vector<Point2> pts;
    pts.reserve(static_cast<size_t>(grid.point_count()));
    for (int j = 0; j <= grid.rows; ++j)
        for (int i = 0; i <= grid.cols; ++i) pts.push_back(grid.point(i, j));

    double pad = 2.0 * grid.cell_edge() + 1e-9;
    double half = 0.5 * bound + pad;
    Point2 lexmin{};
    if (focus) {
        lexmin = focus->incumbent.v.front();
        for (const auto& p : focus->incumbent.v)
            if (p.y < lexmin.y || (p.y == lexmin.y && p.x < lexmin.x)) lexmin = p;
    }
    ConvexObject focus_poly;
    if (focus) {
        focus_poly = focus->incumbent.v.size() >= 3 ? ConvexObject::make_polygon(focus->incumbent.v)
                     : focus->incumbent.v.size() == 2
                         ? ConvexObject::make_segment(focus->incumbent.v[0], focus->incumbent.v[1])
                         : ConvexObject::make_point(focus->incumbent.v[0]);
    }
    std::vector<Point2> usable;
    for (const auto& p : pts) {
        if (focus && distance_point_object(p, focus_poly) > focus->radius) continue;
        bool ok = true;
        for (const auto& o : objs_frame)
            if (distance_point_object(p, o) > half) {
                ok = false;
                break;
            }
        if (ok) usable.push_back(p);
    }
    if (usable.empty()) return {};

    // Highest reachable y per object, for the lexicographic-min anchor filter.
    std::vector<double> maxy(objs_frame.size(), -kInf);
    for (size_t i = 0; i < objs_frame.size(); ++i) {
        const auto& o = objs_frame[i];
        for (const auto& q : object_vertices(o)) maxy[i] = std::max(maxy[i], q.y);
        if (o.kind == ObjectKind::ray && o.dir.y > 1e-15) maxy[i] = kInf;
        if (o.kind == ObjectKind::line && std::abs(o.dir.y) > 1e-15) maxy[i] = kInf;
    }

    std::vector<int> anchors;
    for (size_t ai = 0; ai < usable.size(); ++ai) {
        if (focus && dist(usable[ai], lexmin) > focus->radius) continue;
        bool ok = true;
        for (size_t i = 0; i < objs_frame.size(); ++i)
            if (maxy[i] < usable[ai].y - 1e-9) {
                ok = false;
                break;
            }
        if (ok) anchors.push_back(static_cast<int>(ai));
    }

    std::vector<AnchorOutcome> results(anchors.size());
    parallel_for(static_cast<int>(anchors.size()), cfg.threads, [&](int t) {
        Point2 anchor = usable[static_cast<size_t>(anchors[static_cast<size_t>(t)])];
        std::vector<Point2> cands;
        for (const auto& p : usable) {
            if (dist(p, anchor) > half) continue;
            bool ok = true;
            for (const auto& o : objs_frame) {
                if (dist(anchor, p) + min_detour_via_object(p, anchor, o) > bound + pad) {
                    ok = false;
                    break;
                }
            }
            if (ok) cands.push_back(p);
        }
        auto order = make_angular_order(anchor, cands, cfg.tol);
        auto r = grid_dp(order, objs_frame, false, bound + pad, cfg.tol);
        if (r.value < kInf) {
            results[static_cast<size_t>(t)].value = r.value;
            results[static_cast<size_t>(t)].polygon = std::move(r.polygon);
        }
    });

    AnchorOutcome best;
    for (auto& r : results)
        if (r.value < best.value) best = std::move(r);
    return best;
}

}  // namespace

Solution solve_perimeter(const std::vector<ConvexObject>& objects, double eps,
                         const SolverConfig& cfg) {
    if (objects.empty()) throw std::invalid_argument("solve_perimeter: empty input");
    if (eps <= 0.0 || eps > 1.0) throw std::invalid_argument("solve_perimeter: need 0 < eps <= 1");

    auto common = common_point_check(objects, cfg.tol);
    if (common.point)
        return point_solution(*common.point, objects.size(), Objective::perimeter, "common_point",
                              eps);

    double eps1 = eps / (2.0 + eps);
    RectResult rr = min_perimeter_rect(objects, eps1);
    double peri_r = rr.rect.perimeter();
    if (peri_r <= cfg.tol)
        return point_solution(rr.rect.center, objects.size(), Objective::perimeter, "rectangle",
                              eps);

    Square sigma = localization_square(rr.rect);
    double lb_opt = peri_r * kPi / (4.0 * (1.0 + eps1));

    // Work in the axis-aligned frame of sigma.
    double theta = sigma.axis_angle;
    std::vector<ConvexObject> objs_frame;
    objs_frame.reserve(objects.size());
    for (const auto& o : objects) objs_frame.push_back(transformed(o, -theta, {0.0, 0.0}));
    Square sigma_frame{rotated(sigma.center, -theta), 0.0, sigma.side};

    GridSpec grid = build_grid(sigma_frame, lb_opt, eps);
    bool capped = false;
    if (grid.cols > cfg.dp_cells) {
        capped = true;
        double edge = sigma.side / static_cast<double>(cfg.dp_cells);
        grid.ex = {edge, 0.0};
        grid.ey = {0.0, edge};
        grid.cols = cfg.dp_cells;
        grid.rows = cfg.dp_cells;
    }

    double best_value = peri_r;
    ConvexPolygon best_polygon;  // frame coordinates
    for (const auto& p : rr.rect.polygon().v) best_polygon.v.push_back(rotated(p, -theta));
    bool dp_won = false;

    GridSpec round_grid = grid;
    double prev_cell = grid.cell_edge();
    Focus focus;
    for (int round = 0; round <= cfg.refine_rounds; ++round) {
        focus.incumbent = best_polygon;
        focus.radius = 2.5 * prev_cell;
        AnchorOutcome out =
            run_round(objs_frame, round_grid, best_value, cfg, round == 0 ? nullptr : &focus);
        if (out.value < best_value) {
            best_value = out.value;
            best_polygon = out.polygon;
            dp_won = true;
        }
        if (round == cfg.refine_rounds) break;
        if (best_polygon.v.size() < 2) break;
        prev_cell = round_grid.cell_edge();
        // Refine locally around the incumbent.
        double minx = kInf, maxx = -kInf, miny = kInf, maxy = -kInf;
        for (const auto& p : best_polygon.v) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        double margin = 2.0 * round_grid.cell_edge();
        double side = std::max(maxx - minx, maxy - miny) + 2.0 * margin;
        // halve the cell per round at most, else the focus band gets too rich
        double new_edge = std::max(side / static_cast<double>(cfg.dp_cells),
                                   0.5 * round_grid.cell_edge());
        if (new_edge >= 0.9 * round_grid.cell_edge()) break;
        int cells = std::max(4, static_cast<int>(std::ceil(side / new_edge)));
        GridSpec g;
        g.origin = {0.5 * (minx + maxx) - 0.5 * side, 0.5 * (miny + maxy) - 0.5 * side};
        g.ex = {side / cells, 0.0};
        g.ey = {0.0, side / cells};
        g.cols = cells;
        g.rows = cells;
        round_grid = g;
    }

    Solution s;
    s.objective = Objective::perimeter;
    s.eps = eps;
    ConvexPolygon world;
    world.v.reserve(best_polygon.v.size());
    for (const auto& p : best_polygon.v) world.v.push_back(rotated(p, theta));
    s.polygon = std::move(world);
    s.branch = dp_won ? "grid_dp" : "rectangle";
    s.value = s.polygon.perimeter();
    if (capped) s.caveats.push_back("grid_capped");
    s.witnesses.reserve(objects.size());
    for (const auto& o : objects) {
        auto w = intersection_witness(o, s.polygon, std::max(cfg.tol, 1e-7));
        if (!w) throw std::runtime_error("solve_perimeter: produced an infeasible polygon");
        s.witnesses.push_back(*w);
    }
    return s;
}

}  // namespace stabhull
