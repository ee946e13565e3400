#include "stabhull/dp_grid.hpp"

#include <algorithm>
#include <cmath>

namespace stabhull {

namespace {

constexpr Vec2 kRay0{-1.0, 0.0};

struct WMasks {
    ObjMask wedge = 0;   // hits the closed wedge from ray0 cw to rho(w)
    ObjMask ray = 0;     // hits rho(w), the full ray from the anchor through w
    ObjMask seg = 0;     // hits segment anchor..w
    ObjMask star = 0;    // hits rho*(w), the part of rho(w) from w on
    std::vector<Line2> tangent;  // supporting line at first rho*(w) hit, per object
};

WMasks masks_for(const AngularVertexOrder& order, int w_idx,
                 const std::vector<ConvexObject>& objects, double tol) {
    WMasks m;
    m.tangent.resize(objects.size());
    Point2 a = order.anchor;
    bool sent = w_idx == order.sentinel();
    Point2 w = sent ? a : order.vertices[static_cast<size_t>(w_idx)];
    Vec2 rdir = sent ? Vec2{1.0, 0.0} : normalized(w - a);
    double wedge_angle = sent ? kPi : order.phi[static_cast<size_t>(w_idx)];
    for (size_t i = 0; i < objects.size(); ++i) {
        const auto& o = objects[i];
        ObjMask bit = ObjMask{1} << i;
        if (object_hits_wedge(a, kRay0, wedge_angle, o, tol)) m.wedge |= bit;
        if (object_hits_ray(o, a, rdir, tol)) m.ray |= bit;
        if (sent ? point_in_object(a, o, tol) : object_hits_segment(o, a, w, tol)) m.seg |= bit;
        if (auto hit = first_hit_tangent(w, rdir, o, tol)) {
            m.star |= bit;
            m.tangent[i] = hit->tangent;
        }
    }
    return m;
}

// Does `line` meet the half-line that contains edge vw and ends at w
// (the ray from w through v, extended beyond v)?
bool tangent_meets_backray(const Line2& line, Point2 w, Point2 v, double tol) {
    Vec2 rdir = v - w;
    double rn = norm(rdir);
    if (rn <= 1e-15) return true;
    double denom = cross(line.dir, rdir);
    if (std::abs(denom) <= 1e-14 * norm(line.dir) * rn) {
        // parallel: meets iff w lies on the line
        return std::abs(cross(line.dir, w - line.anchor)) <= tol * norm(line.dir);
    }
    double t = cross(line.dir, line.anchor - w) / denom;
    return t >= -tol / rn;
}

ObjMask coverage_from_masks(const WMasks& m, const AngularVertexOrder& order, int v_idx, int w_idx,
                            const std::vector<ConvexObject>& objects, double tol) {
    Point2 w = order.point_of(w_idx);
    Point2 v = order.point_of(v_idx);
    ObjMask out = (m.wedge & ~m.ray) | m.seg;
    ObjMask cand = m.star & ~m.seg;
    for (size_t i = 0; i < objects.size(); ++i) {
        ObjMask bit = ObjMask{1} << i;
        if (!(cand & bit)) continue;
        if (tangent_meets_backray(m.tangent[i], w, v, tol)) out |= bit;
    }
    return out;
}

}  // namespace

AngularVertexOrder make_angular_order(Point2 anchor, std::span<const Point2> candidates,
                                      double tol) {
    AngularVertexOrder order;
    order.anchor = anchor;
    for (const auto& p : candidates) {
        if (p.y < anchor.y - tol) continue;
        if (std::abs(p.y - anchor.y) <= tol && p.x <= anchor.x + tol) continue;  // on rho0 or anchor
        order.vertices.push_back(p);
    }
    std::vector<size_t> idx(order.vertices.size());
    std::vector<double> phi(order.vertices.size()), r(order.vertices.size());
    for (size_t i = 0; i < order.vertices.size(); ++i) {
        idx[i] = i;
        phi[i] = cw_angle(kRay0, order.vertices[i] - anchor);
        r[i] = dist(order.vertices[i], anchor);
    }
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
        if (phi[i] != phi[j]) return phi[i] < phi[j];
        if (r[i] != r[j]) return r[i] < r[j];
        const Point2 &a = order.vertices[i], &b = order.vertices[j];
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    AngularVertexOrder out;
    out.anchor = anchor;
    out.vertices.reserve(idx.size());
    out.phi.reserve(idx.size());
    for (size_t i : idx) {
        out.vertices.push_back(order.vertices[i]);
        out.phi.push_back(phi[i]);
    }
    return out;
}

ObjMask coverage_set(const AngularVertexOrder& order, int v_index, int w_index,
                     const std::vector<ConvexObject>& objects, double tol) {
    WMasks m = masks_for(order, w_index, objects, tol);
    return coverage_from_masks(m, order, v_index, w_index, objects, tol);
}

GridDpResult grid_dp(const AngularVertexOrder& order, const std::vector<ConvexObject>& objects,
                     bool area_objective, double prune_bound, double tol) {
    const int m = static_cast<int>(order.vertices.size());
    const int sent = m;
    const size_t n = objects.size();
    if (n > 64) throw std::invalid_argument("grid_dp: more than 64 objects");
    const ObjMask full = n == 64 ? ~ObjMask{0} : ((ObjMask{1} << n) - 1);
    const Point2 a = order.anchor;

    GridDpResult result;
    if (m == 0) return result;

    // Per-w condition masks and tangent lines, computed once.
    std::vector<WMasks> wm(static_cast<size_t>(m) + 1);
    std::vector<ObjMask> base_mask(static_cast<size_t>(m) + 1);
    for (int w = 0; w <= sent; ++w) {
        wm[static_cast<size_t>(w)] = masks_for(order, w, objects, tol);
        const auto& mk = wm[static_cast<size_t>(w)];
        base_mask[static_cast<size_t>(w)] = (mk.wedge & ~mk.ray) | mk.seg;
    }

    auto edge_cost = [&](Point2 p, Point2 q) {
        return area_objective ? 0.5 * std::abs(cross(p - a, q - a)) : dist(p, q);
    };

    const double keep = prune_bound * (1.0 + 1e-12) + 1e-15;
    std::vector<double> dist_a(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) dist_a[static_cast<size_t>(i)] = dist(order.vertices[static_cast<size_t>(i)], a);

    // A[w*m + v]: best chain ending with edge v->w. base_a[w]: v == anchor.
    std::vector<double> table(static_cast<size_t>(m + 1) * static_cast<size_t>(m), kInf);
    std::vector<int> pred(static_cast<size_t>(m + 1) * static_cast<size_t>(m), -2);
    std::vector<double> base_a(static_cast<size_t>(m) + 1, kInf);

    auto at = [&](int v, int w) -> double& {
        return table[static_cast<size_t>(w) * static_cast<size_t>(m) + static_cast<size_t>(v)];
    };
    auto pred_at = [&](int v, int w) -> int& {
        return pred[static_cast<size_t>(w) * static_cast<size_t>(m) + static_cast<size_t>(v)];
    };

    double best_value = kInf;
    int best_final_v = -2;

    // finite predecessors per column, ascending by value
    std::vector<std::vector<std::pair<double, int>>> col_sorted(static_cast<size_t>(m));
    std::vector<char> col_ready(static_cast<size_t>(m), 0);
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

    for (int w = 0; w <= sent; ++w) {
        const auto& mk = wm[static_cast<size_t>(w)];
        Point2 wp = order.point_of(w);
        double phi_w = w == sent ? kInf : order.phi[static_cast<size_t>(w)];
        double close_lb = 0.0;
        if (!area_objective) close_lb = w == sent ? 0.0 : dist_a[static_cast<size_t>(w)];

        // Base case: single edge anchor->w.
        {
            ObjMask need = coverage_from_masks(mk, order, -1, w, objects, tol);
            if ((need & ~mk.seg) == 0) {
                double val = area_objective ? 0.0 : (w == sent ? 0.0 : dist_a[static_cast<size_t>(w)]);
                if (val + close_lb < keep) base_a[static_cast<size_t>(w)] = val;
            }
        }

        for (int v = 0; v < (w == sent ? m : w); ++v) {
            if (w != sent && order.phi[static_cast<size_t>(v)] >= phi_w - 1e-14) continue;
            bool has_base = base_a[static_cast<size_t>(v)] < kInf;
            const auto& preds = sorted_col(v);
            if (!has_base && preds.empty()) continue;
            Point2 vp = order.vertices[static_cast<size_t>(v)];
            double ec = edge_cost(vp, wp);
            if (!area_objective) {
                double lb = dist_a[static_cast<size_t>(v)] + ec + (w == sent ? 0.0 : dist_a[static_cast<size_t>(w)]);
                if (lb >= keep) continue;
            } else if (ec >= keep) {
                continue;
            }

            ObjMask cov = coverage_from_masks(mk, order, v, w, objects, tol);
            ObjMask tri = 0;
            {
                ObjMask probe = cov;
                for (size_t i = 0; i < n; ++i) {
                    ObjMask bit = ObjMask{1} << i;
                    if (!(probe & bit)) continue;
                    if (object_hits_triangle(objects[i], a, vp, wp, tol)) tri |= bit;
                }
            }
            ObjMask need = cov & ~tri;
            ObjMask req = need & ~base_mask[static_cast<size_t>(v)];
            const auto& vm = wm[static_cast<size_t>(v)];
            if (req & ~(vm.star & ~vm.seg)) continue;  // no predecessor can cover these

            auto u_covers_req = [&](Point2 up) {
                ObjMask left = req;
                for (size_t i = 0; i < n && left; ++i) {
                    ObjMask bit = ObjMask{1} << i;
                    if (!(left & bit)) continue;
                    if (!tangent_meets_backray(vm.tangent[i], vp, up, tol)) return false;
                    left &= ~bit;
                }
                return true;
            };

            double best_u = kInf;
            int best_u_idx = -2;
            // anchor as predecessor; for the closing edge the three points are
            // collinear by construction (the doubled-segment case), so the
            // right-turn requirement is waived there
            bool anchor_turn_ok = w == sent || cross(wp - vp, a - vp) < 0.0;
            if (has_base && anchor_turn_ok && (req == 0 || u_covers_req(a))) {
                best_u = base_a[static_cast<size_t>(v)];
                best_u_idx = -1;
            }
            for (const auto& [cand, u] : preds) {
                if (cand >= best_u) break;  // ascending: no better candidate follows
                if (order.phi[static_cast<size_t>(u)] >= order.phi[static_cast<size_t>(v)] - 1e-14) continue;
                Point2 up = order.vertices[static_cast<size_t>(u)];
                if (cross(wp - vp, up - vp) >= 0.0) continue;
                if (req != 0 && !u_covers_req(up)) continue;
                best_u = cand;
                best_u_idx = u;
                break;
            }
            if (best_u_idx == -2) continue;
            double val = ec + best_u;
            if (val + close_lb >= keep) continue;
            at(v, w) = val;
            pred_at(v, w) = best_u_idx;

            if (w == sent && cov == full && val < best_value) {
                best_value = val;
                best_final_v = v;
            }
        }
    }

    if (best_final_v == -2) return result;

    std::vector<Point2> chain;
    chain.push_back(a);
    std::vector<int> rev;
    int v = best_final_v, w = sent;
    while (v >= 0) {
        rev.push_back(v);
        int u = pred_at(v, w);
        w = v;
        v = u;
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        chain.push_back(order.vertices[static_cast<size_t>(*it)]);
    result.value = best_value;
    result.polygon = convex_hull(chain);
    return result;
}

}  // namespace stabhull
