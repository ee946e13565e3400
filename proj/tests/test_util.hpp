#pragma once

// Shared test helpers: seeded instance generators and the independent
// brute-force oracles used to freeze expected values. These deliberately
// avoid the solver code paths they are used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "stabhull/geom.hpp"
#include "stabhull/types.hpp"

namespace testutil {

using namespace stabhull;

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(0x5eed0000ull + seed); }

inline Point2 random_point(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return {d(rng), d(rng)};
}

inline std::vector<ConvexObject> random_segments(std::mt19937_64& rng, int count, double lo = 0.0,
                                                 double hi = 1.0) {
    std::vector<ConvexObject> out;
    for (int i = 0; i < count; ++i)
        out.push_back(ConvexObject::make_segment(random_point(rng, lo, hi), random_point(rng, lo, hi)));
    return out;
}

inline ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int points, double lo = 0.0,
                                           double hi = 1.0) {
    std::vector<Point2> pts;
    for (int i = 0; i < points; ++i) pts.push_back(random_point(rng, lo, hi));
    return convex_hull(pts);
}

inline std::vector<ConvexObject> unit_triangle_edges() {
    Point2 a{0.0, 0.0}, b{1.0, 0.0}, c{0.5, std::sqrt(3.0) / 2.0};
    return {ConvexObject::make_segment(a, b), ConvexObject::make_segment(b, c),
            ConvexObject::make_segment(c, a)};
}

inline double object_object_distance(const ConvexObject& a, const ConvexObject& b) {
    double best = kInf;
    for (const auto& p : object_vertices(a)) best = std::min(best, distance_point_object(p, b));
    for (const auto& p : object_vertices(b)) best = std::min(best, distance_point_object(p, a));
    return best;
}

/// 2 * max pairwise object distance: a certified lower bound on the minimum
/// perimeter (the solution must reach both objects of the farthest pair).
inline double perimeter_lower_bound(const std::vector<ConvexObject>& objs) {
    double d = 0.0;
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = i + 1; j < objs.size(); ++j)
            d = std::max(d, object_object_distance(objs[i], objs[j]));
    return 2.0 * d;
}

// --- Khachiyan-style minimum covering ellipse (independent oracle) ---------

struct KhachiyanEllipse {
    Point2 center;
    double area = kInf;
};

inline KhachiyanEllipse khachiyan_mvee(const std::vector<Point2>& pts, double eps = 1e-9,
                                       int max_iters = 2000000) {
    size_t n = pts.size();
    std::vector<double> u(n, 1.0 / static_cast<double>(n));
    auto solve3 = [](std::array<double, 9> m, std::array<double, 3> b) {
        // Gaussian elimination, 3x3
        std::array<int, 3> pc{0, 1, 2};
        (void)pc;
        for (int c = 0; c < 3; ++c) {
            int pr = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::abs(m[static_cast<size_t>(r * 3 + c)]) >
                    std::abs(m[static_cast<size_t>(pr * 3 + c)]))
                    pr = r;
            for (int k = 0; k < 3; ++k)
                std::swap(m[static_cast<size_t>(c * 3 + k)], m[static_cast<size_t>(pr * 3 + k)]);
            std::swap(b[static_cast<size_t>(c)], b[static_cast<size_t>(pr)]);
            double piv = m[static_cast<size_t>(c * 3 + c)];
            for (int r = 0; r < 3; ++r) {
                if (r == c) continue;
                double f = m[static_cast<size_t>(r * 3 + c)] / piv;
                for (int k = 0; k < 3; ++k)
                    m[static_cast<size_t>(r * 3 + k)] -= f * m[static_cast<size_t>(c * 3 + k)];
                b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(c)];
            }
        }
        return std::array<double, 3>{b[0] / m[0], b[1] / m[4], b[2] / m[8]};
    };

    // Frank-Wolfe with away steps (linear convergence, unlike the plain update)
    for (int it = 0; it < max_iters; ++it) {
        std::array<double, 9> m{};
        for (size_t i = 0; i < n; ++i) {
            std::array<double, 3> q{pts[i].x, pts[i].y, 1.0};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    m[static_cast<size_t>(r * 3 + c)] += u[i] * q[static_cast<size_t>(r)] * q[static_cast<size_t>(c)];
        }
        double kappa_max = -kInf, w_min = kInf;
        size_t jmax = 0, jmin = 0;
        for (size_t i = 0; i < n; ++i) {
            std::array<double, 3> q{pts[i].x, pts[i].y, 1.0};
            auto x = solve3(m, q);
            double w = q[0] * x[0] + q[1] * x[1] + q[2] * x[2];
            if (w > kappa_max) {
                kappa_max = w;
                jmax = i;
            }
            if (u[i] > 1e-14 && w < w_min) {
                w_min = w;
                jmin = i;
            }
        }
        double eps_plus = kappa_max / 3.0 - 1.0;
        double eps_minus = 1.0 - w_min / 3.0;
        if (eps_plus <= eps && eps_minus <= eps) break;
        if (eps_plus >= eps_minus) {
            double step = (kappa_max - 3.0) / (3.0 * (kappa_max - 1.0));
            for (size_t i = 0; i < n; ++i) u[i] *= (1.0 - step);
            u[jmax] += step;
        } else {
            double cap = u[jmin] / (1.0 - u[jmin]);
            double step = w_min > 1.0 + 1e-12
                              ? std::min((3.0 - w_min) / (3.0 * (w_min - 1.0)), cap)
                              : cap;
            for (size_t i = 0; i < n; ++i) u[i] *= (1.0 + step);
            u[jmin] -= step;
            if (u[jmin] < 0.0) u[jmin] = 0.0;
            double total = 0.0;
            for (double v : u) total += v;
            for (double& v : u) v /= total;
        }
    }

    KhachiyanEllipse out;
    Point2 c{0.0, 0.0};
    for (size_t i = 0; i < n; ++i) c = c + u[i] * pts[i];
    out.center = c;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += u[i] * pts[i].x * pts[i].x;
        sxy += u[i] * pts[i].x * pts[i].y;
        syy += u[i] * pts[i].y * pts[i].y;
    }
    sxx -= c.x * c.x;
    sxy -= c.x * c.y;
    syy -= c.y * c.y;
    // (p-c)^T A (p-c) <= 1 with A = inv([sxx sxy; sxy syy]) / 2
    double det = sxx * syy - sxy * sxy;
    if (det <= 0.0) return out;
    double a00 = syy / det / 2.0, a01 = -sxy / det / 2.0, a11 = sxx / det / 2.0;
    double det_a = a00 * a11 - a01 * a01;
    // scale so every input point is covered (removes residual dual bias)
    double s = 0.0;
    for (const auto& p : pts) {
        double dx = p.x - c.x, dy = p.y - c.y;
        s = std::max(s, a00 * dx * dx + 2.0 * a01 * dx * dy + a11 * dy * dy);
    }
    out.area = s * kPi / std::sqrt(det_a);
    return out;
}

// --- exhaustive convex grid-polygon enumeration (branch and bound) ---------

struct EnumResult {
    double value = kInf;
    std::vector<Point2> polygon;
};

/// Exact minimum over all convex polygons with vertices on `pts` that meet
/// every object; pruning only discards chains already no better than the
/// incumbent, so the result is the true optimum.
inline EnumResult enumerate_grid_polygons(const std::vector<Point2>& pts,
                                          const std::vector<ConvexObject>& objects,
                                          bool area_objective, double tol = 1e-9) {
    EnumResult best;
    auto feasible = [&](const std::vector<Point2>& chain) {
        ConvexPolygon poly{chain};
        if (chain.size() >= 3) poly = convex_hull(chain);
        for (const auto& o : objects)
            if (!intersects(o, poly, tol)) return false;
        return true;
    };

    for (const auto& anchor : pts) {
        struct Cand {
            Point2 p;
            double phi, r;
        };
        std::vector<Cand> cands;
        for (const auto& p : pts) {
            if (p.y < anchor.y - tol) continue;
            if (std::abs(p.y - anchor.y) <= tol && p.x <= anchor.x + tol) continue;
            cands.push_back({p, cw_angle({-1.0, 0.0}, p - anchor), dist(p, anchor)});
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.phi != b.phi) return a.phi < b.phi;
            return a.r < b.r;
        });

        std::vector<Point2> chain{anchor};
        std::function<void(int, double)> dfs = [&](int from, double cost) {
            // close the polygon
            if (chain.size() >= 2) {
                double closing = area_objective ? 0.0 : dist(chain.back(), anchor);
                double total = cost + closing;
                if (total < best.value) {
                    // closed polygon must stay convex at the last and first bend
                    bool ok = true;
                    if (chain.size() >= 3) {
                        Point2 a = chain[chain.size() - 2], b = chain.back();
                        ok = cross(b - a, anchor - b) < 0.0 &&
                             cross(anchor - b, chain[1] - anchor) < 0.0;
                    }
                    if (ok && feasible(chain)) {
                        best.value = total;
                        best.polygon = chain;
                    }
                }
            }
            for (int i = from; i < static_cast<int>(cands.size()); ++i) {
                const Cand& c = cands[static_cast<size_t>(i)];
                Point2 last = chain.back();
                if (chain.size() >= 2) {
                    Point2 prev = chain[chain.size() - 2];
                    if (cross(last - prev, c.p - last) >= 0.0) continue;  // must turn right
                    if (cw_angle({-1.0, 0.0}, last - anchor) >= c.phi - 1e-14) continue;
                }
                double step = area_objective ? 0.5 * std::abs(cross(last - anchor, c.p - anchor))
                                             : dist(last, c.p);
                double lower = cost + step + (area_objective ? 0.0 : dist(c.p, anchor));
                if (lower >= best.value) continue;
                chain.push_back(c.p);
                dfs(i + 1, cost + step);
                chain.pop_back();
            }
        };
        dfs(0, 0.0);
    }
    return best;
}

// --- dense angle sweep: does any line stab all objects? --------------------

inline bool sweep_has_stabbing_line(const std::vector<ConvexObject>& objs, int angles = 3600) {
    for (int k = 0; k < angles; ++k) {
        double theta = kPi * static_cast<double>(k) / angles;
        Vec2 n{std::cos(theta), std::sin(theta)};
        double lo = -kInf, hi = kInf;
        for (const auto& o : objs) {
            double olo = kInf, ohi = -kInf;
            for (const auto& p : object_vertices(o)) {
                olo = std::min(olo, dot(n, p));
                ohi = std::max(ohi, dot(n, p));
            }
            if (o.kind == ObjectKind::ray) {
                if (dot(n, o.dir) > 1e-12) ohi = kInf;
                if (dot(n, o.dir) < -1e-12) olo = -kInf;
            }
            if (o.kind == ObjectKind::line && std::abs(dot(n, o.dir)) > 1e-12) {
                olo = -kInf;
                ohi = kInf;
            }
            lo = std::max(lo, olo);
            hi = std::min(hi, ohi);
        }
        if (lo <= hi + 1e-12) return true;
    }
    return false;
}

// --- common-point feasibility via fine grid sampling ------------------------

inline bool grid_sample_common_point(const std::vector<ConvexObject>& objs, double lo, double hi,
                                     int n, double tol) {
    double step = (hi - lo) / n;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            Point2 p{lo + step * i, lo + step * j};
            bool all = true;
            for (const auto& o : objs)
                if (!point_in_object(p, o, tol)) {
                    all = false;
                    break;
                }
            if (all) return true;
        }
    return false;
}

}  // namespace testutil
