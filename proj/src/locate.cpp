#include "stabhull/locate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "stabhull/simplex.hpp"

namespace stabhull {

ConvexPolygon OrientedRect::polygon() const {
    std::vector<Point2> corners;
    for (auto [sx, sy] : {std::pair{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}})
        corners.push_back(center + rotated({sx * half_width, sy * half_height}, axis_angle));
    return convex_hull(corners);
}

double Ellipse::quad_eval(Point2 p) const {
    Vec2 u = rotated(p - center, -angle);
    double xa = u.x / a, yb = u.y / b;
    return xa * xa + yb * yb;
}

Point2 Ellipse::to_unit_circle(Point2 p) const {
    Vec2 u = rotated(p - center, -angle);
    return {u.x / a, u.y / b};
}

Point2 Ellipse::from_unit_circle(Point2 u) const {
    return center + rotated({u.x * a, u.y * b}, angle);
}

// ---------------------------------------------------------------------------
// A1: minimum-perimeter intersecting rectangle.

namespace {

struct OrientedFit {
    double x1, x2, y1, y2;
    std::vector<Point2> witnesses_rot;
};

std::optional<OrientedFit> fit_rectangle(const std::vector<ConvexObject>& objects, double theta) {
    std::vector<ConvexObject> rot;
    rot.reserve(objects.size());
    for (const auto& o : objects) rot.push_back(transformed(o, -theta, {0.0, 0.0}));

    // Vars: x1,x2,y1,y2 then one block per object (segment/ray/line parameter or
    // polygon convex-combination weights).
    LinearProgram lp;
    std::vector<int> block_start(rot.size(), -1);
    int nv = 4;
    for (size_t i = 0; i < rot.size(); ++i) {
        block_start[i] = nv;
        switch (rot[i].kind) {
            case ObjectKind::point: break;
            case ObjectKind::segment:
            case ObjectKind::ray:
            case ObjectKind::line: nv += 1; break;
            case ObjectKind::polygon: nv += static_cast<int>(rot[i].pts.size()); break;
        }
    }
    lp.num_vars = nv;
    lp.objective.assign(nv, 0.0);
    lp.objective[0] = 1.0;   // maximize x1 - x2 + y1 - y2 == minimize width+height
    lp.objective[1] = -1.0;
    lp.objective[2] = 1.0;
    lp.objective[3] = -1.0;

    auto row = [&](int coord_var, double sign) {
        // sign=+1:  coord_var - p_coord <= 0 ;  sign=-1: p_coord - coord_var <= 0
        std::vector<double> a(nv, 0.0);
        a[coord_var] = sign;
        return a;
    };

    for (size_t i = 0; i < rot.size(); ++i) {
        const auto& o = rot[i];
        int bs = block_start[i];
        auto add_box_rows = [&](auto fill_px, auto fill_py, double const_px, double const_py) {
            for (int c = 0; c < 4; ++c) {
                int coord_var = c;
                double sign = (c == 0 || c == 2) ? 1.0 : -1.0;  // x1<=px, px<=x2, y1<=py, py<=y2
                std::vector<double> a = row(coord_var, sign);
                double b = 0.0;
                if (c < 2) {
                    fill_px(a, -sign);
                    b = sign * const_px;
                } else {
                    fill_py(a, -sign);
                    b = sign * const_py;
                }
                lp.add_le(std::move(a), b);
            }
        };
        switch (o.kind) {
            case ObjectKind::point: {
                Point2 p = o.pts[0];
                add_box_rows([&](auto&, double) {}, [&](auto&, double) {}, p.x, p.y);
                break;
            }
            case ObjectKind::segment:
            case ObjectKind::ray:
            case ObjectKind::line: {
                Point2 base = o.pts[0];
                Vec2 e = o.kind == ObjectKind::segment ? o.pts[1] - o.pts[0] : o.dir;
                add_box_rows([&](std::vector<double>& a, double s) { a[bs] += s * e.x; },
                             [&](std::vector<double>& a, double s) { a[bs] += s * e.y; }, base.x,
                             base.y);
                if (o.kind != ObjectKind::line) {
                    std::vector<double> a(nv, 0.0);
                    a[bs] = -1.0;
                    lp.add_le(std::move(a), 0.0);  // t >= 0
                }
                if (o.kind == ObjectKind::segment) {
                    std::vector<double> a(nv, 0.0);
                    a[bs] = 1.0;
                    lp.add_le(std::move(a), 1.0);  // t <= 1
                }
                break;
            }
            case ObjectKind::polygon: {
                size_t k = o.pts.size();
                add_box_rows(
                    [&](std::vector<double>& a, double s) {
                        for (size_t j = 0; j < k; ++j) a[bs + static_cast<int>(j)] += s * o.pts[j].x;
                    },
                    [&](std::vector<double>& a, double s) {
                        for (size_t j = 0; j < k; ++j) a[bs + static_cast<int>(j)] += s * o.pts[j].y;
                    },
                    0.0, 0.0);
                std::vector<double> eq(nv, 0.0);
                for (size_t j = 0; j < k; ++j) eq[bs + static_cast<int>(j)] = 1.0;
                lp.add_eq(std::move(eq), 1.0);
                for (size_t j = 0; j < k; ++j) {
                    std::vector<double> a(nv, 0.0);
                    a[bs + static_cast<int>(j)] = -1.0;
                    lp.add_le(std::move(a), 0.0);  // lambda_j >= 0
                }
                break;
            }
        }
    }

    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) return std::nullopt;
    OrientedFit fit;
    fit.x1 = sol.x[0];
    fit.x2 = sol.x[1];
    fit.y1 = sol.x[2];
    fit.y2 = sol.x[3];
    for (size_t i = 0; i < rot.size(); ++i) {
        const auto& o = rot[i];
        int bs = block_start[i];
        Point2 w{};
        switch (o.kind) {
            case ObjectKind::point: w = o.pts[0]; break;
            case ObjectKind::segment: w = o.pts[0] + sol.x[bs] * (o.pts[1] - o.pts[0]); break;
            case ObjectKind::ray:
            case ObjectKind::line: w = o.pts[0] + sol.x[bs] * o.dir; break;
            case ObjectKind::polygon: {
                for (size_t j = 0; j < o.pts.size(); ++j) w = w + sol.x[bs + static_cast<int>(j)] * o.pts[j];
                break;
            }
        }
        fit.witnesses_rot.push_back(w);
    }
    return fit;
}

}  // namespace

RectResult min_perimeter_rect(const std::vector<ConvexObject>& objects, double eps1) {
    if (objects.empty()) throw std::invalid_argument("min_perimeter_rect: empty input");
    if (eps1 <= 0.0) throw std::invalid_argument("min_perimeter_rect: eps1 must be positive");
    int m = static_cast<int>(std::ceil(kPi / (4.0 * eps1)));
    double step = (kPi / 2.0) / static_cast<double>(m);

    RectResult best;
    double best_value = kInf;
    for (int k = 0; k < m; ++k) {
        double theta = static_cast<double>(k) * step;
        auto fit = fit_rectangle(objects, theta);
        if (!fit) continue;
        double value = (fit->x2 - fit->x1) + (fit->y2 - fit->y1);
        if (value < best_value) {
            best_value = value;
            Point2 c_rot{0.5 * (fit->x1 + fit->x2), 0.5 * (fit->y1 + fit->y2)};
            best.rect.center = rotated(c_rot, theta);
            best.rect.axis_angle = theta;
            best.rect.half_width = std::max(0.0, 0.5 * (fit->x2 - fit->x1));
            best.rect.half_height = std::max(0.0, 0.5 * (fit->y2 - fit->y1));
            best.witnesses.clear();
            for (const auto& w : fit->witnesses_rot) best.witnesses.push_back(rotated(w, theta));
        }
    }
    if (best_value == kInf) throw std::runtime_error("min_perimeter_rect: no feasible rectangle");
    return best;
}

Square localization_square(const OrientedRect& r) {
    return Square{r.center, r.axis_angle, 3.0 * r.perimeter()};
}

std::vector<Point2> arrangement_vertices(const std::vector<ConvexObject>& objects, double tol) {
    std::vector<Point2> raw;
    for (const auto& o : objects)
        for (const auto& p : object_vertices(o)) raw.push_back(p);
    for (size_t i = 0; i < objects.size(); ++i) {
        auto pi = boundary_pieces(objects[i]);
        for (size_t j = i + 1; j < objects.size(); ++j) {
            auto pj = boundary_pieces(objects[j]);
            for (const auto& a : pi)
                for (const auto& b : pj)
                    for (const auto& p : piece_intersections(a, b, tol)) raw.push_back(p);
        }
    }
    std::vector<Point2> out;
    for (const auto& p : raw) {
        bool dup = false;
        for (const auto& q : out)
            if (dist(p, q) <= tol) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minimum-area covering ellipse.

namespace {

std::optional<Ellipse> ellipse_from_quadratic(double a, double b, double c, double d, double e,
                                              double f) {
    // a x^2 + b xy + c y^2 + d x + e y + f = 0
    if (a + c < 0.0) {
        a = -a; b = -b; c = -c; d = -d; e = -e; f = -f;
    }
    double det2 = a * c - 0.25 * b * b;
    if (det2 <= 1e-14) return std::nullopt;
    // center solves [a b/2; b/2 c] q = [-d/2; -e/2]
    double cx = (-0.5 * d * c + 0.25 * e * b) / det2;
    double cy = (-0.5 * e * a + 0.25 * d * b) / det2;
    double kappa = -(a * cx * cx + b * cx * cy + c * cy * cy + d * cx + e * cy + f);
    if (kappa <= 1e-16) return std::nullopt;
    // (p-c)^T M (p-c) = 1 with M = [[a, b/2],[b/2, c]] / kappa
    double m00 = a / kappa, m01 = 0.5 * b / kappa, m11 = c / kappa;
    double tr = m00 + m11, dt = m00 * m11 - m01 * m01;
    double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - dt));
    double l1 = 0.5 * tr - disc;  // smaller eigenvalue -> major axis
    double l2 = 0.5 * tr + disc;
    if (l1 <= 1e-16) return std::nullopt;
    Ellipse el;
    el.center = {cx, cy};
    el.a = 1.0 / std::sqrt(l1);
    el.b = 1.0 / std::sqrt(l2);
    Vec2 v = std::abs(m01) > 1e-300 ? Vec2{l1 - m11, m01} : (m00 <= m11 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0});
    if (norm(v) < 1e-300) v = {1.0, 0.0};
    el.angle = std::atan2(v.y, v.x);
    return el;
}

std::optional<Ellipse> steiner_circumellipse(Point2 p, Point2 q, Point2 r) {
    double twice_area = cross(q - p, r - p);
    if (std::abs(twice_area) < 1e-14) return std::nullopt;
    // Affine image of the unit circumcircle of a reference equilateral triangle.
    Point2 c = (1.0 / 3.0) * (p + q + r);
    // Reference verts: e1=(1,0), e2=(-1/2, s), e3=(-1/2, -s), s = sqrt(3)/2.
    double s = std::sqrt(3.0) / 2.0;
    // Solve A (e1 - e3) = p - r, A (e2 - e3) = q - r.
    Vec2 u1{1.5, s}, u2{0.0, 2.0 * s};
    Vec2 w1 = p - r, w2 = q - r;
    double det = cross(u1, u2);
    double a00 = (w1.x * u2.y - w2.x * u1.y) / det;
    double a01 = (w2.x * u1.x - w1.x * u2.x) / det;
    double a10 = (w1.y * u2.y - w2.y * u1.y) / det;
    double a11 = (w2.y * u1.x - w1.y * u2.x) / det;
    // Ellipse = {A u + c : |u| = 1}; axes from eigen of A A^T.
    double b00 = a00 * a00 + a01 * a01;
    double b01 = a00 * a10 + a01 * a11;
    double b11 = a10 * a10 + a11 * a11;
    double tr = b00 + b11, dt = b00 * b11 - b01 * b01;
    if (dt <= 0.0) return std::nullopt;
    double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - dt));
    double mu1 = 0.5 * tr + disc, mu2 = 0.5 * tr - disc;
    if (mu2 <= 0.0) return std::nullopt;
    Ellipse el;
    el.center = c;
    el.a = std::sqrt(mu1);
    el.b = std::sqrt(mu2);
    Vec2 v = std::abs(b01) > 1e-300 ? Vec2{mu1 - b11, b01} : (b00 >= b11 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0});
    if (norm(v) < 1e-300) v = {1.0, 0.0};
    el.angle = std::atan2(v.y, v.x);
    return el;
}

std::array<double, 3> line_coeffs(Point2 p, Point2 q) {
    // alpha x + beta y + gamma = 0 through p, q
    return {q.y - p.y, p.x - q.x, cross(q, p)};
}

std::array<double, 6> conic_of_lines(const std::array<double, 3>& l, const std::array<double, 3>& m) {
    return {l[0] * m[0],
            l[0] * m[1] + l[1] * m[0],
            l[1] * m[1],
            l[0] * m[2] + l[2] * m[0],
            l[1] * m[2] + l[2] * m[1],
            l[2] * m[2]};
}

std::optional<Ellipse> min_ellipse_through4(std::vector<Point2> pts) {
    ConvexPolygon hull = convex_hull(pts);
    if (hull.v.size() != 4) return std::nullopt;  // needs convex position
    const auto& h = hull.v;
    auto c1 = conic_of_lines(line_coeffs(h[0], h[1]), line_coeffs(h[2], h[3]));
    auto c2 = conic_of_lines(line_coeffs(h[1], h[2]), line_coeffs(h[3], h[0]));
    auto nrm = [](std::array<double, 6>& c) {
        double n = 0.0;
        for (double v : c) n += v * v;
        n = std::sqrt(n);
        for (double& v : c) v /= n;
    };
    nrm(c1);
    nrm(c2);
    auto mix = [&](double phi) {
        std::array<double, 6> c;
        double cs = std::cos(phi), sn = std::sin(phi);
        for (int i = 0; i < 6; ++i) c[i] = cs * c1[i] + sn * c2[i];
        return ellipse_from_quadratic(c[0], c[1], c[2], c[3], c[4], c[5]);
    };
    // Scan the projective pencil, then golden-section around the best sample.
    const int samples = 720;
    double best_phi = -1.0, best_area = kInf;
    for (int i = 0; i < samples; ++i) {
        double phi = kPi * (static_cast<double>(i) + 0.5) / samples;
        auto el = mix(phi);
        if (el && el->area() < best_area) {
            best_area = el->area();
            best_phi = phi;
        }
    }
    if (best_phi < 0.0) return std::nullopt;
    double lo = best_phi - kPi / samples, hi = best_phi + kPi / samples;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    auto val = [&](double phi) {
        auto el = mix(phi);
        return el ? el->area() : kInf;
    };
    double f1 = val(x1), f2 = val(x2);
    for (int it = 0; it < 120; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = val(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = val(x2);
        }
    }
    return mix(0.5 * (lo + hi));
}

std::optional<Ellipse> conic_through5(const std::vector<Point2>& pts) {
    // Null vector of the 5x6 design matrix via Gaussian elimination.
    std::array<std::array<double, 6>, 5> m{};
    for (int i = 0; i < 5; ++i) {
        double x = pts[static_cast<size_t>(i)].x, y = pts[static_cast<size_t>(i)].y;
        m[static_cast<size_t>(i)] = {x * x, x * y, y * y, x, y, 1.0};
    }
    std::array<int, 5> piv_col{-1, -1, -1, -1, -1};
    int r = 0;
    for (int c = 0; c < 6 && r < 5; ++c) {
        int br = -1;
        double bv = 1e-12;
        for (int i = r; i < 5; ++i)
            if (std::abs(m[static_cast<size_t>(i)][static_cast<size_t>(c)]) > bv) {
                bv = std::abs(m[static_cast<size_t>(i)][static_cast<size_t>(c)]);
                br = i;
            }
        if (br < 0) continue;
        std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(br)]);
        double p = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
        for (int j = 0; j < 6; ++j) m[static_cast<size_t>(r)][static_cast<size_t>(j)] /= p;
        for (int i = 0; i < 5; ++i) {
            if (i == r) continue;
            double f = m[static_cast<size_t>(i)][static_cast<size_t>(c)];
            for (int j = 0; j < 6; ++j)
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * m[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        piv_col[static_cast<size_t>(r)] = c;
        ++r;
    }
    if (r < 5) return std::nullopt;  // degenerate configuration
    int free_col = -1;
    for (int c = 0; c < 6; ++c) {
        bool is_piv = false;
        for (int i = 0; i < 5; ++i) is_piv |= (piv_col[static_cast<size_t>(i)] == c);
        if (!is_piv) {
            free_col = c;
            break;
        }
    }
    std::array<double, 6> sol{};
    sol[static_cast<size_t>(free_col)] = 1.0;
    for (int i = 0; i < 5; ++i)
        sol[static_cast<size_t>(piv_col[static_cast<size_t>(i)])] =
            -m[static_cast<size_t>(i)][static_cast<size_t>(free_col)];
    return ellipse_from_quadratic(sol[0], sol[1], sol[2], sol[3], sol[4], sol[5]);
}

}  // namespace

std::optional<Ellipse> ellipse_of_support(const std::vector<Point2>& support) {
    switch (support.size()) {
        case 3: return steiner_circumellipse(support[0], support[1], support[2]);
        case 4: return min_ellipse_through4(support);
        case 5: return conic_through5(support);
        default: return std::nullopt;
    }
}

Ellipse min_area_ellipse(const std::vector<Point2>& points) {
    if (points.size() < 3) throw std::invalid_argument("min_area_ellipse: need >= 3 points");
    ConvexPolygon hull = convex_hull(points);
    if (hull.v.size() < 3) throw std::invalid_argument("min_area_ellipse: collinear input");
    const auto& h = hull.v;
    size_t n = h.size();

    std::optional<Ellipse> best;
    auto consider = [&](const std::vector<Point2>& support) {
        auto el = ellipse_of_support(support);
        if (!el) return;
        for (const auto& p : h)
            if (!el->contains(p, 1e-7)) return;
        if (!best || el->area() < best->area()) best = el;
    };

    std::vector<Point2> sub;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                sub = {h[i], h[j], h[k]};
                consider(sub);
                for (size_t l = k + 1; l < n; ++l) {
                    sub = {h[i], h[j], h[k], h[l]};
                    consider(sub);
                    for (size_t m = l + 1; m < n; ++m) {
                        sub = {h[i], h[j], h[k], h[l], h[m]};
                        consider(sub);
                    }
                }
            }
    if (!best) throw std::runtime_error("min_area_ellipse: no covering ellipse found");
    return *best;
}

std::vector<GridSpec> candidate_grids(const std::vector<ConvexObject>& objects, double eps,
                                      const CandidateGridOptions& opts) {
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("candidate_grids: need 0 < eps < 1");
    std::vector<Point2> x = arrangement_vertices(objects);
    if (x.size() < 3) return {};

    double k_formula = std::floor(65536.0 / (eps * eps * eps));
    int k = static_cast<int>(std::min(k_formula, opts.k_max));
    double half_span = 32.0 / eps;

    std::vector<Ellipse> ellipses;
    auto push_ellipse = [&](const Ellipse& el) {
        for (const auto& e : ellipses) {
            if (dist(e.center, el.center) <= 1e-9 && std::abs(e.a - el.a) <= 1e-9 &&
                std::abs(e.b - el.b) <= 1e-9 &&
                std::abs(std::remainder(e.angle - el.angle, kPi)) <= 1e-9)
                return;
        }
        ellipses.push_back(el);
    };

    size_t budget =
        x.size() <= static_cast<size_t>(opts.full_enum_limit) ? SIZE_MAX : opts.subset_budget;
    size_t used = 0;
    size_t n = x.size();
    std::vector<Point2> sub;
    for (size_t i = 0; i < n && used < budget; ++i)
        for (size_t j = i + 1; j < n && used < budget; ++j)
            for (size_t kk = j + 1; kk < n && used < budget; ++kk) {
                ++used;
                sub = {x[i], x[j], x[kk]};
                if (auto el = ellipse_of_support(sub)) push_ellipse(*el);
                for (size_t l = kk + 1; l < n && used < budget; ++l) {
                    ++used;
                    sub = {x[i], x[j], x[kk], x[l]};
                    if (auto el = ellipse_of_support(sub)) push_ellipse(*el);
                    for (size_t m = l + 1; m < n && used < budget; ++m) {
                        ++used;
                        sub = {x[i], x[j], x[kk], x[l], x[m]};
                        if (auto el = ellipse_of_support(sub)) push_ellipse(*el);
                    }
                }
            }

    std::vector<GridSpec> grids;
    grids.reserve(ellipses.size());
    for (const auto& el : ellipses) {
        GridSpec g;
        double cell = 2.0 * half_span / static_cast<double>(k);
        g.origin = el.from_unit_circle({-half_span, -half_span});
        g.ex = el.from_unit_circle({-half_span + cell, -half_span}) - g.origin;
        g.ey = el.from_unit_circle({-half_span, -half_span + cell}) - g.origin;
        g.cols = k;
        g.rows = k;
        g.ellipse = el;
        grids.push_back(g);
    }
    return grids;
}

}  // namespace stabhull
