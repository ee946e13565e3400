#include "stabhull/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace stabhull {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 40.0;

std::string num(double v) {
    double r = std::round(v * 100.0) / 100.0;
    if (r == 0.0) r = 0.0;  // normalize -0
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), r, std::chars_format::fixed, 2);
    (void)ec;
    return std::string(buf, ptr);
}

struct Canvas {
    Point2 lo, hi;
    double scale = 1.0;

    Point2 map(Point2 p) const {
        return {kMargin + (p.x - lo.x) * scale, kCanvas - kMargin - (p.y - lo.y) * scale};
    }
};

}  // namespace

std::string render_svg(const Solution& sol, const Instance& inst) {
    double minx = kInf, maxx = -kInf, miny = kInf, maxy = -kInf;
    auto feed = [&](Point2 p) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    };
    for (const auto& o : inst.objects)
        for (const auto& p : o.pts) feed(p);
    if (minx > maxx) feed({0.0, 0.0});
    double span = std::max({maxx - minx, maxy - miny, 1e-6});
    Canvas cv{{minx, miny}, {maxx, maxy}, (kCanvas - 2.0 * kMargin) / span};

    double reach = 3.0 * span;  // how far rays and lines are drawn

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kCanvas)
        << "\" height=\"" << num(kCanvas) << "\" viewBox=\"0 0 " << num(kCanvas) << " "
        << num(kCanvas) << "\">\n";
    out << "  <rect width=\"" << num(kCanvas) << "\" height=\"" << num(kCanvas)
        << "\" fill=\"white\"/>\n";

    auto line_elem = [&](Point2 a, Point2 b, const std::string& style) {
        Point2 ma = cv.map(a), mb = cv.map(b);
        out << "  <line x1=\"" << num(ma.x) << "\" y1=\"" << num(ma.y) << "\" x2=\"" << num(mb.x)
            << "\" y2=\"" << num(mb.y) << "\" " << style << "/>\n";
    };
    const std::string gray = "stroke=\"#888888\" stroke-width=\"2\"";
    for (const auto& o : inst.objects) {
        switch (o.kind) {
            case ObjectKind::point: {
                Point2 m = cv.map(o.pts[0]);
                out << "  <circle cx=\"" << num(m.x) << "\" cy=\"" << num(m.y)
                    << "\" r=\"4\" fill=\"#888888\"/>\n";
                break;
            }
            case ObjectKind::segment: line_elem(o.pts[0], o.pts[1], gray); break;
            case ObjectKind::ray: line_elem(o.pts[0], o.pts[0] + reach * o.dir, gray); break;
            case ObjectKind::line:
                line_elem(o.pts[0] - reach * o.dir, o.pts[0] + reach * o.dir, gray);
                break;
            case ObjectKind::polygon: {
                out << "  <polygon points=\"";
                for (size_t i = 0; i < o.pts.size(); ++i) {
                    Point2 m = cv.map(o.pts[i]);
                    out << (i ? " " : "") << num(m.x) << "," << num(m.y);
                }
                out << "\" fill=\"#dddddd\" stroke=\"#888888\" stroke-width=\"2\"/>\n";
                break;
            }
        }
    }

    if (!sol.feasible || sol.polygon.v.empty()) {
        out << "  <text x=\"" << num(kMargin) << "\" y=\"" << num(kMargin)
            << "\" font-family=\"monospace\" font-size=\"18\" fill=\"#aa0000\">no solution</text>\n";
    } else if (sol.polygon.v.size() == 1) {
        Point2 m = cv.map(sol.polygon.v[0]);
        out << "  <circle cx=\"" << num(m.x) << "\" cy=\"" << num(m.y)
            << "\" r=\"5\" fill=\"none\" stroke=\"#0044cc\" stroke-width=\"2\"/>\n";
    } else {
        out << "  <polygon points=\"";
        for (size_t i = 0; i < sol.polygon.v.size(); ++i) {
            Point2 m = cv.map(sol.polygon.v[i]);
            out << (i ? " " : "") << num(m.x) << "," << num(m.y);
        }
        out << "\" fill=\"none\" stroke=\"#0044cc\" stroke-width=\"2.5\"/>\n";
    }
    for (const auto& w : sol.witnesses) {
        Point2 m = cv.map(w);
        out << "  <circle cx=\"" << num(m.x) << "\" cy=\"" << num(m.y)
            << "\" r=\"3\" fill=\"#cc3300\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace stabhull
