#include "ovalkit_cli/export.hpp"

#include <algorithm>
#include <cmath>

#include "ovalkit/grid.hpp"
#include "ovalkit_cli/report.hpp"

namespace ovalkit::cli {

CurveSamples sample_curve(const DegreeOneCurve& sigma) {
    const std::size_t m = 4 * sigma.size();
    CurveSamples s;
    s.t.resize(m + 1);
    for (std::size_t k = 0; k <= m; ++k) s.t[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
    s.points = positions(sigma, s.t);
    const TrigInterpolant kappa(curvature(sigma));
    s.kappa.resize(m + 1);
    for (std::size_t k = 0; k <= m; ++k) s.kappa[k] = kappa(s.t[k]);
    return s;
}

Box bounding_box(const std::vector<Vec2>& points) {
    Box b{points.front().x, points.front().x, points.front().y, points.front().y};
    for (const auto& p : points) {
        b.xmin = std::min(b.xmin, p.x);
        b.xmax = std::max(b.xmax, p.x);
        b.ymin = std::min(b.ymin, p.y);
        b.ymax = std::max(b.ymax, p.y);
    }
    return b;
}

double diameter(const std::vector<Vec2>& points) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double dx = points[i].x - points[j].x, dy = points[i].y - points[j].y;
            d2 = std::max(d2, dx * dx + dy * dy);
        }
    }
    return std::sqrt(d2);
}

void write_svg(std::ostream& out, const CurveSamples& s) {
    const Box b = bounding_box(s.points);
    const double margin = 0.05 * std::max({b.width(), b.height(), 1e-12});
    const double stroke = 0.01 * std::max(diameter(s.points), 1e-12);
    // SVG y grows downward; negate y so the picture has the usual orientation.
    const double x0 = b.xmin - margin, y0 = -b.ymax - margin;
    const double w = b.width() + 2 * margin, h = b.height() + 2 * margin;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(x0) << " "
        << format_number(y0) << " " << format_number(w) << " " << format_number(h) << "\">\n";
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << format_number(stroke)
        << "\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
        out << (k ? " " : "") << format_number(s.points[k].x) << "," << format_number(-s.points[k].y);
    }
    out << "\"/>\n</svg>\n";
}

void write_curve_csv(std::ostream& out, const CurveSamples& s) {
    out << "t,x,y,kappa\n";
    for (std::size_t k = 0; k < s.t.size(); ++k) {
        out << format_number(s.t[k]) << "," << format_number(s.points[k].x) << ","
            << format_number(s.points[k].y) << "," << format_number(s.kappa[k]) << "\n";
    }
}

}  // namespace ovalkit::cli
