#pragma once

#include <ostream>
#include <vector>

#include "ovalkit/curve.hpp"

namespace ovalkit::cli {

struct CurveSamples {
    std::vector<double> t;
    std::vector<Vec2> points;
    std::vector<double> kappa;
};

// 4N intervals on [0, 2π]; both endpoints are included so an open curve shows its gap.
CurveSamples sample_curve(const DegreeOneCurve& sigma);

struct Box {
    double xmin, xmax, ymin, ymax;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

Box bounding_box(const std::vector<Vec2>& points);
double diameter(const std::vector<Vec2>& points);

// Single polyline, viewBox with a 5% margin, stroke 1% of the diameter, y axis up.
void write_svg(std::ostream& out, const CurveSamples& samples);
// Columns t, x, y, kappa.
void write_curve_csv(std::ostream& out, const CurveSamples& samples);

}  // namespace ovalkit::cli
