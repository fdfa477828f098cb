#pragma once

#include <string>
#include <vector>

namespace pvcsd {

// Minimal static line chart. Non-finite y values break the polyline.
struct SvgSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false; // draw a dot on every point instead of a line
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
    int width = 900;
    int height = 420;
};

// Throws InputError on mismatched x/y lengths or an empty chart.
std::string render_svg(const SvgChart& chart);

} // namespace pvcsd
