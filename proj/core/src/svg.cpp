#include "pvcsd/svg.hpp"

#include "pvcsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pvcsd {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const SvgChart& chart)
{
    if (chart.series.empty())
        throw InputError("chart has no series");
    if (chart.width < 200 || chart.height < 150)
        throw InputError("chart is too small");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : chart.series) {
        if (s.x.size() != s.y.size())
            throw InputError("series '" + s.name + "' has mismatched x/y lengths");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax == xmin)
        xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const double left = 70, right = 170, top = 40, bottom = 50;
    const double pw = chart.width - left - right;
    const double ph = chart.height - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(chart.width) + "\" height=\""
         + std::to_string(chart.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!chart.title.empty())
        out += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
             + escape(chart.title) + "</text>\n";

    // axes and ticks
    out += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph)
         + "\" fill=\"none\" stroke=\"#333\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / kTicks;
        const double fy = ymin + (ymax - ymin) * i / kTicks;
        out += "<line x1=\"" + fmt(sx(fx)) + "\" y1=\"" + fmt(top + ph) + "\" x2=\"" + fmt(sx(fx)) + "\" y2=\""
             + fmt(top + ph + 5) + "\" stroke=\"#333\"/>\n";
        out += "<text x=\"" + fmt(sx(fx)) + "\" y=\"" + fmt(top + ph + 18) + "\" text-anchor=\"middle\">" + tick(fx)
             + "</text>\n";
        out += "<line x1=\"" + fmt(left - 5) + "\" y1=\"" + fmt(sy(fy)) + "\" x2=\"" + fmt(left + pw) + "\" y2=\""
             + fmt(sy(fy)) + "\" stroke=\"#ddd\"/>\n";
        out += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(sy(fy) + 4) + "\" text-anchor=\"end\">" + tick(fy)
             + "</text>\n";
    }
    if (!chart.x_label.empty())
        out += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(chart.height - 10.0)
             + "\" text-anchor=\"middle\">" + escape(chart.x_label) + "</text>\n";
    if (!chart.y_label.empty())
        out += "<text transform=\"translate(16," + fmt(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">"
             + escape(chart.y_label) + "</text>\n";

    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const auto& s = chart.series[k];
        const std::string colour = kPalette[k % std::size(kPalette)];
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
                    out += "<circle cx=\"" + fmt(sx(s.x[i])) + "\" cy=\"" + fmt(sy(s.y[i])) + "\" r=\"3\" fill=\""
                         + colour + "\"/>\n";
            }
        } else {
            std::string points;
            auto flush = [&] {
                if (!points.empty())
                    out += "<polyline fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"1.5\" points=\"" + points
                         + "\"/>\n";
                points.clear();
            };
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                    flush();
                    continue;
                }
                if (!points.empty())
                    points += ' ';
                points += fmt(sx(s.x[i])) + "," + fmt(sy(s.y[i]));
            }
            flush();
        }
        // legend
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        const double lx = left + pw + 15;
        out += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly - 8) + "\" width=\"14\" height=\"10\" fill=\"" + colour
             + "\"/>\n";
        out += "<text x=\"" + fmt(lx + 20) + "\" y=\"" + fmt(ly + 1) + "\">" + escape(s.name) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace pvcsd
