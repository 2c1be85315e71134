#include "pathvar/svg.hpp"

#include "pathvar/csv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pathvar {

namespace {

struct Box {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    void include(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
};

const char* kCurveColors[] = {"#000000", "#1f4fd8", "#d82a1f", "#2a8f2a"};

} // namespace

std::string render_svg(const Figure& figure, const SvgOptions& opts) {
    if (opts.width_px <= 0 || opts.height_px <= 0 || opts.margin_px < 0)
        throw std::invalid_argument("svg: dimensions must be positive");

    bool first = true;
    Box box;
    for (const auto& c : figure.curves) {
        for (const auto& p : c.points) {
            if (first) {
                box = Box{p[0], p[0], p[1], p[1]};
                first = false;
            } else {
                box.include(p[0], p[1]);
            }
        }
        for (const auto& a : c.arrows) {
            box.include(a[0], a[1]);
            box.include(a[2], a[3]);
        }
    }
    const double padx = 0.05 * std::max(box.xmax - box.xmin, 1e-12);
    const double pady = 0.05 * std::max(box.ymax - box.ymin, 1e-12);
    box.xmin -= padx;
    box.xmax += padx;
    box.ymin -= pady;
    box.ymax += pady;

    const double innerw = opts.width_px - 2.0 * opts.margin_px;
    const double innerh = opts.height_px - 2.0 * opts.margin_px;
    auto px = [&](double x) {
        return opts.margin_px + (x - box.xmin) / (box.xmax - box.xmin) * innerw;
    };
    auto py = [&](double y) {
        return opts.margin_px + (box.ymax - y) / (box.ymax - box.ymin) * innerh;
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width_px
        << "\" height=\"" << opts.height_px << "\" viewBox=\"0 0 " << opts.width_px << ' '
        << opts.height_px << "\">\n";
    out << "<title>" << figure.name << "</title>\n";
    out << "<defs><marker id=\"tip\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" "
           "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n";

    // Axes where they fall inside the box.
    if (box.ymin < 0.0 && box.ymax > 0.0)
        out << "<line class=\"axis\" x1=\"" << format_double(px(box.xmin)) << "\" y1=\""
            << format_double(py(0)) << "\" x2=\"" << format_double(px(box.xmax)) << "\" y2=\""
            << format_double(py(0)) << "\" stroke=\"#bbbbbb\"/>\n";
    if (box.xmin < 0.0 && box.xmax > 0.0)
        out << "<line class=\"axis\" x1=\"" << format_double(px(0)) << "\" y1=\""
            << format_double(py(box.ymin)) << "\" x2=\"" << format_double(px(0)) << "\" y2=\""
            << format_double(py(box.ymax)) << "\" stroke=\"#bbbbbb\"/>\n";

    size_t color_index = 0;
    for (const auto& c : figure.curves) {
        const char* color = kCurveColors[color_index % 4];
        ++color_index;
        out << "<polyline class=\"path\" data-label=\"" << c.label
            << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < c.points.size(); ++i) {
            if (i) out << ' ';
            out << format_double(px(c.points[i][0])) << ',' << format_double(py(c.points[i][1]));
        }
        out << "\"/>\n";
        for (const auto& a : c.arrows) {
            out << "<line class=\"arrow\" x1=\"" << format_double(px(a[0])) << "\" y1=\""
                << format_double(py(a[1])) << "\" x2=\"" << format_double(px(a[2])) << "\" y2=\""
                << format_double(py(a[3])) << "\" stroke=\"" << color
                << "\" stroke-width=\"1.2\" marker-end=\"url(#tip)\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace pathvar
