// svg.cpp
#include "frog/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace frog::shape {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render_shape_svg(const ShapeSnapshot& snap, SvgOptions opts) {
    if (snap.d != 2) throw std::invalid_argument("render_shape_svg: d = 2 only");
    const double scale = snap.scale();
    const double half = static_cast<double>(opts.pixels) / 2.0;
    const double zoom = half / 1.25;  // world [-1.25, 1.25] fills the canvas
    const auto px = [&](double wx) { return half + wx * zoom; };
    const auto py = [&](double wy) { return half - wy * zoom; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(opts.pixels) + "\" height=\"" +
           std::to_string(opts.pixels) + "\" viewBox=\"0 0 " +
           std::to_string(opts.pixels) + " " + std::to_string(opts.pixels) +
           "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Unit cells, sorted for a deterministic document.
    std::vector<Point> cells = snap.xi;
    std::sort(cells.begin(), cells.end());
    const double cell_w = zoom / scale;
    out += "<g fill=\"#9ecae1\" stroke=\"none\">\n";
    for (const Point& p : cells) {
        const double cx = (static_cast<double>(p[0]) - 0.5) / scale;
        const double cy = (static_cast<double>(p[1]) + 0.5) / scale;
        out += "<rect x=\"" + fmt(px(cx)) + "\" y=\"" + fmt(py(cy)) +
               "\" width=\"" + fmt(cell_w) + "\" height=\"" + fmt(cell_w) +
               "\"/>\n";
    }
    out += "</g>\n";

    if (opts.draw_diamond) {
        out += "<polygon points=\"";
        const double dx[4] = {1, 0, -1, 0}, dy[4] = {0, 1, 0, -1};
        for (int i = 0; i < 4; ++i) {
            if (i) out += " ";
            out += fmt(px(dx[i])) + "," + fmt(py(dy[i]));
        }
        out += "\" fill=\"none\" stroke=\"#636363\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"6 4\"/>\n";
    }

    if (opts.draw_hull && snap.hull.size() >= 3) {
        out += "<polygon points=\"";
        for (std::size_t i = 0; i < snap.hull.size(); ++i) {
            if (i) out += " ";
            out += fmt(px(snap.hull[i].x)) + "," + fmt(py(snap.hull[i].y));
        }
        out += "\" fill=\"none\" stroke=\"#de2d26\" stroke-width=\"2\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace frog::shape
