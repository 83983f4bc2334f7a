// svg.hpp — deterministic SVG rendering of 2D shape snapshots.
#pragma once

#include <string>

#include "frog/shape.hpp"

namespace frog::shape {

struct SvgOptions {
    bool draw_hull = true;
    bool draw_diamond = true;
    int pixels = 640;
};

// Unit cells of xi_bar/n, optional hull polygon and unit-diamond overlay.
// d = 2 snapshots only.
std::string render_shape_svg(const ShapeSnapshot& snap, SvgOptions opts = {});

}  // namespace frog::shape
