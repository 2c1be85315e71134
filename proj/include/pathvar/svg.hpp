#pragma once

#include "pathvar/scenarios.hpp"

#include <string>

namespace pathvar {

struct SvgOptions {
    int width_px = 800;
    int height_px = 600;
    int margin_px = 48;
};

/// Render figure data (curves plus -EL arrows) as a standalone SVG
/// document. Output is deterministic: fixed element order and shortest
/// round-trip float formatting.
std::string render_svg(const Figure& figure, const SvgOptions& opts = {});

} // namespace pathvar
