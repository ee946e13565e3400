#pragma once

#include <string>

#include "stabhull/types.hpp"

namespace stabhull {

/// Deterministic SVG 1.1 rendering: objects in gray, the solution polygon
/// outlined, witness points as dots. The canvas transform is fixed by the
/// instance bounding box, so identical inputs give byte-identical output.
std::string render_svg(const Solution& sol, const Instance& inst);

}  // namespace stabhull
