#pragma once

#include "xlsxdiag/canonical_model.hpp"

#include <string>

namespace xlsxdiag {

// Debug rendering of a canonical diagram: shapes as (rounded) rects,
// connectors as polylines with arrowheads, texts as labels. Point
// coordinates map 1:1 to SVG user units.
std::string render_svg(const CanonicalDiagram& diagram);

} // namespace xlsxdiag
