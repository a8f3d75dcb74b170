#pragma once

#include "xlsxdiag/diagnostics.hpp"
#include "xlsxdiag/drawingml.hpp"
#include "xlsxdiag/units.hpp"

#include <map>
#include <span>

namespace xlsxdiag {

// Per-sheet column widths and row heights, the inputs for anchor
// resolution. Widths are in "characters" (the stored worksheet unit),
// heights in points.
struct SheetMetrics {
    double default_col_width_chars = 8.43;
    double default_row_height_pt = 15.0;
    std::map<int, double> col_width_overrides; // 0-based column -> chars
    std::map<int, double> row_height_overrides; // 0-based row -> points
    int mdw_px = kDefaultMaxDigitWidthPx;
};

// An absolute object frame in EMU, sheet origin at top-left.
struct FrameEmu {
    Emu x = 0;
    Emu y = 0;
    Emu cx = 0;
    Emu cy = 0;
};

// Reads sheetFormatPr / cols / row@ht out of a worksheet part.
// Throws MalformedXmlError.
SheetMetrics parse_sheet_metrics(std::span<const std::uint8_t> sheet_xml);

// Column width in EMU:
//   width_px = floor(((256 * w_chars + floor(128 / mdw)) / 256) * mdw)
//   emu      = width_px * 9525
Emu col_width_emu(const SheetMetrics& metrics, int col);

// Row height in EMU: round(height_pt * 12700).
Emu row_height_emu(const SheetMetrics& metrics, int row);

// Top-left EMU origin of a cell (sum of all widths/heights before it).
Emu col_origin_emu(const SheetMetrics& metrics, int col);
Emu row_origin_emu(const SheetMetrics& metrics, int row);

// Converts an anchor into an absolute frame. A twoCell anchor whose `to`
// precedes `from` is clamped to zero extent with a NegativeExtent
// diagnostic.
FrameEmu resolve_anchor(const SheetMetrics& metrics, const AnchorSpec& anchor,
                        DiagnosticList& diags);

} // namespace xlsxdiag
