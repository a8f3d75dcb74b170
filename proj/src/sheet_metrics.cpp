#include "xlsxdiag/sheet_metrics.hpp"

#include "xlsxdiag/xml.hpp"

#include <cmath>
#include <cstdlib>

namespace xlsxdiag {

SheetMetrics parse_sheet_metrics(std::span<const std::uint8_t> sheet_xml) {
    auto root = xml::parse(sheet_xml);
    SheetMetrics m;

    if (const auto* fmt = root->child("sheetFormatPr")) {
        if (const std::string* w = fmt->attr("defaultColWidth"))
            m.default_col_width_chars = std::strtod(w->c_str(), nullptr);
        if (const std::string* h = fmt->attr("defaultRowHeight"))
            m.default_row_height_pt = std::strtod(h->c_str(), nullptr);
    }

    if (const auto* cols = root->child("cols")) {
        for (const auto* col : cols->children_named("col")) {
            int min = std::atoi(col->attr_or("min", "1").c_str());
            int max = std::atoi(col->attr_or("max", "1").c_str());
            bool hidden = col->attr_or("hidden", "0") == "1";
            double width = hidden ? 0.0 : std::strtod(col->attr_or("width", "0").c_str(), nullptr);
            for (int c = min; c <= max; ++c)
                m.col_width_overrides[c - 1] = width; // XML columns are 1-based
        }
    }

    if (const auto* data = root->child("sheetData")) {
        for (const auto* row : data->children_named("row")) {
            int r = std::atoi(row->attr_or("r", "0").c_str());
            if (r <= 0)
                continue;
            if (row->attr_or("hidden", "0") == "1") {
                m.row_height_overrides[r - 1] = 0.0;
            } else if (const std::string* ht = row->attr("ht")) {
                m.row_height_overrides[r - 1] = std::strtod(ht->c_str(), nullptr);
            }
        }
    }
    return m;
}

Emu col_width_emu(const SheetMetrics& metrics, int col) {
    auto it = metrics.col_width_overrides.find(col);
    double chars = it != metrics.col_width_overrides.end() ? it->second
                                                           : metrics.default_col_width_chars;
    if (chars <= 0.0)
        return 0;
    double padding = std::floor(128.0 / metrics.mdw_px);
    auto width_px = static_cast<Emu>(
        std::floor(((256.0 * chars + padding) / 256.0) * metrics.mdw_px));
    return width_px * kEmuPerPixel;
}

Emu row_height_emu(const SheetMetrics& metrics, int row) {
    auto it = metrics.row_height_overrides.find(row);
    double pt = it != metrics.row_height_overrides.end() ? it->second
                                                         : metrics.default_row_height_pt;
    if (pt <= 0.0)
        return 0;
    return static_cast<Emu>(std::llround(pt * kEmuPerPoint));
}

Emu col_origin_emu(const SheetMetrics& metrics, int col) {
    Emu sum = 0;
    for (int c = 0; c < col; ++c)
        sum += col_width_emu(metrics, c);
    return sum;
}

Emu row_origin_emu(const SheetMetrics& metrics, int row) {
    Emu sum = 0;
    for (int r = 0; r < row; ++r)
        sum += row_height_emu(metrics, r);
    return sum;
}

FrameEmu resolve_anchor(const SheetMetrics& metrics, const AnchorSpec& anchor,
                        DiagnosticList& diags) {
    FrameEmu frame;
    switch (anchor.kind) {
    case AnchorSpec::Kind::absolute:
        frame.x = anchor.pos_x;
        frame.y = anchor.pos_y;
        frame.cx = anchor.ext_cx;
        frame.cy = anchor.ext_cy;
        break;
    case AnchorSpec::Kind::oneCell:
        frame.x = col_origin_emu(metrics, anchor.from.col) + anchor.from.col_off;
        frame.y = row_origin_emu(metrics, anchor.from.row) + anchor.from.row_off;
        frame.cx = anchor.ext_cx;
        frame.cy = anchor.ext_cy;
        break;
    case AnchorSpec::Kind::twoCell: {
        frame.x = col_origin_emu(metrics, anchor.from.col) + anchor.from.col_off;
        frame.y = row_origin_emu(metrics, anchor.from.row) + anchor.from.row_off;
        CellOffset to = anchor.to.value_or(anchor.from);
        Emu x2 = col_origin_emu(metrics, to.col) + to.col_off;
        Emu y2 = row_origin_emu(metrics, to.row) + to.row_off;
        if (x2 < frame.x || y2 < frame.y)
            diag(diags, Severity::warning, "negative_extent",
                 "anchor 'to' precedes 'from'; extent clamped to zero");
        frame.cx = x2 > frame.x ? x2 - frame.x : 0;
        frame.cy = y2 > frame.y ? y2 - frame.y : 0;
        break;
    }
    }
    return frame;
}

} // namespace xlsxdiag
