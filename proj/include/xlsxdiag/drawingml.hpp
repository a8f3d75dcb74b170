#pragma once

#include "xlsxdiag/diagnostics.hpp"
#include "xlsxdiag/units.hpp"
#include "xlsxdiag/xml.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace xlsxdiag {

// ---- Anchors --------------------------------------------------------------

struct CellOffset {
    int col = 0;      // 0-based
    int row = 0;      // 0-based
    Emu col_off = 0;
    Emu row_off = 0;
};

struct AnchorSpec {
    enum class Kind { twoCell, oneCell, absolute };
    Kind kind = Kind::twoCell;
    CellOffset from;                 // twoCell, oneCell
    std::optional<CellOffset> to;    // twoCell only
    Emu ext_cx = 0, ext_cy = 0;      // oneCell, absolute
    Emu pos_x = 0, pos_y = 0;        // absolute only
};

// ---- Raw (untransformed) drawing objects ----------------------------------

struct ColorTransform {
    enum class Op { tint, shade, lumMod, lumOff, alpha, satMod, other };
    Op op = Op::other;
    std::string name;  // original element name, kept for diagnostics
    int amount = 0;    // per-mille-of-100000 units
};

struct ColorSpec {
    enum class Kind { srgb, scheme, system, none };
    Kind kind = Kind::none;
    std::string value; // hex for srgb, scheme slot name, or system color name
    std::string sys_last_color; // sysClr @lastClr when present
    std::vector<ColorTransform> transforms; // document order
};

struct LineSpec {
    ColorSpec color;
    std::optional<Emu> width;
    std::optional<std::string> dash;
};

struct XfrmSpec {
    std::optional<Emu> off_x, off_y;
    std::optional<Emu> ext_cx, ext_cy;
    std::int64_t rot = 0; // 1/60000 degree, normalized to [0, 21600000)
    bool flip_h = false;
    bool flip_v = false;
    // Child coordinate space, groups only.
    std::optional<Emu> ch_off_x, ch_off_y, ch_ext_cx, ch_ext_cy;
};

struct RawShape {
    std::optional<std::string> preset; // e.g. "rect", "roundRect"
    bool is_text_box = false;
    std::optional<XfrmSpec> xfrm;
    ColorSpec fill;   // effective spec after style-reference fallback
    LineSpec line;
    std::optional<std::string> text;
};

struct Adjustment {
    std::string name;
    int value = 0;
};

struct RawConnector {
    std::string preset; // "straightConnector1", "bentConnector2".."5", "line"
    XfrmSpec xfrm;      // connectors always carry one
    std::vector<Adjustment> adjustments;
    LineSpec line;
    bool head_arrow = false;
    bool tail_arrow = false;
};

struct RawBody;

struct RawGroup {
    XfrmSpec xfrm; // with ch_off / ch_ext
    std::vector<RawBody> children; // document order
};

struct RawBody {
    std::variant<RawShape, RawConnector, RawGroup> value;
};

struct RawAnchoredObject {
    AnchorSpec anchor;
    RawBody body;
    int doc_order = 0; // 0-based position in the drawing XML
};

enum class ObjectKind {
    rectangle,
    roundRectangle,
    textBox,
    straightConnector,
    bentConnector,
    unsupported,
};

// ---- Operations ------------------------------------------------------------

// Parses one drawing part. Unsupported anchor bodies (pictures, charts,
// frames) are skipped with a diagnostic. Throws MalformedXmlError.
std::vector<RawAnchoredObject> parse_drawing(std::span<const std::uint8_t> xml_bytes,
                                             DiagnosticList& diags);

ObjectKind classify_object(const RawBody& body);
ObjectKind classify_shape(const RawShape& shape);
ObjectKind classify_connector(const RawConnector& conn);

// Text of a txBody subtree: runs concatenated per paragraph, paragraphs
// joined with '\n'. No styling retained.
std::string extract_text(const xml::Element& tx_body);

const char* object_kind_name(ObjectKind kind);

} // namespace xlsxdiag
