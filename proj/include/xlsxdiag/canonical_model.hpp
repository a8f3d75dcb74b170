#pragma once

#include "xlsxdiag/color_theme.hpp"
#include "xlsxdiag/diagnostics.hpp"
#include "xlsxdiag/drawingml.hpp"
#include "xlsxdiag/geometry.hpp"
#include "xlsxdiag/sheet_metrics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xlsxdiag {

inline constexpr const char* kCanonicalSchemaVersion = "1";

enum class ShapeKind { rectangle, roundRectangle, textBox };
enum class ConnectorKind { straight, bent };

const char* shape_kind_name(ShapeKind k);
const char* connector_kind_name(ConnectorKind k);

struct CanonicalShape {
    int id = 0; // dense 0..n-1 in document order, sheets in workbook order
    ShapeKind kind = ShapeKind::rectangle;
    BBox bbox; // points, rounded to 2 decimals
    std::optional<std::string> fill_color;   // "#RRGGBB" or "#RRGGBBAA"
    std::optional<std::string> border_color;
    std::optional<std::string> text; // always present for textBox (may be "")
    std::string sheet;
};

struct CanonicalConnector {
    int id = 0; // dense, independent of shape ids
    ConnectorKind kind = ConnectorKind::straight;
    PtPoint start;
    PtPoint end;
    std::vector<PtPoint> bends; // empty iff kind == straight
    CardinalDirection start_direction = CardinalDirection::E;
    CardinalDirection end_direction = CardinalDirection::E;
    std::optional<std::string> line_color;
    bool head_arrow = false;
    bool tail_arrow = false;
    std::string sheet;
};

struct CanonicalDiagram {
    std::string source_file;
    std::vector<CanonicalShape> shapes;
    std::vector<CanonicalConnector> connectors;
    DiagnosticList diagnostics;
};

// Parsed objects of one sheet's drawing part, plus the metrics needed to
// resolve its anchors.
struct SheetDrawing {
    std::string sheet_name;
    SheetMetrics metrics;
    std::vector<RawAnchoredObject> objects;
};

// Normalizes parsed sheets into the rendered-appearance model: groups
// flattened, unsupported objects excluded with diagnostics, geometry in
// points rounded to 2 decimals, colors resolved against the palette.
CanonicalDiagram build_canonical(const std::vector<SheetDrawing>& sheets,
                                 const ThemePalette& palette, std::string source_file,
                                 DiagnosticList upstream_diags = {});

// Deterministic serialization: fixed key order, 2-decimal fixed-point
// numbers, LF newlines, trailing newline. Byte-identical across runs.
std::string serialize_json(const CanonicalDiagram& diagram);

struct Violation {
    std::string message;
};

// Checks every canonical invariant; empty means the diagram is well formed.
std::vector<Violation> validate(const CanonicalDiagram& diagram);

// Every attribute name that appears in the canonical JSON schema. The
// prompt glossary is cross-checked against this list.
const std::vector<std::string>& canonical_schema_field_names();

// Rounds a point value to the 2-decimal output grid.
Pt round_pt(Pt v);

// Fixed-point "12.34" formatting used by all emitters.
std::string format_pt(Pt v);

} // namespace xlsxdiag
