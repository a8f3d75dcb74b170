#pragma once

#include "xlsxdiag/diagnostics.hpp"
#include "xlsxdiag/drawingml.hpp"
#include "xlsxdiag/sheet_metrics.hpp"
#include "xlsxdiag/units.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace xlsxdiag {

// Sheet coordinates in points: origin top-left, y grows downward.
struct PtPoint {
    Pt x = 0;
    Pt y = 0;
};

struct BBox {
    Pt left = 0;
    Pt right = 0;
    Pt top = 0;
    Pt bottom = 0;
};

enum class CardinalDirection { N, E, S, W };

const char* cardinal_name(CardinalDirection d);

// Quantizes a travel vector to the cardinal with the largest absolute
// component; exact diagonals break toward the horizontal cardinal.
CardinalDirection quantize_cardinal(double dx, double dy);

struct ConnectorPath {
    std::vector<PtPoint> points; // start, bends..., end
    CardinalDirection start_dir = CardinalDirection::E;
    CardinalDirection end_dir = CardinalDirection::E;
};

// A frame with fractional EMU coordinates: group scaling produces
// sub-EMU positions that must survive until the final point conversion.
struct FrameF {
    double x = 0;
    double y = 0;
    double cx = 0;
    double cy = 0;
};

inline FrameF to_frame_f(const FrameEmu& f) {
    return {static_cast<double>(f.x), static_cast<double>(f.y),
            static_cast<double>(f.cx), static_cast<double>(f.cy)};
}

// A fully placed object: absolute frame plus residual rotation/flips.
struct Placed {
    FrameF frame;
    std::int64_t rot = 0; // 1/60000 degree, [0, 21600000)
    bool flip_h = false;
    bool flip_v = false;
};

// A group's placement plus its child coordinate space. Frames are
// fractional so nested flattening keeps full precision.
struct GroupContext {
    FrameF frame;
    std::int64_t rot = 0;
    bool flip_h = false;
    bool flip_v = false;
    double ch_off_x = 0, ch_off_y = 0;
    double ch_ext_cx = 0, ch_ext_cy = 0;
};

GroupContext group_context_from_xfrm(const XfrmSpec& parent);

// Maps a child placement through its parent group transform: child-space
// scale and translation, position mirroring for parent flips (which also
// toggle the child's flips and negate its rotation), then parent rotation
// about the parent frame center. Returns nothing for a degenerate child
// space (ch_ext = 0); the caller drops the children with a diagnostic.
// Nested groups flatten by applying this innermost-out.
std::optional<Placed> flatten_group(const GroupContext& parent, const Placed& child);
std::optional<Placed> flatten_group(const XfrmSpec& parent, const Placed& child);

// Axis-aligned envelope of the frame corners after rotation about the
// frame center, in points. Flips never alter an axis-aligned envelope.
BBox rendered_bbox(const FrameF& frame, std::int64_t rot, bool flip_h, bool flip_v);

// Builds the connector polyline for a preset: local preset geometry,
// flips mirrored within the frame, rotation about the frame center,
// translation by the frame origin, EMU->Pt conversion last. Unknown
// presets fall back to a straight segment with a diagnostic.
ConnectorPath connector_path(const FrameF& frame, const std::string& preset, std::int64_t rot,
                             bool flip_h, bool flip_v, std::span<const Adjustment> adjustments,
                             DiagnosticList& diags);

enum class PathEnd { start, end };

// Outward direction of a path endpoint: the negated first-segment travel
// vector for the start, the last-segment travel vector for the end.
// A fully degenerate path quantizes to E with a diagnostic.
CardinalDirection endpoint_direction(std::span<const PtPoint> points, PathEnd end,
                                     DiagnosticList& diags);

} // namespace xlsxdiag
