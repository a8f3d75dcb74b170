#include "xlsxdiag/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace xlsxdiag {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rot_to_radians(std::int64_t rot) {
    return static_cast<double>(rot) / kAnglePerDegree * kPi / 180.0;
}

struct Vec2 {
    double x = 0;
    double y = 0;
};

// Positive DrawingML rotation turns clockwise on screen; with y growing
// downward that is the (cos, sin / -sin, cos) matrix below.
Vec2 rotate_about(const Vec2& p, const Vec2& center, double radians) {
    double dx = p.x - center.x;
    double dy = p.y - center.y;
    double c = std::cos(radians);
    double s = std::sin(radians);
    return {center.x + dx * c - dy * s, center.y + dx * s + dy * c};
}

double adjustment_value(std::span<const Adjustment> adjustments, const char* name,
                        double fallback) {
    for (const auto& a : adjustments)
        if (a.name == name)
            return static_cast<double>(a.value);
    return fallback;
}

} // namespace

const char* cardinal_name(CardinalDirection d) {
    switch (d) {
    case CardinalDirection::N: return "N";
    case CardinalDirection::E: return "E";
    case CardinalDirection::S: return "S";
    case CardinalDirection::W: return "W";
    }
    return "E";
}

CardinalDirection quantize_cardinal(double dx, double dy) {
    if (std::fabs(dx) >= std::fabs(dy))
        return dx >= 0 ? CardinalDirection::E : CardinalDirection::W;
    return dy > 0 ? CardinalDirection::S : CardinalDirection::N;
}

GroupContext group_context_from_xfrm(const XfrmSpec& parent) {
    GroupContext ctx;
    ctx.frame.x = static_cast<double>(parent.off_x.value_or(0));
    ctx.frame.y = static_cast<double>(parent.off_y.value_or(0));
    ctx.frame.cx = static_cast<double>(parent.ext_cx.value_or(0));
    ctx.frame.cy = static_cast<double>(parent.ext_cy.value_or(0));
    ctx.rot = parent.rot;
    ctx.flip_h = parent.flip_h;
    ctx.flip_v = parent.flip_v;
    ctx.ch_off_x = static_cast<double>(parent.ch_off_x.value_or(0));
    ctx.ch_off_y = static_cast<double>(parent.ch_off_y.value_or(0));
    ctx.ch_ext_cx = static_cast<double>(parent.ch_ext_cx.value_or(parent.ext_cx.value_or(0)));
    ctx.ch_ext_cy = static_cast<double>(parent.ch_ext_cy.value_or(parent.ext_cy.value_or(0)));
    return ctx;
}

std::optional<Placed> flatten_group(const GroupContext& parent, const Placed& child) {
    if (parent.ch_ext_cx <= 0.0 || parent.ch_ext_cy <= 0.0)
        return std::nullopt; // degenerate child space

    double sx = parent.frame.cx > 0 ? parent.frame.cx / parent.ch_ext_cx : 1.0;
    double sy = parent.frame.cy > 0 ? parent.frame.cy / parent.ch_ext_cy : 1.0;

    Placed out = child;
    out.frame.x = parent.frame.x + (child.frame.x - parent.ch_off_x) * sx;
    out.frame.y = parent.frame.y + (child.frame.y - parent.ch_off_y) * sy;
    out.frame.cx = child.frame.cx * sx;
    out.frame.cy = child.frame.cy * sy;

    // Parent flips mirror the child's position within the parent frame,
    // toggle its flips and conjugate its rotation.
    std::int64_t rot = child.rot;
    if (parent.flip_h) {
        out.frame.x = 2.0 * parent.frame.x + parent.frame.cx - out.frame.x - out.frame.cx;
        out.flip_h = !out.flip_h;
        rot = -rot;
    }
    if (parent.flip_v) {
        out.frame.y = 2.0 * parent.frame.y + parent.frame.cy - out.frame.y - out.frame.cy;
        out.flip_v = !out.flip_v;
        rot = -rot;
    }

    if (parent.rot != 0) {
        Vec2 parent_center{parent.frame.x + parent.frame.cx / 2.0,
                           parent.frame.y + parent.frame.cy / 2.0};
        Vec2 child_center{out.frame.x + out.frame.cx / 2.0, out.frame.y + out.frame.cy / 2.0};
        Vec2 moved = rotate_about(child_center, parent_center, rot_to_radians(parent.rot));
        out.frame.x = moved.x - out.frame.cx / 2.0;
        out.frame.y = moved.y - out.frame.cy / 2.0;
        rot += parent.rot;
    }

    out.rot = normalize_angle(rot);
    return out;
}

std::optional<Placed> flatten_group(const XfrmSpec& parent, const Placed& child) {
    return flatten_group(group_context_from_xfrm(parent), child);
}

BBox rendered_bbox(const FrameF& frame, std::int64_t rot, bool /*flip_h*/, bool /*flip_v*/) {
    Vec2 center{frame.x + frame.cx / 2.0, frame.y + frame.cy / 2.0};
    Vec2 corners[4] = {{frame.x, frame.y},
                       {frame.x + frame.cx, frame.y},
                       {frame.x + frame.cx, frame.y + frame.cy},
                       {frame.x, frame.y + frame.cy}};
    double radians = rot_to_radians(rot);
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (int i = 0; i < 4; ++i) {
        Vec2 p = rot == 0 ? corners[i] : rotate_about(corners[i], center, radians);
        if (i == 0) {
            min_x = max_x = p.x;
            min_y = max_y = p.y;
        } else {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    BBox box;
    box.left = min_x / kEmuPerPoint;
    box.right = max_x / kEmuPerPoint;
    box.top = min_y / kEmuPerPoint;
    box.bottom = max_y / kEmuPerPoint;
    return box;
}

ConnectorPath connector_path(const FrameF& frame, const std::string& preset, std::int64_t rot,
                             bool flip_h, bool flip_v, std::span<const Adjustment> adjustments,
                             DiagnosticList& diags) {
    double w = frame.cx;
    double h = frame.cy;
    double a1 = adjustment_value(adjustments, "adj1", 50000.0) / 100000.0;
    double a2 = adjustment_value(adjustments, "adj2", 50000.0) / 100000.0;
    double a3 = adjustment_value(adjustments, "adj3", 50000.0) / 100000.0;

    std::vector<Vec2> local;
    if (preset == "straightConnector1" || preset == "line") {
        local = {{0, 0}, {w, h}};
    } else if (preset == "bentConnector2") {
        local = {{0, 0}, {w, 0}, {w, h}};
    } else if (preset == "bentConnector3") {
        double x1 = w * a1;
        local = {{0, 0}, {x1, 0}, {x1, h}, {w, h}};
    } else if (preset == "bentConnector4") {
        double x1 = w * a1;
        double y2 = h * a2;
        local = {{0, 0}, {x1, 0}, {x1, y2}, {w, y2}, {w, h}};
    } else if (preset == "bentConnector5") {
        double x1 = w * a1;
        double x3 = w * a3;
        double y3 = h * a2;
        local = {{0, 0}, {x1, 0}, {x1, y3}, {x3, y3}, {x3, h}, {w, h}};
    } else {
        diag(diags, Severity::warning, "unsupported_preset",
             "connector preset '" + preset + "' not supported, using straight fallback");
        local = {{0, 0}, {w, h}};
    }

    if (flip_h)
        for (auto& p : local)
            p.x = w - p.x;
    if (flip_v)
        for (auto& p : local)
            p.y = h - p.y;

    Vec2 center{w / 2.0, h / 2.0};
    double radians = rot_to_radians(rot);
    ConnectorPath path;
    path.points.reserve(local.size());
    for (const auto& lp : local) {
        Vec2 p = rot == 0 ? lp : rotate_about(lp, center, radians);
        path.points.push_back(PtPoint{(p.x + frame.x) / kEmuPerPoint,
                                      (p.y + frame.y) / kEmuPerPoint});
    }

    // Zero-extent presets produce repeated points; collapse them unless the
    // whole path is degenerate.
    bool degenerate = true;
    for (const auto& p : path.points)
        if (p.x != path.points[0].x || p.y != path.points[0].y) {
            degenerate = false;
            break;
        }
    if (!degenerate) {
        std::vector<PtPoint> collapsed;
        for (const auto& p : path.points)
            if (collapsed.empty() || p.x != collapsed.back().x || p.y != collapsed.back().y)
                collapsed.push_back(p);
        path.points = std::move(collapsed);
        if (path.points.size() < 2)
            path.points.push_back(path.points.back());
    }

    path.start_dir = endpoint_direction(path.points, PathEnd::start, diags);
    path.end_dir = endpoint_direction(path.points, PathEnd::end, diags);
    return path;
}

CardinalDirection endpoint_direction(std::span<const PtPoint> points, PathEnd end,
                                     DiagnosticList& diags) {
    if (points.size() < 2) {
        diag(diags, Severity::warning, "degenerate_path", "path has fewer than 2 points");
        return CardinalDirection::E;
    }
    double dx = 0, dy = 0;
    if (end == PathEnd::start) {
        // Travel vector of the first segment, negated: the start endpoint
        // points outward, toward whatever the connector leaves from.
        for (std::size_t i = 1; i < points.size(); ++i) {
            dx = points[0].x - points[i].x;
            dy = points[0].y - points[i].y;
            if (dx != 0 || dy != 0)
                break;
        }
    } else {
        for (std::size_t i = points.size() - 1; i-- > 0;) {
            dx = points.back().x - points[i].x;
            dy = points.back().y - points[i].y;
            if (dx != 0 || dy != 0)
                break;
        }
    }
    if (dx == 0 && dy == 0) {
        diag(diags, Severity::warning, "degenerate_path",
             "all path points coincide; defaulting endpoint direction to E");
        return CardinalDirection::E;
    }
    return quantize_cardinal(dx, dy);
}

} // namespace xlsxdiag
