#include "xlsxdiag/canonical_model.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace xlsxdiag {

Pt round_pt(Pt v) {
    Pt r = std::round(v * 100.0) / 100.0;
    return r == 0.0 ? 0.0 : r; // normalize -0
}

std::string format_pt(Pt v) {
    // Emit sign + integer.fraction from integer hundredths; locale-proof.
    long long cents = std::llround(v * 100.0);
    bool neg = cents < 0;
    unsigned long long mag = neg ? static_cast<unsigned long long>(-cents)
                                 : static_cast<unsigned long long>(cents);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s%llu.%02llu", neg && mag ? "-" : "", mag / 100, mag % 100);
    return buf;
}

const char* shape_kind_name(ShapeKind k) {
    switch (k) {
    case ShapeKind::rectangle: return "rectangle";
    case ShapeKind::roundRectangle: return "roundRectangle";
    case ShapeKind::textBox: return "textBox";
    }
    return "rectangle";
}

const char* connector_kind_name(ConnectorKind k) {
    return k == ConnectorKind::straight ? "straight" : "bent";
}

namespace {

std::optional<std::string> resolve_optional_color(const ColorSpec& spec,
                                                  const ThemePalette& palette,
                                                  DiagnosticList& diags) {
    if (spec.kind == ColorSpec::Kind::none)
        return std::nullopt;
    return resolve_color(spec, palette, diags).to_hex();
}

struct Builder {
    const ThemePalette& palette;
    CanonicalDiagram& diagram;
    DiagnosticList& diags;
    std::string sheet;

    void emit_shape(const RawShape& shape, const Placed& placed) {
        ObjectKind kind = classify_shape(shape);
        if (kind == ObjectKind::unsupported) {
            diag(diags, Severity::info, "unsupported_object",
                 "shape preset '" + shape.preset.value_or("<none>") + "' excluded");
            return;
        }
        CanonicalShape out;
        out.id = static_cast<int>(diagram.shapes.size());
        out.kind = kind == ObjectKind::rectangle        ? ShapeKind::rectangle
                   : kind == ObjectKind::roundRectangle ? ShapeKind::roundRectangle
                                                        : ShapeKind::textBox;
        BBox box = rendered_bbox(placed.frame, placed.rot, placed.flip_h, placed.flip_v);
        out.bbox = {round_pt(box.left), round_pt(box.right), round_pt(box.top),
                    round_pt(box.bottom)};
        out.fill_color = resolve_optional_color(shape.fill, palette, diags);
        out.border_color = resolve_optional_color(shape.line.color, palette, diags);
        out.text = shape.text;
        if (out.kind == ShapeKind::textBox && !out.text)
            out.text = "";
        out.sheet = sheet;
        diagram.shapes.push_back(std::move(out));
    }

    void emit_connector(const RawConnector& conn, const Placed& placed) {
        ObjectKind kind = classify_connector(conn);
        if (kind == ObjectKind::unsupported) {
            diag(diags, Severity::info, "unsupported_object",
                 "connector preset '" + conn.preset + "' excluded");
            return;
        }
        ConnectorPath path = connector_path(placed.frame, conn.preset, placed.rot,
                                            placed.flip_h, placed.flip_v, conn.adjustments,
                                            diags);
        CanonicalConnector out;
        out.id = static_cast<int>(diagram.connectors.size());
        out.kind = kind == ObjectKind::straightConnector ? ConnectorKind::straight
                                                         : ConnectorKind::bent;
        for (auto& p : path.points) {
            p.x = round_pt(p.x);
            p.y = round_pt(p.y);
        }
        out.start = path.points.front();
        out.end = path.points.back();
        out.bends.assign(path.points.begin() + 1, path.points.end() - 1);
        // A zero-extent axis collapses the elbow; what renders is a
        // straight segment.
        if (out.kind == ConnectorKind::bent && out.bends.empty())
            out.kind = ConnectorKind::straight;
        out.start_direction = path.start_dir;
        out.end_direction = path.end_dir;
        out.line_color = resolve_optional_color(conn.line.color, palette, diags);
        out.head_arrow = conn.head_arrow;
        out.tail_arrow = conn.tail_arrow;
        out.sheet = sheet;
        diagram.connectors.push_back(std::move(out));
    }

    void emit_group(const RawGroup& group, const Placed& placed_group) {
        GroupContext ctx;
        ctx.frame = placed_group.frame;
        ctx.rot = placed_group.rot;
        ctx.flip_h = placed_group.flip_h;
        ctx.flip_v = placed_group.flip_v;
        ctx.ch_off_x = static_cast<double>(group.xfrm.ch_off_x.value_or(0));
        ctx.ch_off_y = static_cast<double>(group.xfrm.ch_off_y.value_or(0));
        ctx.ch_ext_cx = static_cast<double>(
            group.xfrm.ch_ext_cx.value_or(static_cast<Emu>(placed_group.frame.cx)));
        ctx.ch_ext_cy = static_cast<double>(
            group.xfrm.ch_ext_cy.value_or(static_cast<Emu>(placed_group.frame.cy)));
        if (ctx.ch_ext_cx <= 0 || ctx.ch_ext_cy <= 0) {
            diag(diags, Severity::warning, "degenerate_group",
                 "group has zero child extent; children dropped");
            return;
        }
        for (const auto& child : group.children)
            emit_body(child, &ctx);
    }

    // Children carry their frame in the parent's child space; top-level
    // bodies already arrive placed from their anchor.
    void emit_body(const RawBody& body, const GroupContext* parent) {
        if (const auto* shape = std::get_if<RawShape>(&body.value)) {
            Placed placed = place_from_xfrm(shape->xfrm);
            if (parent) {
                auto flat = flatten_group(*parent, placed);
                if (!flat)
                    return;
                placed = *flat;
            }
            emit_shape(*shape, placed);
        } else if (const auto* conn = std::get_if<RawConnector>(&body.value)) {
            Placed placed = place_from_xfrm(conn->xfrm);
            if (parent) {
                auto flat = flatten_group(*parent, placed);
                if (!flat)
                    return;
                placed = *flat;
            }
            emit_connector(*conn, placed);
        } else if (const auto* group = std::get_if<RawGroup>(&body.value)) {
            Placed placed = place_from_xfrm(group->xfrm);
            if (parent) {
                auto flat = flatten_group(*parent, placed);
                if (!flat)
                    return;
                placed = *flat;
            }
            emit_group(*group, placed);
        }
    }

    static Placed place_from_xfrm(const std::optional<XfrmSpec>& xfrm) {
        Placed p;
        if (xfrm) {
            p.frame.x = static_cast<double>(xfrm->off_x.value_or(0));
            p.frame.y = static_cast<double>(xfrm->off_y.value_or(0));
            p.frame.cx = static_cast<double>(xfrm->ext_cx.value_or(0));
            p.frame.cy = static_cast<double>(xfrm->ext_cy.value_or(0));
            p.rot = xfrm->rot;
            p.flip_h = xfrm->flip_h;
            p.flip_v = xfrm->flip_v;
        }
        return p;
    }
    static Placed place_from_xfrm(const XfrmSpec& xfrm) {
        return place_from_xfrm(std::optional<XfrmSpec>(xfrm));
    }
};

// For a top-level object the anchor defines the frame; the xfrm only
// contributes rotation and flips (and the child space for groups).
Placed place_top_level(const FrameEmu& anchor_frame, const std::optional<XfrmSpec>& xfrm) {
    Placed p;
    p.frame = to_frame_f(anchor_frame);
    if (xfrm) {
        p.rot = xfrm->rot;
        p.flip_h = xfrm->flip_h;
        p.flip_v = xfrm->flip_v;
    }
    return p;
}

} // namespace

CanonicalDiagram build_canonical(const std::vector<SheetDrawing>& sheets,
                                 const ThemePalette& palette, std::string source_file,
                                 DiagnosticList upstream_diags) {
    CanonicalDiagram diagram;
    diagram.source_file = std::move(source_file);
    diagram.diagnostics = std::move(upstream_diags);

    for (const auto& sheet : sheets) {
        Builder builder{palette, diagram, diagram.diagnostics, sheet.sheet_name};
        for (const auto& obj : sheet.objects) {
            FrameEmu frame = resolve_anchor(sheet.metrics, obj.anchor, diagram.diagnostics);
            if (const auto* shape = std::get_if<RawShape>(&obj.body.value)) {
                builder.emit_shape(*shape, place_top_level(frame, shape->xfrm));
            } else if (const auto* conn = std::get_if<RawConnector>(&obj.body.value)) {
                builder.emit_connector(*conn, place_top_level(frame, conn->xfrm));
            } else if (const auto* group = std::get_if<RawGroup>(&obj.body.value)) {
                builder.emit_group(*group, place_top_level(frame, group->xfrm));
            }
        }
    }
    return diagram;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out;
}

void append_string(std::string& out, const std::string& s) {
    out += '"';
    out += json_escape(s);
    out += '"';
}

void append_opt_string(std::string& out, const std::optional<std::string>& s) {
    if (s)
        append_string(out, *s);
    else
        out += "null";
}

void append_point(std::string& out, const PtPoint& p) {
    out += "{\"x\": " + format_pt(p.x) + ", \"y\": " + format_pt(p.y) + "}";
}

} // namespace

std::string serialize_json(const CanonicalDiagram& d) {
    std::string out;
    out += "{\n";
    out += "  \"schema_version\": \"";
    out += kCanonicalSchemaVersion;
    out += "\",\n";
    out += "  \"source_file\": ";
    append_string(out, d.source_file);
    out += ",\n  \"shapes\": [";
    for (std::size_t i = 0; i < d.shapes.size(); ++i) {
        const auto& s = d.shapes[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"id\": " + std::to_string(s.id);
        out += ", \"sheet\": ";
        append_string(out, s.sheet);
        out += ", \"kind\": \"";
        out += shape_kind_name(s.kind);
        out += "\", \"bbox\": {\"left\": " + format_pt(s.bbox.left) +
               ", \"right\": " + format_pt(s.bbox.right) + ", \"top\": " + format_pt(s.bbox.top) +
               ", \"bottom\": " + format_pt(s.bbox.bottom) + "}";
        out += ", \"fill_color\": ";
        append_opt_string(out, s.fill_color);
        out += ", \"border_color\": ";
        append_opt_string(out, s.border_color);
        out += ", \"text\": ";
        append_opt_string(out, s.text);
        out += "}";
    }
    out += d.shapes.empty() ? "],\n" : "\n  ],\n";
    out += "  \"connectors\": [";
    for (std::size_t i = 0; i < d.connectors.size(); ++i) {
        const auto& c = d.connectors[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"id\": " + std::to_string(c.id);
        out += ", \"sheet\": ";
        append_string(out, c.sheet);
        out += ", \"kind\": \"";
        out += connector_kind_name(c.kind);
        out += "\", \"start\": ";
        append_point(out, c.start);
        out += ", \"end\": ";
        append_point(out, c.end);
        out += ", \"bends\": [";
        for (std::size_t b = 0; b < c.bends.size(); ++b) {
            if (b)
                out += ", ";
            append_point(out, c.bends[b]);
        }
        out += "]";
        out += ", \"start_direction\": \"";
        out += cardinal_name(c.start_direction);
        out += "\", \"end_direction\": \"";
        out += cardinal_name(c.end_direction);
        out += "\", \"line_color\": ";
        append_opt_string(out, c.line_color);
        out += ", \"head_arrow\": ";
        out += c.head_arrow ? "true" : "false";
        out += ", \"tail_arrow\": ";
        out += c.tail_arrow ? "true" : "false";
        out += "}";
    }
    out += d.connectors.empty() ? "],\n" : "\n  ],\n";
    out += "  \"diagnostics\": [";
    for (std::size_t i = 0; i < d.diagnostics.size(); ++i) {
        const auto& g = d.diagnostics[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"severity\": \"";
        out += severity_name(g.severity);
        out += "\", \"code\": ";
        append_string(out, g.code);
        out += ", \"message\": ";
        append_string(out, g.message);
        out += "}";
    }
    out += d.diagnostics.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

namespace {

bool valid_color_string(const std::string& s) {
    if (s.size() != 7 && s.size() != 9)
        return false;
    if (s[0] != '#')
        return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        bool hex = (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F');
        if (!hex)
            return false;
    }
    return true;
}

} // namespace

std::vector<Violation> validate(const CanonicalDiagram& d) {
    std::vector<Violation> out;
    auto check_color = [&](const std::optional<std::string>& c, const std::string& where) {
        if (c && !valid_color_string(*c))
            out.push_back({where + ": color string '" + *c + "' is not #RRGGBB(AA)"});
    };

    std::set<int> shape_ids;
    for (std::size_t i = 0; i < d.shapes.size(); ++i) {
        const auto& s = d.shapes[i];
        std::string where = "shape[" + std::to_string(i) + "]";
        if (s.id != static_cast<int>(i))
            out.push_back({where + ": id " + std::to_string(s.id) + " breaks dense 0..n-1 order"});
        if (!shape_ids.insert(s.id).second)
            out.push_back({where + ": duplicate id " + std::to_string(s.id)});
        if (s.bbox.left > s.bbox.right)
            out.push_back({where + ": bbox left > right"});
        if (s.bbox.top > s.bbox.bottom)
            out.push_back({where + ": bbox top > bottom"});
        if (s.kind == ShapeKind::textBox && !s.text)
            out.push_back({where + ": textBox without text"});
        check_color(s.fill_color, where);
        check_color(s.border_color, where);
    }

    std::set<int> conn_ids;
    for (std::size_t i = 0; i < d.connectors.size(); ++i) {
        const auto& c = d.connectors[i];
        std::string where = "connector[" + std::to_string(i) + "]";
        if (c.id != static_cast<int>(i))
            out.push_back({where + ": id " + std::to_string(c.id) + " breaks dense 0..n-1 order"});
        if (!conn_ids.insert(c.id).second)
            out.push_back({where + ": duplicate id " + std::to_string(c.id)});
        if (c.kind == ConnectorKind::straight && !c.bends.empty())
            out.push_back({where + ": straight connector with bends"});
        if (c.kind == ConnectorKind::bent && c.bends.empty())
            out.push_back({where + ": bent connector without bends"});
        check_color(c.line_color, where);
    }
    return out;
}

const std::vector<std::string>& canonical_schema_field_names() {
    static const std::vector<std::string> fields = {
        "schema_version", "source_file", "shapes", "connectors", "diagnostics",
        "id", "sheet", "kind", "bbox", "left", "right", "top", "bottom",
        "fill_color", "border_color", "text", "start", "end", "x", "y", "bends",
        "start_direction", "end_direction", "line_color", "head_arrow", "tail_arrow",
        "severity", "code", "message"};
    return fields;
}

} // namespace xlsxdiag
