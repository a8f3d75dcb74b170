#include "xlsxdiag/drawingml.hpp"

#include <charconv>
#include <set>

namespace xlsxdiag {

namespace {

constexpr const char* kNsSpreadsheetDrawing =
    "http://schemas.openxmlformats.org/drawingml/2006/spreadsheetDrawing";
constexpr const char* kNsDrawingMain = "http://schemas.openxmlformats.org/drawingml/2006/main";

std::int64_t to_i64(const std::string& s, std::int64_t fallback = 0) {
    std::int64_t v = fallback;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

// Parse context: tracks namespace mismatches so each unexpected URI is
// reported once per drawing part.
struct ParseCtx {
    DiagnosticList* diags = nullptr;
    std::set<std::string> seen_ns_mismatch;

    void check_ns(const xml::Element& e, const char* expected) {
        if (e.ns.empty() || e.ns == expected)
            return;
        if (seen_ns_mismatch.insert(e.ns).second)
            diag(*diags, Severity::warning, "namespace_mismatch",
                 "element '" + e.local + "' in unexpected namespace: " + e.ns);
    }
};

CellOffset parse_cell_offset(const xml::Element& marker) {
    CellOffset c;
    if (const auto* col = marker.child("col"))
        c.col = static_cast<int>(to_i64(col->text));
    if (const auto* row = marker.child("row"))
        c.row = static_cast<int>(to_i64(row->text));
    if (const auto* off = marker.child("colOff"))
        c.col_off = to_i64(off->text);
    if (const auto* off = marker.child("rowOff"))
        c.row_off = to_i64(off->text);
    return c;
}

ColorTransform::Op transform_op(const std::string& name) {
    if (name == "tint") return ColorTransform::Op::tint;
    if (name == "shade") return ColorTransform::Op::shade;
    if (name == "lumMod") return ColorTransform::Op::lumMod;
    if (name == "lumOff") return ColorTransform::Op::lumOff;
    if (name == "alpha") return ColorTransform::Op::alpha;
    if (name == "satMod") return ColorTransform::Op::satMod;
    return ColorTransform::Op::other;
}

ColorSpec parse_color_choice(const xml::Element& parent) {
    // parent is a solidFill / color container holding srgbClr|schemeClr|sysClr.
    ColorSpec spec;
    for (const auto& c : parent.children) {
        if (c->local == "srgbClr") {
            spec.kind = ColorSpec::Kind::srgb;
            spec.value = c->attr_or("val", "000000");
        } else if (c->local == "schemeClr") {
            spec.kind = ColorSpec::Kind::scheme;
            spec.value = c->attr_or("val", "");
        } else if (c->local == "sysClr") {
            spec.kind = ColorSpec::Kind::system;
            spec.value = c->attr_or("val", "");
            spec.sys_last_color = c->attr_or("lastClr", "");
        } else {
            continue;
        }
        for (const auto& t : c->children) {
            ColorTransform tr;
            tr.op = transform_op(t->local);
            tr.name = t->local;
            tr.amount = static_cast<int>(to_i64(t->attr_or("val", "0")));
            spec.transforms.push_back(std::move(tr));
        }
        break;
    }
    return spec;
}

// Fill spec of an spPr: explicit solidFill wins; noFill is an explicit
// "none"; absent means "not specified here" (caller may fall back to the
// style reference).
std::optional<ColorSpec> parse_fill(const xml::Element& sp_pr) {
    for (const auto& c : sp_pr.children) {
        if (c->local == "solidFill")
            return parse_color_choice(*c);
        if (c->local == "noFill")
            return ColorSpec{}; // kind = none
        if (c->local == "gradFill" || c->local == "pattFill" || c->local == "blipFill")
            return ColorSpec{}; // unsupported fill kinds degrade to none
    }
    return std::nullopt;
}

std::optional<LineSpec> parse_line(const xml::Element& sp_pr) {
    const xml::Element* ln = sp_pr.child("ln");
    if (!ln)
        return std::nullopt;
    LineSpec line;
    if (const std::string* w = ln->attr("w"))
        line.width = to_i64(*w);
    if (const auto* fill = ln->child("solidFill"))
        line.color = parse_color_choice(*fill);
    else if (ln->child("noFill"))
        line.color = ColorSpec{};
    if (const auto* dash = ln->child("prstDash"))
        line.dash = dash->attr_or("val", "");
    return line;
}

bool arrow_present(const xml::Element& ln, const char* end_name) {
    const xml::Element* end = ln.child(end_name);
    if (!end)
        return false;
    std::string type = end->attr_or("type", "none");
    return !type.empty() && type != "none";
}

std::optional<XfrmSpec> parse_xfrm(const xml::Element& sp_pr) {
    const xml::Element* x = sp_pr.child("xfrm");
    if (!x)
        return std::nullopt;
    XfrmSpec spec;
    spec.rot = normalize_angle(to_i64(x->attr_or("rot", "0")));
    spec.flip_h = x->attr_or("flipH", "0") == "1";
    spec.flip_v = x->attr_or("flipV", "0") == "1";
    if (const auto* off = x->child("off")) {
        spec.off_x = to_i64(off->attr_or("x", "0"));
        spec.off_y = to_i64(off->attr_or("y", "0"));
    }
    if (const auto* ext = x->child("ext")) {
        spec.ext_cx = to_i64(ext->attr_or("cx", "0"));
        spec.ext_cy = to_i64(ext->attr_or("cy", "0"));
    }
    if (const auto* ch_off = x->child("chOff")) {
        spec.ch_off_x = to_i64(ch_off->attr_or("x", "0"));
        spec.ch_off_y = to_i64(ch_off->attr_or("y", "0"));
    }
    if (const auto* ch_ext = x->child("chExt")) {
        spec.ch_ext_cx = to_i64(ch_ext->attr_or("cx", "0"));
        spec.ch_ext_cy = to_i64(ch_ext->attr_or("cy", "0"));
    }
    return spec;
}

// Style-reference scheme color for a given ref element (fillRef / lnRef).
// idx="0" means the style contributes nothing.
std::optional<ColorSpec> style_ref_color(const xml::Element& sp, const char* ref_name) {
    const xml::Element* style = sp.child("style");
    if (!style)
        return std::nullopt;
    const xml::Element* ref = style->child(ref_name);
    if (!ref)
        return std::nullopt;
    if (ref->attr_or("idx", "0") == "0")
        return std::nullopt;
    ColorSpec spec = parse_color_choice(*ref);
    if (spec.kind == ColorSpec::Kind::none)
        return std::nullopt;
    return spec;
}

RawShape parse_shape(const xml::Element& sp, ParseCtx& ctx) {
    ctx.check_ns(sp, kNsSpreadsheetDrawing);
    RawShape shape;

    if (const auto* nv = sp.child("nvSpPr"))
        if (const auto* cnv = nv->child("cNvSpPr")) {
            std::string tx = cnv->attr_or("txBox", "0");
            shape.is_text_box = tx == "1" || tx == "true";
        }

    if (const auto* sp_pr = sp.child("spPr")) {
        ctx.check_ns(*sp_pr, kNsSpreadsheetDrawing);
        shape.xfrm = parse_xfrm(*sp_pr);
        if (const auto* geom = sp_pr->child("prstGeom"))
            shape.preset = geom->attr_or("prst", "");
        if (auto fill = parse_fill(*sp_pr))
            shape.fill = *fill;
        else if (auto styled = style_ref_color(sp, "fillRef"))
            shape.fill = *styled;
        if (auto line = parse_line(*sp_pr)) {
            shape.line = *line;
            if (shape.line.color.kind == ColorSpec::Kind::none)
                if (auto styled = style_ref_color(sp, "lnRef"))
                    shape.line.color = *styled;
        } else if (auto styled = style_ref_color(sp, "lnRef")) {
            shape.line.color = *styled;
        }
    }

    if (const auto* tx = sp.child("txBody"))
        shape.text = extract_text(*tx);
    else if (shape.is_text_box)
        shape.text = ""; // empty box allowed

    return shape;
}

RawConnector parse_connector(const xml::Element& cxn, ParseCtx& ctx) {
    ctx.check_ns(cxn, kNsSpreadsheetDrawing);
    RawConnector conn;
    if (const auto* sp_pr = cxn.child("spPr")) {
        if (auto xfrm = parse_xfrm(*sp_pr))
            conn.xfrm = *xfrm;
        if (const auto* geom = sp_pr->child("prstGeom")) {
            ctx.check_ns(*geom, kNsDrawingMain);
            conn.preset = geom->attr_or("prst", "");
            if (const auto* av = geom->child("avLst"))
                for (const auto* gd : av->children_named("gd")) {
                    std::string fmla = gd->attr_or("fmla", "");
                    Adjustment adj;
                    adj.name = gd->attr_or("name", "");
                    // Guides on connectors are literal "val N" formulas.
                    if (fmla.rfind("val ", 0) == 0)
                        adj.value = static_cast<int>(to_i64(fmla.substr(4)));
                    conn.adjustments.push_back(std::move(adj));
                }
        }
        if (auto line = parse_line(*sp_pr)) {
            conn.line = *line;
            if (conn.line.color.kind == ColorSpec::Kind::none)
                if (auto styled = style_ref_color(cxn, "lnRef"))
                    conn.line.color = *styled;
        } else if (auto styled = style_ref_color(cxn, "lnRef")) {
            conn.line.color = *styled;
        }
        if (const auto* ln = sp_pr->child("ln")) {
            conn.head_arrow = arrow_present(*ln, "headEnd");
            conn.tail_arrow = arrow_present(*ln, "tailEnd");
        }
    }
    return conn;
}

std::optional<RawBody> parse_body(const xml::Element& elem, ParseCtx& ctx);

RawGroup parse_group(const xml::Element& grp, ParseCtx& ctx) {
    RawGroup group;
    if (const auto* pr = grp.child("grpSpPr"))
        if (auto xfrm = parse_xfrm(*pr))
            group.xfrm = *xfrm;
    for (const auto& c : grp.children) {
        if (c->local == "nvGrpSpPr" || c->local == "grpSpPr")
            continue;
        if (auto body = parse_body(*c, ctx))
            group.children.push_back(std::move(*body));
    }
    return group;
}

std::optional<RawBody> parse_body(const xml::Element& elem, ParseCtx& ctx) {
    if (elem.local == "sp")
        return RawBody{parse_shape(elem, ctx)};
    if (elem.local == "cxnSp")
        return RawBody{parse_connector(elem, ctx)};
    if (elem.local == "grpSp")
        return RawBody{parse_group(elem, ctx)};
    if (elem.local == "pic" || elem.local == "graphicFrame" || elem.local == "contentPart" ||
        elem.local == "AlternateContent") {
        diag(*ctx.diags, Severity::info, "skipped_object",
             "unsupported drawing object skipped: " + elem.local);
        return std::nullopt;
    }
    return std::nullopt; // from/to/ext/pos/clientData markers
}

} // namespace

std::vector<RawAnchoredObject> parse_drawing(std::span<const std::uint8_t> xml_bytes,
                                             DiagnosticList& diags) {
    auto root = xml::parse(xml_bytes);
    ParseCtx ctx;
    ctx.diags = &diags;
    ctx.check_ns(*root, kNsSpreadsheetDrawing);

    std::vector<RawAnchoredObject> out;
    int next_order = 0;
    for (const auto& anchor_elem : root->children) {
        AnchorSpec anchor;
        if (anchor_elem->local == "twoCellAnchor") {
            anchor.kind = AnchorSpec::Kind::twoCell;
            if (const auto* from = anchor_elem->child("from"))
                anchor.from = parse_cell_offset(*from);
            if (const auto* to = anchor_elem->child("to"))
                anchor.to = parse_cell_offset(*to);
        } else if (anchor_elem->local == "oneCellAnchor") {
            anchor.kind = AnchorSpec::Kind::oneCell;
            if (const auto* from = anchor_elem->child("from"))
                anchor.from = parse_cell_offset(*from);
            if (const auto* ext = anchor_elem->child("ext")) {
                anchor.ext_cx = to_i64(ext->attr_or("cx", "0"));
                anchor.ext_cy = to_i64(ext->attr_or("cy", "0"));
            }
        } else if (anchor_elem->local == "absoluteAnchor") {
            anchor.kind = AnchorSpec::Kind::absolute;
            if (const auto* pos = anchor_elem->child("pos")) {
                anchor.pos_x = to_i64(pos->attr_or("x", "0"));
                anchor.pos_y = to_i64(pos->attr_or("y", "0"));
            }
            if (const auto* ext = anchor_elem->child("ext")) {
                anchor.ext_cx = to_i64(ext->attr_or("cx", "0"));
                anchor.ext_cy = to_i64(ext->attr_or("cy", "0"));
            }
        } else {
            diag(diags, Severity::warning, "unknown_anchor",
                 "unknown anchor element skipped: " + anchor_elem->local);
            continue;
        }

        bool emitted = false;
        for (const auto& child : anchor_elem->children) {
            auto body = parse_body(*child, ctx);
            if (!body)
                continue;
            RawAnchoredObject obj;
            obj.anchor = anchor;
            obj.body = std::move(*body);
            obj.doc_order = next_order++;
            out.push_back(std::move(obj));
            emitted = true;
        }
        (void)emitted;
    }
    return out;
}

ObjectKind classify_shape(const RawShape& shape) {
    // The text-box flag dominates the preset; Excel writes "rect" presets
    // for text boxes.
    if (shape.is_text_box)
        return ObjectKind::textBox;
    if (shape.preset) {
        if (*shape.preset == "rect")
            return ObjectKind::rectangle;
        if (*shape.preset == "roundRect")
            return ObjectKind::roundRectangle;
    }
    return ObjectKind::unsupported;
}

ObjectKind classify_connector(const RawConnector& conn) {
    if (conn.preset == "straightConnector1" || conn.preset == "line")
        return ObjectKind::straightConnector;
    if (conn.preset == "bentConnector2" || conn.preset == "bentConnector3" ||
        conn.preset == "bentConnector4" || conn.preset == "bentConnector5")
        return ObjectKind::bentConnector;
    return ObjectKind::unsupported;
}

ObjectKind classify_object(const RawBody& body) {
    if (const auto* shape = std::get_if<RawShape>(&body.value))
        return classify_shape(*shape);
    if (const auto* conn = std::get_if<RawConnector>(&body.value))
        return classify_connector(*conn);
    return ObjectKind::unsupported;
}

std::string extract_text(const xml::Element& tx_body) {
    std::string out;
    bool first_paragraph = true;
    for (const auto* p : tx_body.children_named("p")) {
        if (!first_paragraph)
            out += '\n';
        first_paragraph = false;
        for (const auto& run : p->children) {
            if (run->local == "r" || run->local == "fld") {
                if (const auto* t = run->child("t"))
                    out += t->text;
            } else if (run->local == "br") {
                out += '\n';
            }
        }
    }
    return out;
}

const char* object_kind_name(ObjectKind kind) {
    switch (kind) {
    case ObjectKind::rectangle: return "rectangle";
    case ObjectKind::roundRectangle: return "roundRectangle";
    case ObjectKind::textBox: return "textBox";
    case ObjectKind::straightConnector: return "straightConnector";
    case ObjectKind::bentConnector: return "bentConnector";
    case ObjectKind::unsupported: return "unsupported";
    }
    return "unsupported";
}

} // namespace xlsxdiag
