#include "xlsxdiag/fixture_forge.hpp"

#include "xlsxdiag/sheet_metrics.hpp"
#include "xlsxdiag/units.hpp"
#include "xlsxdiag/xml.hpp"
#include "xlsxdiag/zip_archive.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace xlsxdiag::forge {

namespace {

using nlohmann::json;

FixtureColor parse_color(const json& j, const char* key) {
    FixtureColor c;
    if (!j.contains(key) || j[key].is_null())
        return c;
    std::string v = j[key].get<std::string>();
    if (v.rfind("scheme:", 0) == 0) {
        c.kind = FixtureColor::Kind::scheme;
        c.value = v.substr(7);
    } else {
        c.kind = FixtureColor::Kind::srgb;
        c.value = v[0] == '#' ? v.substr(1) : v;
    }
    return c;
}

void parse_frame(const json& j, const char* key, double out[4]) {
    if (!j.contains(key))
        return;
    const auto& arr = j[key];
    if (!arr.is_array() || arr.size() != 4)
        throw InvalidManifestError(std::string("'") + key + "' must be a 4-element array");
    for (int i = 0; i < 4; ++i)
        out[i] = arr[i].get<double>();
}

FixtureObject parse_object(const json& j) {
    FixtureObject o;
    if (!j.contains("kind"))
        throw InvalidManifestError("object without 'kind'");
    o.kind = j["kind"].get<std::string>();
    o.anchor = j.value("anchor", std::string("twoCell"));
    parse_frame(j, "frame", o.frame);
    parse_frame(j, "frame_cs", o.frame_cs);
    parse_frame(j, "child_space", o.child_space);
    o.fill = parse_color(j, "fill");
    o.line = parse_color(j, "line");
    if (j.contains("text") && !j["text"].is_null())
        o.text = j["text"].get<std::string>();
    o.rot_deg = j.value("rot_deg", 0.0);
    o.flip_h = j.value("flip_h", false);
    o.flip_v = j.value("flip_v", false);
    o.head_arrow = j.value("head_arrow", false);
    o.tail_arrow = j.value("tail_arrow", false);
    if (j.contains("adjustments"))
        for (auto& [name, value] : j["adjustments"].items())
            o.adjustments[name] = value.get<int>();
    if (j.contains("children"))
        for (const auto& child : j["children"])
            o.children.push_back(parse_object(child));
    return o;
}

bool is_shape_kind(const std::string& kind) {
    return kind == "rect" || kind == "roundRect" || kind == "textBox";
}

bool is_connector_kind(const std::string& kind) {
    return kind == "straightConnector1" || kind == "line" || kind == "bentConnector2" ||
           kind == "bentConnector3" || kind == "bentConnector4" || kind == "bentConnector5";
}

void count_objects(const std::vector<FixtureObject>& objects, int& shapes, int& connectors,
                   std::vector<std::string>& texts) {
    for (const auto& o : objects) {
        if (is_shape_kind(o.kind)) {
            ++shapes;
            if (o.text)
                texts.push_back(*o.text);
        } else if (is_connector_kind(o.kind)) {
            ++connectors;
        } else if (o.kind == "group") {
            count_objects(o.children, shapes, connectors, texts);
        }
        // picture / curvedConnector3 contribute nothing to canonical counts
    }
}

void lint(const FixtureManifest& m) {
    if (m.sheets.empty())
        throw InvalidManifestError("manifest needs at least one sheet");

    int shapes = 0, connectors = 0;
    std::vector<std::string> texts;
    for (const auto& sheet : m.sheets)
        count_objects(sheet.objects, shapes, connectors, texts);

    const auto& e = m.expected;
    if (e.shapes && *e.shapes != shapes)
        throw InvalidManifestError("expected.shapes=" + std::to_string(*e.shapes) +
                                   " but manifest declares " + std::to_string(shapes));
    if (e.connectors && *e.connectors != connectors)
        throw InvalidManifestError("expected.connectors=" + std::to_string(*e.connectors) +
                                   " but manifest declares " + std::to_string(connectors));

    auto has_text = [&](const std::string& t) {
        return std::find(texts.begin(), texts.end(), t) != texts.end();
    };
    for (const auto& name : e.components)
        if (!has_text(name))
            throw InvalidManifestError("expected component '" + name +
                                       "' has no declared text box");
    for (const auto& t : e.annotations)
        if (!has_text(t))
            throw InvalidManifestError("expected annotation '" + t + "' not declared");
    for (const auto& t : e.free_texts)
        if (!has_text(t))
            throw InvalidManifestError("expected free text '" + t + "' not declared");

    auto valid_endpoint = [&](const std::string& ref) {
        if (ref.rfind("text:", 0) == 0)
            return has_text(ref.substr(5));
        return std::find(e.components.begin(), e.components.end(), ref) != e.components.end();
    };
    for (const auto& edge : e.edges) {
        if (!valid_endpoint(edge.from))
            throw InvalidManifestError("edge 'from' does not resolve: " + edge.from);
        if (!valid_endpoint(edge.to))
            throw InvalidManifestError("edge 'to' does not resolve: " + edge.to);
        if (edge.annotation &&
            std::find(e.annotations.begin(), e.annotations.end(), *edge.annotation) ==
                e.annotations.end())
            throw InvalidManifestError("edge annotation not declared: " + *edge.annotation);
    }
    for (const auto& name : e.unconnected_components)
        if (std::find(e.components.begin(), e.components.end(), name) == e.components.end())
            throw InvalidManifestError("unconnected component not declared: " + name);
}

} // namespace

FixtureManifest FixtureManifest::parse(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidManifestError(std::string("manifest is not valid JSON: ") + e.what());
    }

    FixtureManifest m;
    m.name = j.value("name", std::string("fixture"));
    if (j.contains("sheets"))
        for (const auto& js : j["sheets"]) {
            FixtureSheet sheet;
            sheet.name = js.value("name", "Sheet" + std::to_string(m.sheets.size() + 1));
            sheet.default_col_width = js.value("default_col_width", 8.43);
            sheet.default_row_height = js.value("default_row_height", 15.0);
            if (js.contains("col_widths"))
                for (auto& [k, v] : js["col_widths"].items())
                    sheet.col_widths[std::stoi(k)] = v.get<double>();
            if (js.contains("row_heights"))
                for (auto& [k, v] : js["row_heights"].items())
                    sheet.row_heights[std::stoi(k)] = v.get<double>();
            if (js.contains("objects"))
                for (const auto& obj : js["objects"])
                    sheet.objects.push_back(parse_object(obj));
            m.sheets.push_back(std::move(sheet));
        }
    if (j.contains("theme"))
        for (auto& [k, v] : j["theme"].items())
            m.theme[k] = v.get<std::string>();
    if (j.contains("quirks")) {
        const auto& q = j["quirks"];
        m.quirks.omit_theme = q.value("omit_theme", false);
        m.quirks.dangling_drawing = q.value("dangling_drawing", false);
        m.quirks.second_theme = q.value("second_theme", false);
    }
    if (j.contains("expected")) {
        const auto& e = j["expected"];
        if (e.contains("shapes"))
            m.expected.shapes = e["shapes"].get<int>();
        if (e.contains("connectors"))
            m.expected.connectors = e["connectors"].get<int>();
        for (const char* key : {"components", "annotations", "free_texts",
                                "unconnected_components"}) {
            if (!e.contains(key))
                continue;
            std::vector<std::string>* dst = nullptr;
            if (std::string(key) == "components") dst = &m.expected.components;
            else if (std::string(key) == "annotations") dst = &m.expected.annotations;
            else if (std::string(key) == "free_texts") dst = &m.expected.free_texts;
            else dst = &m.expected.unconnected_components;
            for (const auto& v : e[key])
                dst->push_back(v.get<std::string>());
        }
        if (e.contains("edges"))
            for (const auto& je : e["edges"]) {
                ExpectedEdge edge;
                edge.from = je.at("from").get<std::string>();
                edge.to = je.at("to").get<std::string>();
                if (je.contains("annotation") && !je["annotation"].is_null())
                    edge.annotation = je["annotation"].get<std::string>();
                m.expected.edges.push_back(std::move(edge));
            }
    }
    lint(m);
    return m;
}

namespace {

constexpr const char* kXdrNs =
    "http://schemas.openxmlformats.org/drawingml/2006/spreadsheetDrawing";
constexpr const char* kANs = "http://schemas.openxmlformats.org/drawingml/2006/main";
constexpr const char* kRNs = "http://schemas.openxmlformats.org/officeDocument/2006/relationships";

std::string fmt_double(double v) {
    // Shortest stable representation for widths/heights in XML.
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

SheetMetrics metrics_of(const FixtureSheet& sheet) {
    SheetMetrics m;
    m.default_col_width_chars = sheet.default_col_width;
    m.default_row_height_pt = sheet.default_row_height;
    m.col_width_overrides = sheet.col_widths;
    m.row_height_overrides = sheet.row_heights;
    return m;
}

struct CellAddr {
    int index;
    Emu offset;
};

CellAddr locate_col(const SheetMetrics& m, Emu x) {
    int col = 0;
    Emu origin = 0;
    while (col < 4096) {
        Emu w = col_width_emu(m, col);
        if (origin + w > x)
            break;
        origin += w;
        ++col;
    }
    return {col, x - origin};
}

CellAddr locate_row(const SheetMetrics& m, Emu y) {
    int row = 0;
    Emu origin = 0;
    while (row < 65536) {
        Emu h = row_height_emu(m, row);
        if (origin + h > y)
            break;
        origin += h;
        ++row;
    }
    return {row, y - origin};
}

std::string color_xml(const FixtureColor& c) {
    if (c.kind == FixtureColor::Kind::srgb)
        return "<a:srgbClr val=\"" + c.value + "\"/>";
    if (c.kind == FixtureColor::Kind::scheme)
        return "<a:schemeClr val=\"" + c.value + "\"/>";
    return {};
}

std::string tx_body_xml(const std::string& text, const char* prefix) {
    std::string out = std::string("<") + prefix + ":txBody><a:bodyPr/>";
    std::string paragraph;
    std::size_t start = 0;
    auto flush = [&](const std::string& line) {
        out += "<a:p><a:r><a:t>" + xml::escape(line) + "</a:t></a:r></a:p>";
    };
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            flush(text.substr(start, i - start));
            start = i + 1;
        }
    }
    if (text.empty())
        out += "<a:p/>";
    out += std::string("</") + prefix + ":txBody>";
    return out;
}

std::string xfrm_xml(const FixtureObject& o, Emu x, Emu y, Emu cx, Emu cy, bool group) {
    std::string attrs;
    auto rot = static_cast<long long>(std::llround(o.rot_deg * kAnglePerDegree));
    rot = normalize_angle(rot);
    if (rot != 0)
        attrs += " rot=\"" + std::to_string(rot) + "\"";
    if (o.flip_h)
        attrs += " flipH=\"1\"";
    if (o.flip_v)
        attrs += " flipV=\"1\"";
    std::string out = "<a:xfrm" + attrs + ">";
    out += "<a:off x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\"/>";
    out += "<a:ext cx=\"" + std::to_string(cx) + "\" cy=\"" + std::to_string(cy) + "\"/>";
    if (group) {
        out += "<a:chOff x=\"" + std::to_string(static_cast<Emu>(o.child_space[0])) + "\" y=\"" +
               std::to_string(static_cast<Emu>(o.child_space[1])) + "\"/>";
        out += "<a:chExt cx=\"" + std::to_string(static_cast<Emu>(o.child_space[2])) +
               "\" cy=\"" + std::to_string(static_cast<Emu>(o.child_space[3])) + "\"/>";
    }
    out += "</a:xfrm>";
    return out;
}

std::string line_props_xml(const FixtureObject& o) {
    if (o.line.kind == FixtureColor::Kind::none && !o.head_arrow && !o.tail_arrow)
        return {};
    std::string out = "<a:ln w=\"9525\">";
    std::string color = color_xml(o.line);
    if (!color.empty())
        out += "<a:solidFill>" + color + "</a:solidFill>";
    if (o.head_arrow)
        out += "<a:headEnd type=\"arrow\"/>";
    if (o.tail_arrow)
        out += "<a:tailEnd type=\"arrow\"/>";
    out += "</a:ln>";
    return out;
}

std::string object_body_xml(const FixtureObject& o, Emu x, Emu y, Emu cx, Emu cy, int& next_id);

std::string children_xml(const FixtureObject& group, int& next_id) {
    std::string out;
    for (const auto& child : group.children) {
        Emu x = static_cast<Emu>(child.frame_cs[0]);
        Emu y = static_cast<Emu>(child.frame_cs[1]);
        Emu cx = static_cast<Emu>(child.frame_cs[2]);
        Emu cy = static_cast<Emu>(child.frame_cs[3]);
        out += object_body_xml(child, x, y, cx, cy, next_id);
    }
    return out;
}

std::string object_body_xml(const FixtureObject& o, Emu x, Emu y, Emu cx, Emu cy, int& next_id) {
    int id = next_id++;
    std::string name = o.kind + " " + std::to_string(id);

    if (o.kind == "picture") {
        // Minimal picture body; enough to exercise the skip path.
        return "<xdr:pic><xdr:nvPicPr><xdr:cNvPr id=\"" + std::to_string(id) +
               "\" name=\"Picture\"/><xdr:cNvPicPr/></xdr:nvPicPr>"
               "<xdr:blipFill><a:blip/></xdr:blipFill>"
               "<xdr:spPr><a:prstGeom prst=\"rect\"><a:avLst/></a:prstGeom></xdr:spPr></xdr:pic>";
    }

    if (o.kind == "group") {
        std::string out = "<xdr:grpSp><xdr:nvGrpSpPr><xdr:cNvPr id=\"" + std::to_string(id) +
                          "\" name=\"Group\"/><xdr:cNvGrpSpPr/></xdr:nvGrpSpPr>";
        out += "<xdr:grpSpPr>" + xfrm_xml(o, x, y, cx, cy, true) + "</xdr:grpSpPr>";
        out += children_xml(o, next_id);
        out += "</xdr:grpSp>";
        return out;
    }

    if (is_connector_kind(o.kind) || o.kind == "curvedConnector3") {
        std::string out = "<xdr:cxnSp macro=\"\"><xdr:nvCxnSpPr><xdr:cNvPr id=\"" +
                          std::to_string(id) + "\" name=\"" + xml::escape(name) +
                          "\"/><xdr:cNvCxnSpPr/></xdr:nvCxnSpPr><xdr:spPr>";
        out += xfrm_xml(o, x, y, cx, cy, false);
        out += "<a:prstGeom prst=\"" + o.kind + "\"><a:avLst>";
        for (const auto& [adj_name, adj_value] : o.adjustments)
            out += "<a:gd name=\"" + adj_name + "\" fmla=\"val " + std::to_string(adj_value) +
                   "\"/>";
        out += "</a:avLst></a:prstGeom>";
        out += line_props_xml(o);
        out += "</xdr:spPr></xdr:cxnSp>";
        return out;
    }

    // rect / roundRect / textBox
    std::string preset = o.kind == "roundRect" ? "roundRect" : "rect";
    bool tx_box = o.kind == "textBox";
    std::string out = "<xdr:sp macro=\"\" textlink=\"\"><xdr:nvSpPr><xdr:cNvPr id=\"" +
                      std::to_string(id) + "\" name=\"" + xml::escape(name) + "\"/><xdr:cNvSpPr" +
                      (tx_box ? " txBox=\"1\"" : "") + "/></xdr:nvSpPr><xdr:spPr>";
    out += xfrm_xml(o, x, y, cx, cy, false);
    out += "<a:prstGeom prst=\"" + preset + "\"><a:avLst/></a:prstGeom>";
    std::string fill = color_xml(o.fill);
    if (!fill.empty())
        out += "<a:solidFill>" + fill + "</a:solidFill>";
    out += line_props_xml(o);
    out += "</xdr:spPr>";
    if (o.text || tx_box)
        out += tx_body_xml(o.text.value_or(""), "xdr");
    out += "</xdr:sp>";
    return out;
}

std::string drawing_xml(const FixtureSheet& sheet) {
    SheetMetrics metrics = metrics_of(sheet);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
    out += std::string("<xdr:wsDr xmlns:xdr=\"") + kXdrNs + "\" xmlns:a=\"" + kANs +
           "\" xmlns:r=\"" + kRNs + "\">";
    int next_id = 2;
    for (const auto& o : sheet.objects) {
        Emu x = pt_to_emu(o.frame[0]);
        Emu y = pt_to_emu(o.frame[1]);
        Emu cx = pt_to_emu(o.frame[2]);
        Emu cy = pt_to_emu(o.frame[3]);
        std::string body = object_body_xml(o, x, y, cx, cy, next_id);

        if (o.anchor == "absolute") {
            out += "<xdr:absoluteAnchor><xdr:pos x=\"" + std::to_string(x) + "\" y=\"" +
                   std::to_string(y) + "\"/><xdr:ext cx=\"" + std::to_string(cx) + "\" cy=\"" +
                   std::to_string(cy) + "\"/>";
        } else if (o.anchor == "oneCell") {
            CellAddr col = locate_col(metrics, x);
            CellAddr row = locate_row(metrics, y);
            out += "<xdr:oneCellAnchor><xdr:from><xdr:col>" + std::to_string(col.index) +
                   "</xdr:col><xdr:colOff>" + std::to_string(col.offset) + "</xdr:colOff><xdr:row>" +
                   std::to_string(row.index) + "</xdr:row><xdr:rowOff>" +
                   std::to_string(row.offset) + "</xdr:rowOff></xdr:from><xdr:ext cx=\"" +
                   std::to_string(cx) + "\" cy=\"" + std::to_string(cy) + "\"/>";
        } else {
            CellAddr col1 = locate_col(metrics, x);
            CellAddr row1 = locate_row(metrics, y);
            CellAddr col2 = locate_col(metrics, x + cx);
            CellAddr row2 = locate_row(metrics, y + cy);
            out += "<xdr:twoCellAnchor editAs=\"oneCell\"><xdr:from><xdr:col>" +
                   std::to_string(col1.index) + "</xdr:col><xdr:colOff>" +
                   std::to_string(col1.offset) + "</xdr:colOff><xdr:row>" +
                   std::to_string(row1.index) + "</xdr:row><xdr:rowOff>" +
                   std::to_string(row1.offset) + "</xdr:rowOff></xdr:from><xdr:to><xdr:col>" +
                   std::to_string(col2.index) + "</xdr:col><xdr:colOff>" +
                   std::to_string(col2.offset) + "</xdr:colOff><xdr:row>" +
                   std::to_string(row2.index) + "</xdr:row><xdr:rowOff>" +
                   std::to_string(row2.offset) + "</xdr:rowOff></xdr:to>";
        }
        out += body;
        out += "<xdr:clientData/>";
        out += o.anchor == "absolute"  ? "</xdr:absoluteAnchor>"
               : o.anchor == "oneCell" ? "</xdr:oneCellAnchor>"
                                       : "</xdr:twoCellAnchor>";
    }
    out += "</xdr:wsDr>";
    return out;
}

std::string sheet_xml(const FixtureSheet& sheet, bool has_drawing) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
    out += "<worksheet xmlns=\"http://schemas.openxmlformats.org/spreadsheetml/2006/main\" "
           "xmlns:r=\"" +
           std::string(kRNs) + "\">";
    out += "<sheetFormatPr defaultColWidth=\"" + fmt_double(sheet.default_col_width) +
           "\" defaultRowHeight=\"" + fmt_double(sheet.default_row_height) + "\"/>";
    if (!sheet.col_widths.empty()) {
        out += "<cols>";
        for (const auto& [col, width] : sheet.col_widths)
            out += "<col min=\"" + std::to_string(col + 1) + "\" max=\"" +
                   std::to_string(col + 1) + "\" width=\"" + fmt_double(width) +
                   "\" customWidth=\"1\"/>";
        out += "</cols>";
    }
    out += "<sheetData>";
    for (const auto& [row, height] : sheet.row_heights)
        out += "<row r=\"" + std::to_string(row + 1) + "\" ht=\"" + fmt_double(height) +
               "\" customHeight=\"1\"/>";
    out += "</sheetData>";
    if (has_drawing)
        out += "<drawing r:id=\"rId1\"/>";
    out += "</worksheet>";
    return out;
}

std::string theme_xml(const std::map<std::string, std::string>& palette) {
    auto slot = [&](const char* name, const char* fallback) {
        auto it = palette.find(name);
        return it != palette.end() ? it->second : std::string(fallback);
    };
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
    out += std::string("<a:theme xmlns:a=\"") + kANs + "\" name=\"Office Theme\">";
    out += "<a:themeElements><a:clrScheme name=\"Office\">";
    out += "<a:dk1><a:sysClr val=\"windowText\" lastClr=\"" + slot("dk1", "000000") +
           "\"/></a:dk1>";
    out += "<a:lt1><a:sysClr val=\"window\" lastClr=\"" + slot("lt1", "FFFFFF") + "\"/></a:lt1>";
    out += "<a:dk2><a:srgbClr val=\"" + slot("dk2", "44546A") + "\"/></a:dk2>";
    out += "<a:lt2><a:srgbClr val=\"" + slot("lt2", "E7E6E6") + "\"/></a:lt2>";
    for (int i = 1; i <= 6; ++i) {
        static const char* defaults[] = {"4472C4", "ED7D31", "A5A5A5", "FFC000", "5B9BD5",
                                         "70AD47"};
        std::string name = "accent" + std::to_string(i);
        out += "<a:" + name + "><a:srgbClr val=\"" + slot(name.c_str(), defaults[i - 1]) +
               "\"/></a:" + name + ">";
    }
    out += "<a:hlink><a:srgbClr val=\"" + slot("hlink", "0563C1") + "\"/></a:hlink>";
    out += "<a:folHlink><a:srgbClr val=\"" + slot("folHlink", "954F72") + "\"/></a:folHlink>";
    out += "</a:clrScheme></a:themeElements></a:theme>";
    return out;
}

} // namespace

std::vector<std::string> expected_part_names(const FixtureManifest& m) {
    std::vector<std::string> names = {"[Content_Types].xml", "_rels/.rels", "xl/workbook.xml",
                                      "xl/_rels/workbook.xml.rels"};
    for (std::size_t i = 0; i < m.sheets.size(); ++i) {
        names.push_back("xl/worksheets/sheet" + std::to_string(i + 1) + ".xml");
        if (!m.sheets[i].objects.empty()) {
            names.push_back("xl/worksheets/_rels/sheet" + std::to_string(i + 1) + ".xml.rels");
            if (!m.quirks.dangling_drawing)
                names.push_back("xl/drawings/drawing" + std::to_string(i + 1) + ".xml");
        }
    }
    if (!m.quirks.omit_theme) {
        names.push_back("xl/theme/theme1.xml");
        if (m.quirks.second_theme)
            names.push_back("xl/theme/theme2.xml");
    }
    return names;
}

std::vector<std::uint8_t> forge(const FixtureManifest& m) {
    std::vector<std::pair<std::string, std::string>> parts;

    std::string content_types =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<Types xmlns=\"http://schemas.openxmlformats.org/package/2006/content-types\">"
        "<Default Extension=\"rels\" "
        "ContentType=\"application/vnd.openxmlformats-package.relationships+xml\"/>"
        "<Default Extension=\"xml\" ContentType=\"application/xml\"/>"
        "<Override PartName=\"/xl/workbook.xml\" "
        "ContentType=\"application/"
        "vnd.openxmlformats-officedocument.spreadsheetml.sheet.main+xml\"/>";
    for (std::size_t i = 0; i < m.sheets.size(); ++i)
        content_types += "<Override PartName=\"/xl/worksheets/sheet" + std::to_string(i + 1) +
                         ".xml\" ContentType=\"application/"
                         "vnd.openxmlformats-officedocument.spreadsheetml.worksheet+xml\"/>";
    for (std::size_t i = 0; i < m.sheets.size(); ++i)
        if (!m.sheets[i].objects.empty() && !m.quirks.dangling_drawing)
            content_types += "<Override PartName=\"/xl/drawings/drawing" +
                             std::to_string(i + 1) +
                             ".xml\" ContentType=\"application/"
                             "vnd.openxmlformats-officedocument.drawing+xml\"/>";
    if (!m.quirks.omit_theme)
        content_types += "<Override PartName=\"/xl/theme/theme1.xml\" "
                         "ContentType=\"application/"
                         "vnd.openxmlformats-officedocument.theme+xml\"/>";
    content_types += "</Types>";
    parts.emplace_back("[Content_Types].xml", content_types);

    parts.emplace_back(
        "_rels/.rels",
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">"
        "<Relationship Id=\"rId1\" "
        "Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/"
        "officeDocument\" Target=\"xl/workbook.xml\"/></Relationships>");

    std::string workbook =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<workbook xmlns=\"http://schemas.openxmlformats.org/spreadsheetml/2006/main\" "
        "xmlns:r=\"" +
        std::string(kRNs) + "\"><sheets>";
    for (std::size_t i = 0; i < m.sheets.size(); ++i)
        workbook += "<sheet name=\"" + xml::escape(m.sheets[i].name) + "\" sheetId=\"" +
                    std::to_string(i + 1) + "\" r:id=\"rId" + std::to_string(i + 1) + "\"/>";
    workbook += "</sheets></workbook>";
    parts.emplace_back("xl/workbook.xml", workbook);

    std::string wb_rels =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">";
    for (std::size_t i = 0; i < m.sheets.size(); ++i)
        wb_rels += "<Relationship Id=\"rId" + std::to_string(i + 1) +
                   "\" Type=\"http://schemas.openxmlformats.org/officeDocument/2006/"
                   "relationships/worksheet\" Target=\"worksheets/sheet" +
                   std::to_string(i + 1) + ".xml\"/>";
    int next_rid = static_cast<int>(m.sheets.size()) + 1;
    if (!m.quirks.omit_theme) {
        wb_rels += "<Relationship Id=\"rId" + std::to_string(next_rid++) +
                   "\" Type=\"http://schemas.openxmlformats.org/officeDocument/2006/"
                   "relationships/theme\" Target=\"theme/theme1.xml\"/>";
        if (m.quirks.second_theme)
            wb_rels += "<Relationship Id=\"rId" + std::to_string(next_rid++) +
                       "\" Type=\"http://schemas.openxmlformats.org/officeDocument/2006/"
                       "relationships/theme\" Target=\"theme/theme2.xml\"/>";
    }
    wb_rels += "</Relationships>";
    parts.emplace_back("xl/_rels/workbook.xml.rels", wb_rels);

    for (std::size_t i = 0; i < m.sheets.size(); ++i) {
        const auto& sheet = m.sheets[i];
        bool has_drawing = !sheet.objects.empty();
        parts.emplace_back("xl/worksheets/sheet" + std::to_string(i + 1) + ".xml",
                           sheet_xml(sheet, has_drawing));
        if (has_drawing) {
            parts.emplace_back(
                "xl/worksheets/_rels/sheet" + std::to_string(i + 1) + ".xml.rels",
                "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
                "<Relationships "
                "xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">"
                "<Relationship Id=\"rId1\" "
                "Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/"
                "drawing\" Target=\"../drawings/drawing" +
                    std::to_string(i + 1) + ".xml\"/></Relationships>");
            if (!m.quirks.dangling_drawing)
                parts.emplace_back("xl/drawings/drawing" + std::to_string(i + 1) + ".xml",
                                   drawing_xml(sheet));
        }
    }

    if (!m.quirks.omit_theme) {
        parts.emplace_back("xl/theme/theme1.xml", theme_xml(m.theme));
        if (m.quirks.second_theme) {
            // A second palette with a distinct accent1 so tie-breaking is
            // observable.
            std::map<std::string, std::string> other = m.theme;
            other["accent1"] = "FF00FF";
            parts.emplace_back("xl/theme/theme2.xml", theme_xml(other));
        }
    }

    return zip::write_archive(parts);
}

} // namespace xlsxdiag::forge
