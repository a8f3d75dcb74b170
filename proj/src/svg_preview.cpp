#include "xlsxdiag/svg_preview.hpp"

#include "xlsxdiag/xml.hpp"

#include <algorithm>

namespace xlsxdiag {

std::string render_svg(const CanonicalDiagram& d) {
    double max_x = 0, max_y = 0;
    for (const auto& s : d.shapes) {
        max_x = std::max(max_x, s.bbox.right);
        max_y = std::max(max_y, s.bbox.bottom);
    }
    for (const auto& c : d.connectors) {
        max_x = std::max({max_x, c.start.x, c.end.x});
        max_y = std::max({max_y, c.start.y, c.end.y});
        for (const auto& b : c.bends) {
            max_x = std::max(max_x, b.x);
            max_y = std::max(max_y, b.y);
        }
    }
    double width = max_x + 20.0;
    double height = max_y + 20.0;

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_pt(width) +
           "\" height=\"" + format_pt(height) + "\" viewBox=\"0 0 " + format_pt(width) + " " +
           format_pt(height) + "\">\n";
    out += "  <defs>\n"
           "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
           "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">\n"
           "      <path d=\"M 0 0 L 10 5 L 0 10 z\"/>\n"
           "    </marker>\n"
           "  </defs>\n";

    for (const auto& s : d.shapes) {
        std::string fill = s.fill_color ? s.fill_color->substr(0, 7) : "none";
        std::string stroke = s.border_color ? s.border_color->substr(0, 7) : "#000000";
        out += "  <rect x=\"" + format_pt(s.bbox.left) + "\" y=\"" + format_pt(s.bbox.top) +
               "\" width=\"" + format_pt(s.bbox.right - s.bbox.left) + "\" height=\"" +
               format_pt(s.bbox.bottom - s.bbox.top) + "\"";
        if (s.kind == ShapeKind::roundRectangle)
            out += " rx=\"4\"";
        out += " fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
        if (s.text && !s.text->empty()) {
            double cx = (s.bbox.left + s.bbox.right) / 2.0;
            double cy = (s.bbox.top + s.bbox.bottom) / 2.0;
            out += "  <text x=\"" + format_pt(cx) + "\" y=\"" + format_pt(cy) +
                   "\" text-anchor=\"middle\" dominant-baseline=\"middle\" font-size=\"9\">" +
                   xml::escape(*s.text) + "</text>\n";
        }
    }

    for (const auto& c : d.connectors) {
        std::string stroke = c.line_color ? c.line_color->substr(0, 7) : "#000000";
        std::string points = format_pt(c.start.x) + "," + format_pt(c.start.y);
        for (const auto& b : c.bends)
            points += " " + format_pt(b.x) + "," + format_pt(b.y);
        points += " " + format_pt(c.end.x) + "," + format_pt(c.end.y);
        out += "  <polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + stroke + "\"";
        if (c.head_arrow)
            out += " marker-start=\"url(#arrow)\"";
        if (c.tail_arrow)
            out += " marker-end=\"url(#arrow)\"";
        out += "/>\n";
    }

    out += "</svg>\n";
    return out;
}

} // namespace xlsxdiag
