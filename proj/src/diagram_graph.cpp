#include "xlsxdiag/diagram_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace xlsxdiag {

namespace {

double bbox_area(const BBox& b) {
    return std::max(0.0, b.right - b.left) * std::max(0.0, b.bottom - b.top);
}

double overlap_area(const BBox& a, const BBox& b) {
    double w = std::min(a.right, b.right) - std::max(a.left, b.left);
    double h = std::min(a.bottom, b.bottom) - std::max(a.top, b.top);
    return w > 0 && h > 0 ? w * h : 0.0;
}

BBox bbox_union(const BBox& a, const BBox& b) {
    return {std::min(a.left, b.left), std::max(a.right, b.right), std::min(a.top, b.top),
            std::max(a.bottom, b.bottom)};
}

PtPoint bbox_center(const BBox& b) {
    return {(b.left + b.right) / 2.0, (b.top + b.bottom) / 2.0};
}

bool is_rect_kind(ShapeKind k) {
    return k == ShapeKind::rectangle || k == ShapeKind::roundRectangle;
}

// Distance along an outward cardinal ray from p to the box entry point;
// nullopt when the ray misses entirely.
std::optional<double> ray_bbox_distance(const PtPoint& p, CardinalDirection d, const BBox& b) {
    switch (d) {
    case CardinalDirection::E:
        if (p.y < b.top || p.y > b.bottom || b.right < p.x)
            return std::nullopt;
        return std::max(0.0, b.left - p.x);
    case CardinalDirection::W:
        if (p.y < b.top || p.y > b.bottom || b.left > p.x)
            return std::nullopt;
        return std::max(0.0, p.x - b.right);
    case CardinalDirection::S:
        if (p.x < b.left || p.x > b.right || b.bottom < p.y)
            return std::nullopt;
        return std::max(0.0, b.top - p.y);
    case CardinalDirection::N:
        if (p.x < b.left || p.x > b.right || b.top > p.y)
            return std::nullopt;
        return std::max(0.0, p.y - b.bottom);
    }
    return std::nullopt;
}

} // namespace

bool bbox_contains(const BBox& box, const PtPoint& p) {
    return p.x >= box.left && p.x <= box.right && p.y >= box.top && p.y <= box.bottom;
}

double bbox_point_distance(const BBox& box, const PtPoint& p) {
    double dx = std::max({box.left - p.x, 0.0, p.x - box.right});
    double dy = std::max({box.top - p.y, 0.0, p.y - box.bottom});
    return std::hypot(dx, dy);
}

double point_segment_distance(const PtPoint& p, const PtPoint& a, const PtPoint& b) {
    double vx = b.x - a.x;
    double vy = b.y - a.y;
    double len2 = vx * vx + vy * vy;
    double t = 0.0;
    if (len2 > 0)
        t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

std::vector<Component> pair_components(const CanonicalDiagram& diagram,
                                       const GraphConfig& config) {
    struct Candidate {
        double fraction; // of the text box area
        double rect_area;
        int rect_id;
        int text_id;
    };
    std::vector<Candidate> candidates;
    for (const auto& tb : diagram.shapes) {
        if (tb.kind != ShapeKind::textBox)
            continue;
        double tb_area = bbox_area(tb.bbox);
        for (const auto& rect : diagram.shapes) {
            if (!is_rect_kind(rect.kind))
                continue;
            double fraction;
            if (tb_area > 0) {
                fraction = overlap_area(tb.bbox, rect.bbox) / tb_area;
            } else {
                // Degenerate text box: treat center containment as full overlap.
                fraction = bbox_contains(rect.bbox, bbox_center(tb.bbox)) ? 1.0 : 0.0;
            }
            if (fraction >= config.containment_overlap_min && fraction > 0)
                candidates.push_back({fraction, bbox_area(rect.bbox), rect.id, tb.id});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.fraction != b.fraction)
            return a.fraction > b.fraction;
        if (a.rect_area != b.rect_area)
            return a.rect_area < b.rect_area;
        if (a.rect_id != b.rect_id)
            return a.rect_id < b.rect_id;
        return a.text_id < b.text_id;
    });

    std::set<int> used_rects, used_texts;
    struct Pairing {
        int rect_id;
        int text_id;
    };
    std::vector<Pairing> pairings;
    for (const auto& c : candidates) {
        if (used_rects.count(c.rect_id) || used_texts.count(c.text_id))
            continue;
        used_rects.insert(c.rect_id);
        used_texts.insert(c.text_id);
        pairings.push_back({c.rect_id, c.text_id});
    }

    std::vector<Component> components;
    auto shape_by_id = [&](int id) -> const CanonicalShape& { return diagram.shapes[id]; };
    for (const auto& p : pairings) {
        Component comp;
        comp.rect_shape_id = p.rect_id;
        comp.label_shape_id = p.text_id;
        comp.name = shape_by_id(p.text_id).text.value_or("");
        comp.bbox = bbox_union(shape_by_id(p.rect_id).bbox, shape_by_id(p.text_id).bbox);
        components.push_back(std::move(comp));
    }
    for (const auto& rect : diagram.shapes) {
        if (!is_rect_kind(rect.kind) || used_rects.count(rect.id))
            continue;
        Component comp;
        comp.rect_shape_id = rect.id;
        comp.bbox = rect.bbox;
        components.push_back(std::move(comp));
    }

    std::sort(components.begin(), components.end(), [](const Component& a, const Component& b) {
        int amin = std::min(a.rect_shape_id.value_or(1 << 30), a.label_shape_id.value_or(1 << 30));
        int bmin = std::min(b.rect_shape_id.value_or(1 << 30), b.label_shape_id.value_or(1 << 30));
        return amin < bmin;
    });
    for (std::size_t i = 0; i < components.size(); ++i)
        components[i].id = static_cast<int>(i);
    return components;
}

namespace {

struct Target {
    BBox bbox;
    EndpointRef ref;
};

EndpointRef bind_endpoint(const PtPoint& p, CardinalDirection outward,
                          const std::vector<Target>& targets, const GraphConfig& config) {
    // Priority classes: containment, then proximity within the gap
    // tolerance, then a short ray probe along the outward direction. The
    // probe reaches 2x the tolerance; beyond that an endpoint stays
    // unbound rather than guessing (the documented soundness bound is 10x).
    constexpr int kRankComponent = 0;
    struct Best {
        int cls = 3;
        double dist = 0;
        int kind_rank = 0;
        int id = 0;
        EndpointRef ref;
    } best;
    double ray_reach = 2.0 * config.link_gap_tolerance;

    for (const auto& t : targets) {
        int cls;
        double dist;
        if (bbox_contains(t.bbox, p)) {
            cls = 0;
            dist = 0.0;
        } else {
            double d = bbox_point_distance(t.bbox, p);
            if (d <= config.link_gap_tolerance) {
                cls = 1;
                dist = d;
            } else {
                auto hit = ray_bbox_distance(p, outward, t.bbox);
                if (!hit || *hit > ray_reach)
                    continue;
                cls = 2;
                dist = *hit;
            }
        }
        int kind_rank = t.ref.kind == EndpointRef::Kind::component ? kRankComponent : 1;
        bool better = std::tie(cls, dist, kind_rank, t.ref.id) <
                      std::tie(best.cls, best.dist, best.kind_rank, best.id);
        if (best.cls == 3 || better) {
            best = {cls, dist, kind_rank, t.ref.id, t.ref};
        }
    }
    return best.cls == 3 ? EndpointRef{} : best.ref;
}

} // namespace

std::vector<Edge> bind_connectors(const CanonicalDiagram& diagram,
                                  const std::vector<Component>& components,
                                  const GraphConfig& config, DiagnosticList& diags) {
    std::set<int> component_members;
    std::vector<Target> targets;
    for (const auto& c : components) {
        targets.push_back({c.bbox, {EndpointRef::Kind::component, c.id}});
        if (c.rect_shape_id)
            component_members.insert(*c.rect_shape_id);
        if (c.label_shape_id)
            component_members.insert(*c.label_shape_id);
    }
    for (const auto& s : diagram.shapes)
        if (!component_members.count(s.id))
            targets.push_back({s.bbox, {EndpointRef::Kind::shape, s.id}});

    std::vector<Edge> edges;
    for (const auto& conn : diagram.connectors) {
        Edge e;
        e.connector_id = conn.id;
        e.from_ref = bind_endpoint(conn.start, conn.start_direction, targets, config);
        e.to_ref = bind_endpoint(conn.end, conn.end_direction, targets, config);
        if (e.from_ref.kind == EndpointRef::Kind::unbound)
            diag(diags, Severity::warning, "unbound_endpoint",
                 "connector " + std::to_string(conn.id) + " start endpoint is unbound");
        if (e.to_ref.kind == EndpointRef::Kind::unbound)
            diag(diags, Severity::warning, "unbound_endpoint",
                 "connector " + std::to_string(conn.id) + " end endpoint is unbound");
        edges.push_back(std::move(e));
    }
    return edges;
}

std::vector<Annotation> attach_annotations(const CanonicalDiagram& diagram,
                                           const std::vector<Component>& components,
                                           const std::vector<Edge>& edges,
                                           const GraphConfig& config) {
    std::set<int> excluded;
    for (const auto& c : components)
        if (c.label_shape_id)
            excluded.insert(*c.label_shape_id);
    for (const auto& e : edges) {
        if (e.from_ref.kind == EndpointRef::Kind::shape)
            excluded.insert(e.from_ref.id);
        if (e.to_ref.kind == EndpointRef::Kind::shape)
            excluded.insert(e.to_ref.id);
    }

    std::vector<Annotation> annotations;
    for (const auto& tb : diagram.shapes) {
        if (tb.kind != ShapeKind::textBox || excluded.count(tb.id))
            continue;
        PtPoint center = bbox_center(tb.bbox);
        std::optional<int> best_id;
        double best_dist = 0;
        for (const auto& conn : diagram.connectors) {
            std::vector<PtPoint> polyline;
            polyline.push_back(conn.start);
            polyline.insert(polyline.end(), conn.bends.begin(), conn.bends.end());
            polyline.push_back(conn.end);
            double dist = 0;
            bool first = true;
            for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
                double d = point_segment_distance(center, polyline[i], polyline[i + 1]);
                if (first || d < dist) {
                    dist = d;
                    first = false;
                }
            }
            if (!best_id || dist < best_dist) { // tie keeps the smaller id
                best_id = conn.id;
                best_dist = dist;
            }
        }
        Annotation a;
        a.id = static_cast<int>(annotations.size());
        a.shape_id = tb.id;
        a.text = tb.text.value_or("");
        if (best_id && best_dist <= config.annotation_max_distance)
            a.attached_connector_id = best_id;
        annotations.push_back(std::move(a));
    }
    return annotations;
}

DiagramGraph build_graph(const CanonicalDiagram& diagram, const GraphConfig& config,
                         DiagnosticList& diags) {
    DiagramGraph g;
    g.components = pair_components(diagram, config);
    g.edges = bind_connectors(diagram, g.components, config, diags);
    g.annotations = attach_annotations(diagram, g.components, g.edges, config);
    for (const auto& a : g.annotations)
        if (a.attached_connector_id)
            for (auto& e : g.edges)
                if (e.connector_id == *a.attached_connector_id)
                    e.annotation_ids.push_back(a.id);
    return g;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

std::string mermaid_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"')
            out += '\'';
        else if (c == '\n')
            out += ' ';
        else
            out += c;
    }
    return out;
}

std::string node_name(const EndpointRef& ref, int connector_id, bool is_start) {
    switch (ref.kind) {
    case EndpointRef::Kind::component: return "c" + std::to_string(ref.id);
    case EndpointRef::Kind::shape: return "s" + std::to_string(ref.id);
    case EndpointRef::Kind::unbound:
        return "u" + std::to_string(connector_id) + (is_start ? "s" : "e");
    }
    return "u";
}

std::string shape_label(const CanonicalDiagram& diagram, int shape_id) {
    const auto& s = diagram.shapes[shape_id];
    if (s.text && !s.text->empty())
        return *s.text;
    return std::string(shape_kind_name(s.kind)) + " " + std::to_string(shape_id);
}

std::string edge_label(const DiagramGraph& graph, const Edge& e) {
    std::string label;
    for (int aid : e.annotation_ids) {
        if (!label.empty())
            label += "; ";
        label += graph.annotations[aid].text;
    }
    return label;
}

void collect_edge_extras(const DiagramGraph& graph, std::vector<int>& free_shapes) {
    std::set<int> seen;
    for (const auto& e : graph.edges) {
        if (e.from_ref.kind == EndpointRef::Kind::shape && seen.insert(e.from_ref.id).second)
            free_shapes.push_back(e.from_ref.id);
        if (e.to_ref.kind == EndpointRef::Kind::shape && seen.insert(e.to_ref.id).second)
            free_shapes.push_back(e.to_ref.id);
    }
    std::sort(free_shapes.begin(), free_shapes.end());
}

std::string export_dot(const CanonicalDiagram& diagram, const DiagramGraph& graph) {
    std::string out = "digraph diagram {\n  rankdir=LR;\n";
    for (const auto& c : graph.components)
        out += "  c" + std::to_string(c.id) + " [label=\"" + dot_escape(c.name) +
               "\", shape=box];\n";
    std::vector<int> free_shapes;
    collect_edge_extras(graph, free_shapes);
    for (int sid : free_shapes)
        out += "  s" + std::to_string(sid) + " [label=\"" +
               dot_escape(shape_label(diagram, sid)) + "\", shape=note];\n";
    for (const auto& e : graph.edges) {
        if (e.from_ref.kind == EndpointRef::Kind::unbound)
            out += "  " + node_name(e.from_ref, e.connector_id, true) +
                   " [label=\"\", shape=point];\n";
        if (e.to_ref.kind == EndpointRef::Kind::unbound)
            out += "  " + node_name(e.to_ref, e.connector_id, false) +
                   " [label=\"\", shape=point];\n";
    }
    for (const auto& e : graph.edges) {
        out += "  " + node_name(e.from_ref, e.connector_id, true) + " -> " +
               node_name(e.to_ref, e.connector_id, false);
        std::string label = edge_label(graph, e);
        if (!label.empty())
            out += " [label=\"" + dot_escape(label) + "\"]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

std::string export_mermaid(const CanonicalDiagram& diagram, const DiagramGraph& graph) {
    std::string out = "flowchart TD\n";
    for (const auto& c : graph.components)
        out += "  c" + std::to_string(c.id) + "[\"" + mermaid_escape(c.name) + "\"]\n";
    std::vector<int> free_shapes;
    collect_edge_extras(graph, free_shapes);
    for (int sid : free_shapes)
        out += "  s" + std::to_string(sid) + "[\"" + mermaid_escape(shape_label(diagram, sid)) +
               "\"]\n";
    for (const auto& e : graph.edges) {
        if (e.from_ref.kind == EndpointRef::Kind::unbound)
            out += "  " + node_name(e.from_ref, e.connector_id, true) + "((\" \"))\n";
        if (e.to_ref.kind == EndpointRef::Kind::unbound)
            out += "  " + node_name(e.to_ref, e.connector_id, false) + "((\" \"))\n";
    }
    for (const auto& e : graph.edges) {
        std::string label = edge_label(graph, e);
        out += "  " + node_name(e.from_ref, e.connector_id, true);
        if (label.empty())
            out += " --> ";
        else
            out += " -->|\"" + mermaid_escape(label) + "\"| ";
        out += node_name(e.to_ref, e.connector_id, false) + "\n";
    }
    return out;
}

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
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
    out += '"';
}

void append_endpoint_ref(std::string& out, const EndpointRef& ref) {
    switch (ref.kind) {
    case EndpointRef::Kind::component:
        out += "{\"kind\": \"component\", \"id\": " + std::to_string(ref.id) + "}";
        break;
    case EndpointRef::Kind::shape:
        out += "{\"kind\": \"shape\", \"id\": " + std::to_string(ref.id) + "}";
        break;
    case EndpointRef::Kind::unbound:
        out += "{\"kind\": \"unbound\", \"id\": null}";
        break;
    }
}

std::string export_json(const CanonicalDiagram& diagram, const DiagramGraph& graph) {
    std::string out = "{\n  \"schema_version\": \"1\",\n  \"source_file\": ";
    append_json_string(out, diagram.source_file);
    out += ",\n  \"components\": [";
    for (std::size_t i = 0; i < graph.components.size(); ++i) {
        const auto& c = graph.components[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"id\": " + std::to_string(c.id) + ", \"name\": ";
        append_json_string(out, c.name);
        out += ", \"rect_shape_id\": " +
               (c.rect_shape_id ? std::to_string(*c.rect_shape_id) : "null");
        out += ", \"label_shape_id\": " +
               (c.label_shape_id ? std::to_string(*c.label_shape_id) : "null");
        out += ", \"bbox\": {\"left\": " + format_pt(c.bbox.left) +
               ", \"right\": " + format_pt(c.bbox.right) + ", \"top\": " + format_pt(c.bbox.top) +
               ", \"bottom\": " + format_pt(c.bbox.bottom) + "}}";
    }
    out += graph.components.empty() ? "],\n" : "\n  ],\n";
    out += "  \"edges\": [";
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& e = graph.edges[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"connector_id\": " + std::to_string(e.connector_id) + ", \"from\": ";
        append_endpoint_ref(out, e.from_ref);
        out += ", \"to\": ";
        append_endpoint_ref(out, e.to_ref);
        out += ", \"annotation_ids\": [";
        for (std::size_t a = 0; a < e.annotation_ids.size(); ++a) {
            if (a)
                out += ", ";
            out += std::to_string(e.annotation_ids[a]);
        }
        out += "]}";
    }
    out += graph.edges.empty() ? "],\n" : "\n  ],\n";
    out += "  \"annotations\": [";
    for (std::size_t i = 0; i < graph.annotations.size(); ++i) {
        const auto& a = graph.annotations[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"id\": " + std::to_string(a.id) +
               ", \"shape_id\": " + std::to_string(a.shape_id) + ", \"text\": ";
        append_json_string(out, a.text);
        out += ", \"attached_connector_id\": " +
               (a.attached_connector_id ? std::to_string(*a.attached_connector_id) : "null");
        out += "}";
    }
    out += graph.annotations.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

} // namespace

std::string export_graph(const CanonicalDiagram& diagram, const DiagramGraph& graph,
                         GraphFormat format) {
    switch (format) {
    case GraphFormat::dot: return export_dot(diagram, graph);
    case GraphFormat::mermaid: return export_mermaid(diagram, graph);
    case GraphFormat::json: return export_json(diagram, graph);
    }
    return {};
}

} // namespace xlsxdiag
