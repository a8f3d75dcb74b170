#pragma once

#include "xlsxdiag/canonical_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xlsxdiag {

// Thresholds for the deterministic graph inference. All distances in
// points.
struct GraphConfig {
    double containment_overlap_min = 0.5; // fraction of the text box area
    double link_gap_tolerance = 6.0;
    double annotation_max_distance = 36.0;
};

// A diagram entity: a (rounded) rectangle paired with the text box that
// names it. Either member may be absent, never both.
struct Component {
    int id = 0;
    std::string name; // empty when unnamed
    std::optional<int> rect_shape_id;
    std::optional<int> label_shape_id;
    BBox bbox; // union of members
};

struct EndpointRef {
    enum class Kind { component, shape, unbound };
    Kind kind = Kind::unbound;
    int id = -1; // component id or shape id; -1 when unbound
};

struct Edge {
    int connector_id = 0;
    EndpointRef from_ref; // start endpoint
    EndpointRef to_ref;   // end endpoint
    std::vector<int> annotation_ids;
};

struct Annotation {
    int id = 0;
    int shape_id = 0; // a textBox not consumed as a component label
    std::string text;
    std::optional<int> attached_connector_id; // none = free text
};

struct DiagramGraph {
    std::vector<Component> components;
    std::vector<Edge> edges;
    std::vector<Annotation> annotations;
};

// Pairs every text box with the rectangle it overlaps most (at least
// containment_overlap_min of the text box area), greedily by overlap;
// unpaired rectangles become unnamed components.
std::vector<Component> pair_components(const CanonicalDiagram& diagram,
                                       const GraphConfig& config);

// Binds each connector endpoint to a component or free shape: containment
// wins over proximity (bbox distance <= tolerance), which wins over a
// short outward ray probe; ties break on smaller distance, components
// before free shapes, then smaller id. Unbound endpoints are diagnosed,
// never invented.
std::vector<Edge> bind_connectors(const CanonicalDiagram& diagram,
                                  const std::vector<Component>& components,
                                  const GraphConfig& config, DiagnosticList& diags);

// Attaches remaining text boxes to the nearest connector polyline within
// annotation_max_distance (measured from the box center); farther boxes
// stay free. Text boxes already bound as edge endpoints are relationship
// targets, not annotations.
std::vector<Annotation> attach_annotations(const CanonicalDiagram& diagram,
                                           const std::vector<Component>& components,
                                           const std::vector<Edge>& edges,
                                           const GraphConfig& config);

// pair + bind + attach, with edge.annotation_ids backfilled.
DiagramGraph build_graph(const CanonicalDiagram& diagram, const GraphConfig& config,
                         DiagnosticList& diags);

enum class GraphFormat { dot, mermaid, json };

// Deterministic text export. Unbound endpoints render as dangling
// pseudo-nodes; edge labels carry the attached annotation texts.
std::string export_graph(const CanonicalDiagram& diagram, const DiagramGraph& graph,
                         GraphFormat format);

// Geometry helpers shared with the acceptance suite.
double bbox_point_distance(const BBox& box, const PtPoint& p);
bool bbox_contains(const BBox& box, const PtPoint& p);
double point_segment_distance(const PtPoint& p, const PtPoint& a, const PtPoint& b);

} // namespace xlsxdiag
