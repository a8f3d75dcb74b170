#pragma once

#include "xlsxdiag/diagnostics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xlsxdiag::forge {

// Declarative description of a minimal .xlsx package, parsed from a JSON
// manifest. The forge writes raw OPC parts; no Office dependency.
//
// Manifest layout (all geometry in points unless noted):
//   {
//     "name": "fig2",
//     "sheets": [{
//       "name": "Sheet1",
//       "default_col_width": 8.43, "default_row_height": 15.0,
//       "col_widths": {"2": 12.0}, "row_heights": {"3": 30.0},
//       "objects": [{
//         "kind": "rect|roundRect|textBox|straightConnector1|line|"
//                 "bentConnector2..5|curvedConnector3|group|picture",
//         "anchor": "twoCell|oneCell|absolute",
//         "frame": [x, y, cx, cy],
//         "fill": "#RRGGBB" | "scheme:accent1", "line": ...,
//         "text": "...", "rot_deg": 0, "flip_h": false, "flip_v": false,
//         "head_arrow": false, "tail_arrow": false,
//         "adjustments": {"adj1": 50000},
//         "child_space": [ox, oy, cw, ch],        // groups, EMU units
//         "children": [{... "frame_cs": [..]}]    // child-space EMU units
//       }]
//     }],
//     "theme": {"accent1": "4472C4", ...},  // optional palette override
//     "quirks": {"omit_theme": false, "dangling_drawing": false,
//                "second_theme": false},
//     "expected": {
//       "shapes": 22, "connectors": 8,
//       "components": ["Users", ...],
//       "annotations": ["HTTPS", ...],
//       "free_texts": ["https://..."],
//       "edges": [{"from": "Users", "to": "Azure App Service",
//                  "annotation": "HTTPS"}],   // "text:<...>" targets a
//                                             // free text box endpoint
//       "unconnected_components": ["Key Vault"]
//     }
//   }

struct FixtureColor {
    enum class Kind { none, srgb, scheme };
    Kind kind = Kind::none;
    std::string value;
};

struct FixtureObject {
    std::string kind;
    std::string anchor = "twoCell";
    double frame[4] = {0, 0, 0, 0};    // points (top-level objects)
    double frame_cs[4] = {0, 0, 0, 0}; // child-space EMU units (group children)
    FixtureColor fill;
    FixtureColor line;
    std::optional<std::string> text;
    double rot_deg = 0;
    bool flip_h = false;
    bool flip_v = false;
    bool head_arrow = false;
    bool tail_arrow = false;
    std::map<std::string, int> adjustments;
    double child_space[4] = {0, 0, 0, 0};
    std::vector<FixtureObject> children;
};

struct FixtureSheet {
    std::string name = "Sheet1";
    double default_col_width = 8.43;
    double default_row_height = 15.0;
    std::map<int, double> col_widths;  // 0-based
    std::map<int, double> row_heights; // 0-based
    std::vector<FixtureObject> objects;
};

struct ExpectedEdge {
    std::string from;
    std::string to;
    std::optional<std::string> annotation;
};

struct Expected {
    std::optional<int> shapes;
    std::optional<int> connectors;
    std::vector<std::string> components;
    std::vector<std::string> annotations;
    std::vector<std::string> free_texts;
    std::vector<ExpectedEdge> edges;
    std::vector<std::string> unconnected_components;
};

struct Quirks {
    bool omit_theme = false;
    bool dangling_drawing = false;
    bool second_theme = false;
};

struct FixtureManifest {
    std::string name = "fixture";
    std::vector<FixtureSheet> sheets;
    std::map<std::string, std::string> theme; // slot -> RRGGBB, empty = defaults
    Quirks quirks;
    Expected expected;

    // Parses and lints a manifest. Throws InvalidManifestError when the
    // declaration is malformed or the expectations are inconsistent with
    // the declared objects.
    static FixtureManifest parse(const std::string& json_text);
};

// Produces the .xlsx bytes for a manifest.
std::vector<std::uint8_t> forge(const FixtureManifest& manifest);

// The part names forge() will emit, for package-level assertions.
std::vector<std::string> expected_part_names(const FixtureManifest& manifest);

} // namespace xlsxdiag::forge
