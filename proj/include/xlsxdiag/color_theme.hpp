#pragma once

#include "xlsxdiag/diagnostics.hpp"
#include "xlsxdiag/drawingml.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

namespace xlsxdiag {

struct ResolvedColor {
    int r = 0, g = 0, b = 0;
    int a = 255;

    // Uppercase "#RRGGBB", with alpha appended only when a < 255.
    std::string to_hex() const;
};

// The 12 scheme slots plus the tx/bg aliases. Missing slots are filled
// from the Office defaults with a diagnostic.
struct ThemePalette {
    std::map<std::string, std::string> slots; // slot -> "RRGGBB"

    // Resolves a scheme name through the alias map; nullopt when unknown.
    std::optional<std::string> lookup(const std::string& scheme_name) const;
};

ThemePalette office_default_palette();

// Reads the clrScheme out of a theme part. Throws MalformedXmlError.
ThemePalette parse_theme(std::span<const std::uint8_t> theme_xml, DiagnosticList& diags);

// Resolves a literal or scheme color spec, applying its transform chain in
// document order. Unknown scheme names degrade to opaque black with a
// diagnostic.
ResolvedColor resolve_color(const ColorSpec& spec, const ThemePalette& palette,
                            DiagnosticList& diags);

// Explicit color properties win over the style reference; absent both,
// kind stays none. (The precedence itself is applied while parsing shapes;
// this helper expresses the same rule over already-extracted specs.)
ColorSpec effective_style_color(const std::optional<ColorSpec>& style_ref,
                                const std::optional<ColorSpec>& explicit_spec);

} // namespace xlsxdiag
