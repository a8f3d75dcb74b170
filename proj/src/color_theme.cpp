#include "xlsxdiag/color_theme.hpp"

#include "xlsxdiag/xml.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace xlsxdiag {

namespace {

constexpr std::array<const char*, 12> kSlotNames = {
    "dk1", "lt1", "dk2", "lt2", "accent1", "accent2",
    "accent3", "accent4", "accent5", "accent6", "hlink", "folHlink"};

const std::map<std::string, std::string>& alias_map() {
    static const std::map<std::string, std::string> aliases = {
        {"tx1", "dk1"}, {"bg1", "lt1"}, {"tx2", "dk2"}, {"bg2", "lt2"}};
    return aliases;
}

bool parse_hex_channel(const std::string& hex, std::size_t pos, int& out) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (pos + 1 >= hex.size())
        return false;
    int hi = nibble(hex[pos]), lo = nibble(hex[pos + 1]);
    if (hi < 0 || lo < 0)
        return false;
    out = hi * 16 + lo;
    return true;
}

bool parse_hex_rgb(const std::string& hex, double& r, double& g, double& b) {
    std::string h = hex;
    if (!h.empty() && h[0] == '#')
        h.erase(0, 1);
    int ri, gi, bi;
    if (h.size() < 6 || !parse_hex_channel(h, 0, ri) || !parse_hex_channel(h, 2, gi) ||
        !parse_hex_channel(h, 4, bi))
        return false;
    r = ri;
    g = gi;
    b = bi;
    return true;
}

struct Hsl {
    double h = 0; // [0, 360)
    double s = 0; // [0, 1]
    double l = 0; // [0, 1]
};

Hsl rgb_to_hsl(double r, double g, double b) {
    r /= 255.0;
    g /= 255.0;
    b /= 255.0;
    double mx = std::max({r, g, b});
    double mn = std::min({r, g, b});
    Hsl hsl;
    hsl.l = (mx + mn) / 2.0;
    double d = mx - mn;
    if (d < 1e-12) {
        hsl.h = 0;
        hsl.s = 0;
        return hsl;
    }
    hsl.s = hsl.l > 0.5 ? d / (2.0 - mx - mn) : d / (mx + mn);
    if (mx == r)
        hsl.h = 60.0 * std::fmod((g - b) / d, 6.0);
    else if (mx == g)
        hsl.h = 60.0 * ((b - r) / d + 2.0);
    else
        hsl.h = 60.0 * ((r - g) / d + 4.0);
    if (hsl.h < 0)
        hsl.h += 360.0;
    return hsl;
}

void hsl_to_rgb(const Hsl& hsl, double& r, double& g, double& b) {
    double c = (1.0 - std::fabs(2.0 * hsl.l - 1.0)) * hsl.s;
    double hp = hsl.h / 60.0;
    double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r1 = 0, g1 = 0, b1 = 0;
    if (hp < 1)      { r1 = c; g1 = x; }
    else if (hp < 2) { r1 = x; g1 = c; }
    else if (hp < 3) { g1 = c; b1 = x; }
    else if (hp < 4) { g1 = x; b1 = c; }
    else if (hp < 5) { r1 = x; b1 = c; }
    else             { r1 = c; b1 = x; }
    double m = hsl.l - c / 2.0;
    r = (r1 + m) * 255.0;
    g = (g1 + m) * 255.0;
    b = (b1 + m) * 255.0;
}

double clamp255(double v) { return std::clamp(v, 0.0, 255.0); }

} // namespace

std::string ResolvedColor::to_hex() const {
    char buf[10];
    if (a < 255)
        std::snprintf(buf, sizeof buf, "#%02X%02X%02X%02X", r, g, b, a);
    else
        std::snprintf(buf, sizeof buf, "#%02X%02X%02X", r, g, b);
    return buf;
}

std::optional<std::string> ThemePalette::lookup(const std::string& scheme_name) const {
    std::string key = scheme_name;
    auto alias = alias_map().find(key);
    if (alias != alias_map().end())
        key = alias->second;
    auto it = slots.find(key);
    if (it == slots.end())
        return std::nullopt;
    return it->second;
}

ThemePalette office_default_palette() {
    // Office 2013+ default theme.
    ThemePalette p;
    p.slots = {
        {"dk1", "000000"},   {"lt1", "FFFFFF"},   {"dk2", "44546A"},   {"lt2", "E7E6E6"},
        {"accent1", "4472C4"}, {"accent2", "ED7D31"}, {"accent3", "A5A5A5"},
        {"accent4", "FFC000"}, {"accent5", "5B9BD5"}, {"accent6", "70AD47"},
        {"hlink", "0563C1"},   {"folHlink", "954F72"}};
    return p;
}

ThemePalette parse_theme(std::span<const std::uint8_t> theme_xml, DiagnosticList& diags) {
    auto root = xml::parse(theme_xml);
    ThemePalette palette;

    const xml::Element* scheme = nullptr;
    if (const auto* elements = root->child("themeElements"))
        scheme = elements->child("clrScheme");
    if (!scheme)
        scheme = root->child("clrScheme");

    if (scheme) {
        for (const auto& slot : scheme->children) {
            for (const auto& color : slot->children) {
                if (color->local == "srgbClr") {
                    palette.slots[slot->local] = color->attr_or("val", "000000");
                } else if (color->local == "sysClr") {
                    // lastClr carries the concrete value the producer rendered.
                    std::string last = color->attr_or("lastClr", "");
                    palette.slots[slot->local] =
                        last.empty() ? (slot->local == "dk1" ? "000000" : "FFFFFF") : last;
                }
            }
        }
    }

    ThemePalette defaults = office_default_palette();
    for (const char* name : kSlotNames) {
        if (!palette.slots.count(name)) {
            palette.slots[name] = defaults.slots[name];
            diag(diags, Severity::warning, "missing_theme_slot",
                 std::string("theme is missing slot '") + name + "', Office default substituted");
        }
    }
    return palette;
}

ResolvedColor resolve_color(const ColorSpec& spec, const ThemePalette& palette,
                            DiagnosticList& diags) {
    double r = 0, g = 0, b = 0;
    double a = 255;
    bool known = true;

    switch (spec.kind) {
    case ColorSpec::Kind::srgb:
        known = parse_hex_rgb(spec.value, r, g, b);
        break;
    case ColorSpec::Kind::scheme: {
        auto hex = palette.lookup(spec.value);
        known = hex && parse_hex_rgb(*hex, r, g, b);
        break;
    }
    case ColorSpec::Kind::system:
        // Resolve through lastClr when present, else treat the two common
        // names like the theme text/background pair.
        if (!spec.sys_last_color.empty()) {
            known = parse_hex_rgb(spec.sys_last_color, r, g, b);
        } else if (spec.value == "window") {
            r = g = b = 255;
        } else if (spec.value == "windowText") {
            r = g = b = 0;
        } else {
            known = false;
        }
        break;
    case ColorSpec::Kind::none:
        known = false;
        break;
    }

    if (!known) {
        diag(diags, Severity::warning, "unknown_scheme",
             "unresolvable color '" + spec.value + "', using opaque black");
        return ResolvedColor{0, 0, 0, 255};
    }

    for (const auto& t : spec.transforms) {
        double amount = t.amount / 100000.0;
        switch (t.op) {
        case ColorTransform::Op::alpha:
            a = clamp255(amount * 255.0);
            break;
        case ColorTransform::Op::tint:
            r = clamp255(r * amount + (1.0 - amount) * 255.0);
            g = clamp255(g * amount + (1.0 - amount) * 255.0);
            b = clamp255(b * amount + (1.0 - amount) * 255.0);
            break;
        case ColorTransform::Op::shade:
            r = clamp255(r * amount);
            g = clamp255(g * amount);
            b = clamp255(b * amount);
            break;
        case ColorTransform::Op::lumMod: {
            Hsl hsl = rgb_to_hsl(r, g, b);
            hsl.l = std::clamp(hsl.l * amount, 0.0, 1.0);
            hsl_to_rgb(hsl, r, g, b);
            break;
        }
        case ColorTransform::Op::lumOff: {
            Hsl hsl = rgb_to_hsl(r, g, b);
            hsl.l = std::clamp(hsl.l + amount, 0.0, 1.0);
            hsl_to_rgb(hsl, r, g, b);
            break;
        }
        case ColorTransform::Op::satMod: {
            Hsl hsl = rgb_to_hsl(r, g, b);
            hsl.s = std::clamp(hsl.s * amount, 0.0, 1.0);
            hsl_to_rgb(hsl, r, g, b);
            break;
        }
        case ColorTransform::Op::other:
            diag(diags, Severity::info, "unsupported_transform",
                 "color transform '" + t.name + "' not applied");
            break;
        }
    }

    ResolvedColor out;
    out.r = static_cast<int>(std::lround(clamp255(r)));
    out.g = static_cast<int>(std::lround(clamp255(g)));
    out.b = static_cast<int>(std::lround(clamp255(b)));
    out.a = static_cast<int>(std::lround(std::clamp(a, 0.0, 255.0)));
    return out;
}

ColorSpec effective_style_color(const std::optional<ColorSpec>& style_ref,
                                const std::optional<ColorSpec>& explicit_spec) {
    if (explicit_spec)
        return *explicit_spec;
    if (style_ref)
        return *style_ref;
    return ColorSpec{}; // kind = none
}

} // namespace xlsxdiag
