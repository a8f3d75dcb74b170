#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xlsxdiag::xml {

// Small namespace-aware DOM built on expat. Element and attribute names are
// split into (namespace URI, local name); matching is done by local name,
// with the resolved namespace available for verification.
struct Attribute {
    std::string ns;
    std::string local;
    std::string value;
};

struct Element {
    std::string ns;
    std::string local;
    std::vector<Attribute> attributes;
    std::vector<std::unique_ptr<Element>> children;
    std::string text; // concatenated direct character data

    const std::string* attr(std::string_view local_name) const;
    std::string attr_or(std::string_view local_name, std::string_view fallback) const;
    const Element* child(std::string_view local_name) const;
    std::vector<const Element*> children_named(std::string_view local_name) const;
};

// Parses a complete document. Throws MalformedXmlError on any parse failure.
std::unique_ptr<Element> parse(std::span<const std::uint8_t> bytes);
std::unique_ptr<Element> parse(std::string_view text);

// Escapes text for use in element content / attribute values.
std::string escape(std::string_view text);

} // namespace xlsxdiag::xml
