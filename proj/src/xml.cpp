#include "xlsxdiag/xml.hpp"

#include "xlsxdiag/diagnostics.hpp"

#include <expat.h>

#include <cstring>

namespace xlsxdiag::xml {

namespace {

// expat reports namespace-expanded names as "uri<SEP>local" with the
// separator chosen at parser creation.
constexpr char kNsSep = '\x01';

void split_name(const char* expanded, std::string& ns, std::string& local) {
    const char* sep = std::strchr(expanded, kNsSep);
    if (sep) {
        ns.assign(expanded, sep);
        local.assign(sep + 1);
    } else {
        ns.clear();
        local.assign(expanded);
    }
}

struct BuildState {
    std::unique_ptr<Element> root;
    std::vector<Element*> stack;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** atts) {
    auto* st = static_cast<BuildState*>(user);
    auto elem = std::make_unique<Element>();
    split_name(name, elem->ns, elem->local);
    for (int i = 0; atts[i]; i += 2) {
        Attribute a;
        split_name(atts[i], a.ns, a.local);
        a.value = atts[i + 1];
        elem->attributes.push_back(std::move(a));
    }
    Element* raw = elem.get();
    if (st->stack.empty()) {
        st->root = std::move(elem);
    } else {
        st->stack.back()->children.push_back(std::move(elem));
    }
    st->stack.push_back(raw);
}

void XMLCALL on_end(void* user, const XML_Char*) {
    auto* st = static_cast<BuildState*>(user);
    st->stack.pop_back();
}

void XMLCALL on_text(void* user, const XML_Char* s, int len) {
    auto* st = static_cast<BuildState*>(user);
    if (!st->stack.empty())
        st->stack.back()->text.append(s, static_cast<size_t>(len));
}

} // namespace

const std::string* Element::attr(std::string_view local_name) const {
    for (const auto& a : attributes)
        if (a.local == local_name)
            return &a.value;
    return nullptr;
}

std::string Element::attr_or(std::string_view local_name, std::string_view fallback) const {
    const std::string* v = attr(local_name);
    return v ? *v : std::string(fallback);
}

const Element* Element::child(std::string_view local_name) const {
    for (const auto& c : children)
        if (c->local == local_name)
            return c.get();
    return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view local_name) const {
    std::vector<const Element*> out;
    for (const auto& c : children)
        if (c->local == local_name)
            out.push_back(c.get());
    return out;
}

std::unique_ptr<Element> parse(std::span<const std::uint8_t> bytes) {
    XML_Parser parser = XML_ParserCreateNS(nullptr, kNsSep);
    if (!parser)
        throw MalformedXmlError("failed to create XML parser");

    BuildState state;
    XML_SetUserData(parser, &state);
    XML_SetElementHandler(parser, on_start, on_end);
    XML_SetCharacterDataHandler(parser, on_text);

    XML_Status status = XML_Parse(parser, reinterpret_cast<const char*>(bytes.data()),
                                  static_cast<int>(bytes.size()), /*isFinal=*/1);
    if (status != XML_STATUS_OK) {
        std::string msg = XML_ErrorString(XML_GetErrorCode(parser));
        msg += " at line " + std::to_string(XML_GetCurrentLineNumber(parser));
        XML_ParserFree(parser);
        throw MalformedXmlError(msg);
    }
    XML_ParserFree(parser);
    if (!state.root)
        throw MalformedXmlError("document has no root element");
    return std::move(state.root);
}

std::unique_ptr<Element> parse(std::string_view text) {
    return parse(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c; break;
        }
    }
    return out;
}

} // namespace xlsxdiag::xml
