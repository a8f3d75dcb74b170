#include "xlsxdiag/opc_package.hpp"

#include "xlsxdiag/xml.hpp"

#include <algorithm>

namespace xlsxdiag {

namespace {

constexpr const char* kRelTypeWorksheet =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/worksheet";
constexpr const char* kRelTypeDrawing =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/drawing";
constexpr const char* kRelTypeTheme =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/theme";
constexpr const char* kRelTypeOfficeDocument =
    "http://schemas.openxmlformats.org/officeDocument/2006/relationships/officeDocument";

std::string rels_path_of(const std::string& part_path) {
    auto slash = part_path.find_last_of('/');
    if (slash == std::string::npos)
        return "_rels/" + part_path + ".rels";
    return part_path.substr(0, slash) + "/_rels/" + part_path.substr(slash + 1) + ".rels";
}

std::string directory_of(std::string_view part_path) {
    auto slash = part_path.find_last_of('/');
    return slash == std::string_view::npos ? std::string() : std::string(part_path.substr(0, slash));
}

std::vector<Relationship> parse_relationships_xml(const std::vector<std::uint8_t>& bytes) {
    auto root = xml::parse(bytes);
    std::vector<Relationship> rels;
    for (const auto& c : root->children) {
        if (c->local != "Relationship")
            continue;
        Relationship r;
        r.id = c->attr_or("Id", "");
        r.type = c->attr_or("Type", "");
        r.target = c->attr_or("Target", "");
        r.external = c->attr_or("TargetMode", "") == "External";
        rels.push_back(std::move(r));
    }
    return rels;
}

} // namespace

std::string normalize_part_path(std::string_view path) {
    std::vector<std::string> segments;
    std::string current;
    auto flush = [&] {
        if (current.empty() || current == ".") {
            current.clear();
            return;
        }
        if (current == "..") {
            if (!segments.empty())
                segments.pop_back();
        } else {
            segments.push_back(current);
        }
        current.clear();
    };
    for (char ch : path) {
        if (ch == '/' || ch == '\\')
            flush();
        else
            current += ch;
    }
    flush();
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i)
            out += '/';
        out += segments[i];
    }
    return out;
}

std::string resolve_relationship_target(std::string_view source_part, std::string_view target) {
    if (!target.empty() && (target.front() == '/' || target.front() == '\\'))
        return normalize_part_path(target);
    std::string dir = directory_of(source_part);
    if (dir.empty())
        return normalize_part_path(target);
    return normalize_part_path(dir + "/" + std::string(target));
}

PackageHandle PackageHandle::open(const std::filesystem::path& path, DiagnosticList& diags) {
    if (!std::filesystem::exists(path))
        throw IoError("no such file: " + path.string());
    PackageHandle pkg;
    pkg.archive_ = zip::Archive::open_file(path, diags);
    for (const auto& name : pkg.archive_.entry_names())
        pkg.part_names_.push_back(normalize_part_path(name));
    if (!pkg.has_part("[Content_Types].xml"))
        throw MissingContentTypesError("package has no [Content_Types].xml part");
    return pkg;
}

PackageHandle PackageHandle::from_bytes(std::vector<std::uint8_t> bytes, DiagnosticList& diags) {
    PackageHandle pkg;
    pkg.archive_ = zip::Archive::from_bytes(std::move(bytes), diags);
    for (const auto& name : pkg.archive_.entry_names())
        pkg.part_names_.push_back(normalize_part_path(name));
    if (!pkg.has_part("[Content_Types].xml"))
        throw MissingContentTypesError("package has no [Content_Types].xml part");
    return pkg;
}

bool PackageHandle::has_part(const std::string& path) const {
    return std::find(part_names_.begin(), part_names_.end(), normalize_part_path(path)) !=
           part_names_.end();
}

std::vector<std::uint8_t> PackageHandle::part(const std::string& path) const {
    return archive_.read(normalize_part_path(path));
}

std::vector<Relationship> PackageHandle::relationships_of(const std::string& part_path,
                                                          DiagnosticList& diags) const {
    std::string rels = rels_path_of(normalize_part_path(part_path));
    if (!has_part(rels))
        return {};
    try {
        return parse_relationships_xml(part(rels));
    } catch (const MalformedXmlError& e) {
        diag(diags, Severity::error, "malformed_rels",
             "cannot parse " + rels + ": " + e.what());
        return {};
    }
}

namespace {

// Package-level rels name the workbook part; fall back to the conventional
// location when the root rels are absent.
std::string find_workbook_part(const PackageHandle& pkg, DiagnosticList& diags) {
    for (const auto& rel : pkg.relationships_of("", diags)) {
        if (rel.type == kRelTypeOfficeDocument && !rel.external)
            return resolve_relationship_target("", rel.target);
    }
    return "xl/workbook.xml";
}

} // namespace

std::vector<DrawingRef> resolve_drawing_parts(const PackageHandle& pkg, DiagnosticList& diags) {
    std::vector<DrawingRef> out;
    std::string workbook = find_workbook_part(pkg, diags);
    if (!pkg.has_part(workbook))
        return out;

    auto wb_rels = pkg.relationships_of(workbook, diags);
    auto rel_by_id = [&](const std::string& id) -> const Relationship* {
        for (const auto& r : wb_rels)
            if (r.id == id)
                return &r;
        return nullptr;
    };

    // Worksheets in workbook <sheets> order.
    auto wb_root = xml::parse(pkg.part(workbook));
    const xml::Element* sheets = wb_root->child("sheets");
    if (!sheets)
        return out;
    for (const auto* sheet : sheets->children_named("sheet")) {
        std::string sheet_name = sheet->attr_or("name", "");
        const std::string* rid = sheet->attr("id"); // r:id, matched by local name
        const Relationship* rel = rid ? rel_by_id(*rid) : nullptr;
        std::string sheet_part;
        if (rel && !rel->external) {
            sheet_part = resolve_relationship_target(workbook, rel->target);
        } else {
            continue;
        }
        if (!pkg.has_part(sheet_part)) {
            diag(diags, Severity::warning, "dangling_relationship",
                 "worksheet target missing: " + sheet_part);
            continue;
        }
        for (const auto& r : pkg.relationships_of(sheet_part, diags)) {
            if (r.type != kRelTypeDrawing || r.external)
                continue;
            std::string drawing_part = resolve_relationship_target(sheet_part, r.target);
            if (!pkg.has_part(drawing_part)) {
                diag(diags, Severity::warning, "dangling_relationship",
                     "drawing target missing: " + drawing_part);
                continue;
            }
            out.push_back(DrawingRef{PartRef{drawing_part, PartKind::drawing},
                                     PartRef{sheet_part, PartKind::worksheet}, sheet_name});
        }
    }
    return out;
}

std::optional<PartRef> resolve_theme_part(const PackageHandle& pkg, DiagnosticList& diags) {
    std::string workbook = find_workbook_part(pkg, diags);
    if (!pkg.has_part(workbook))
        return std::nullopt;
    for (const auto& rel : pkg.relationships_of(workbook, diags)) {
        if (rel.type != kRelTypeTheme || rel.external)
            continue;
        std::string theme = resolve_relationship_target(workbook, rel.target);
        if (!pkg.has_part(theme)) {
            diag(diags, Severity::warning, "dangling_relationship",
                 "theme target missing: " + theme);
            continue;
        }
        return PartRef{theme, PartKind::theme};
    }
    return std::nullopt;
}

} // namespace xlsxdiag
