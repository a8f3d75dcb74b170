#pragma once

#include "xlsxdiag/diagnostics.hpp"
#include "xlsxdiag/zip_archive.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace xlsxdiag {

enum class PartKind { workbook, worksheet, drawing, theme, rels, other };

struct PartRef {
    std::string path; // zip-internal, '/'-separated, no leading slash
    PartKind kind = PartKind::other;
};

struct Relationship {
    std::string id;
    std::string type;
    std::string target;
    bool external = false;
};

// One drawing part together with the worksheet that owns it.
struct DrawingRef {
    PartRef drawing;
    PartRef worksheet;
    std::string sheet_name;
};

// An opened .xlsx (OPC) container. Immutable after open; safe for
// concurrent reads.
class PackageHandle {
public:
    // Throws NotAZipError, MissingContentTypesError or IoError.
    static PackageHandle open(const std::filesystem::path& path, DiagnosticList& diags);
    static PackageHandle from_bytes(std::vector<std::uint8_t> bytes, DiagnosticList& diags);

    const std::vector<std::string>& part_names() const { return part_names_; }
    bool has_part(const std::string& path) const;
    std::vector<std::uint8_t> part(const std::string& path) const;
    // Relationships of a part (its _rels/<name>.rels sibling); empty if none.
    std::vector<Relationship> relationships_of(const std::string& part_path,
                                               DiagnosticList& diags) const;

private:
    zip::Archive archive_;
    std::vector<std::string> part_names_;
};

// Collapses '.' and '..' segments, strips a leading slash, normalizes to
// '/' separators. Idempotent.
std::string normalize_part_path(std::string_view path);

// Resolves a relationship target against its source part per OPC rules:
// relative targets resolve against the source part's directory; absolute
// targets are taken from the package root.
std::string resolve_relationship_target(std::string_view source_part, std::string_view target);

// Drawing parts for every worksheet, in workbook sheet order. Dangling
// relationship targets are excluded and reported through `diags`.
std::vector<DrawingRef> resolve_drawing_parts(const PackageHandle& pkg, DiagnosticList& diags);

// The workbook's theme part, or nullopt when absent. Two referenced themes
// tie-break on relationship document order.
std::optional<PartRef> resolve_theme_part(const PackageHandle& pkg, DiagnosticList& diags);

} // namespace xlsxdiag
