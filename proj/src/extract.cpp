#include "xlsxdiag/extract.hpp"

#include "xlsxdiag/opc_package.hpp"

namespace xlsxdiag {

namespace {

CanonicalDiagram extract_package(const PackageHandle& pkg, std::string source_name,
                                 DiagnosticList diags) {
    ThemePalette palette;
    if (auto theme_part = resolve_theme_part(pkg, diags)) {
        palette = parse_theme(pkg.part(theme_part->path), diags);
    } else {
        palette = office_default_palette();
        diag(diags, Severity::info, "no_theme", "package has no theme part; Office defaults used");
    }

    std::vector<SheetDrawing> sheets;
    for (const auto& ref : resolve_drawing_parts(pkg, diags)) {
        SheetDrawing sheet;
        sheet.sheet_name = ref.sheet_name;
        sheet.metrics = parse_sheet_metrics(pkg.part(ref.worksheet.path));
        sheet.objects = parse_drawing(pkg.part(ref.drawing.path), diags);
        sheets.push_back(std::move(sheet));
    }

    return build_canonical(sheets, palette, std::move(source_name), std::move(diags));
}

} // namespace

CanonicalDiagram extract_file(const std::filesystem::path& path) {
    DiagnosticList diags;
    PackageHandle pkg = PackageHandle::open(path, diags);
    return extract_package(pkg, path.filename().string(), std::move(diags));
}

CanonicalDiagram extract_bytes(std::vector<std::uint8_t> bytes, std::string source_name) {
    DiagnosticList diags;
    PackageHandle pkg = PackageHandle::from_bytes(std::move(bytes), diags);
    return extract_package(pkg, std::move(source_name), std::move(diags));
}

} // namespace xlsxdiag
