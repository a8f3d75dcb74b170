#pragma once

#include "xlsxdiag/canonical_model.hpp"

#include <filesystem>

namespace xlsxdiag {

// Full pipeline: open package, resolve theme and drawing parts, parse
// sheet metrics and drawings, build the canonical diagram. Fatal problems
// throw ExtractionError subtypes; everything else lands in
// diagram.diagnostics.
CanonicalDiagram extract_file(const std::filesystem::path& path);

// Same pipeline over in-memory package bytes; `source_name` becomes the
// diagram's source_file.
CanonicalDiagram extract_bytes(std::vector<std::uint8_t> bytes, std::string source_name);

} // namespace xlsxdiag
