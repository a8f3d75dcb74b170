#pragma once

#include "xlsxdiag/diagnostics.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace xlsxdiag::zip {

// Read-only view of a zip file, loaded fully into memory. Immutable after
// open; safe for concurrent reads.
class Archive {
public:
    // Throws NotAZipError when no end-of-central-directory record is found,
    // IoError on unreadable files or corrupt entries.
    static Archive open_file(const std::filesystem::path& path, DiagnosticList& diags);
    static Archive from_bytes(std::vector<std::uint8_t> bytes, DiagnosticList& diags);

    const std::vector<std::string>& entry_names() const { return names_; }
    bool contains(const std::string& name) const { return entries_.count(name) != 0; }
    // Decompressed entry bytes. Throws IoError on unknown name or bad data.
    std::vector<std::uint8_t> read(const std::string& name) const;

private:
    struct Entry {
        std::uint64_t local_header_offset = 0;
        std::uint64_t compressed_size = 0;
        std::uint64_t uncompressed_size = 0;
        std::uint16_t method = 0;
        std::uint32_t crc32 = 0;
    };

    void parse_central_directory(DiagnosticList& diags);

    std::vector<std::uint8_t> bytes_;
    std::map<std::string, Entry> entries_;
    std::vector<std::string> names_; // central directory order, duplicates dropped
};

// Deterministic zip writer: stored (uncompressed) entries, fixed timestamps,
// entries in the order given. Good enough for OPC packages.
std::vector<std::uint8_t> write_archive(
    const std::vector<std::pair<std::string, std::string>>& entries);

} // namespace xlsxdiag::zip
