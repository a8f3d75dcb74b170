#include "xlsxdiag/zip_archive.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>

namespace xlsxdiag::zip {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralDirSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;

std::uint16_t read_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void push_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
}
void push_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

std::vector<std::uint8_t> inflate_raw(const std::uint8_t* data, std::uint64_t compressed,
                                      std::uint64_t expected) {
    std::vector<std::uint8_t> out(expected);
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK)
        throw IoError("inflate init failed");
    zs.next_in = const_cast<Bytef*>(data);
    zs.avail_in = static_cast<uInt>(compressed);
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.total_out != expected)
        throw IoError("corrupt deflate stream in zip entry");
    return out;
}

} // namespace

Archive Archive::open_file(const std::filesystem::path& path, DiagnosticList& diags) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("read failure: " + path.string());
    return from_bytes(std::move(bytes), diags);
}

Archive Archive::from_bytes(std::vector<std::uint8_t> bytes, DiagnosticList& diags) {
    Archive a;
    a.bytes_ = std::move(bytes);
    a.parse_central_directory(diags);
    return a;
}

void Archive::parse_central_directory(DiagnosticList& diags) {
    // The end-of-central-directory record sits in the last 64KB + 22 bytes.
    if (bytes_.size() < 22)
        throw NotAZipError("file too small to be a zip archive");
    std::size_t scan_from = bytes_.size() >= (0x10000 + 22) ? bytes_.size() - 0x10000 - 22 : 0;
    std::size_t eocd = std::string::npos;
    for (std::size_t i = bytes_.size() - 22 + 1; i-- > scan_from;) {
        if (read_u32(&bytes_[i]) == kEndOfCentralDirSig) {
            eocd = i;
            break;
        }
    }
    if (eocd == std::string::npos)
        throw NotAZipError("no end-of-central-directory record (not a zip file)");

    std::uint16_t entry_count = read_u16(&bytes_[eocd + 10]);
    std::uint32_t cd_offset = read_u32(&bytes_[eocd + 16]);
    if (cd_offset > bytes_.size())
        throw IoError("central directory offset out of range");

    std::size_t pos = cd_offset;
    for (std::uint16_t i = 0; i < entry_count; ++i) {
        if (pos + 46 > bytes_.size() || read_u32(&bytes_[pos]) != kCentralDirSig)
            throw IoError("corrupt central directory");
        Entry e;
        e.method = read_u16(&bytes_[pos + 10]);
        e.crc32 = read_u32(&bytes_[pos + 16]);
        e.compressed_size = read_u32(&bytes_[pos + 20]);
        e.uncompressed_size = read_u32(&bytes_[pos + 24]);
        std::uint16_t name_len = read_u16(&bytes_[pos + 28]);
        std::uint16_t extra_len = read_u16(&bytes_[pos + 30]);
        std::uint16_t comment_len = read_u16(&bytes_[pos + 32]);
        e.local_header_offset = read_u32(&bytes_[pos + 42]);
        if (pos + 46 + name_len > bytes_.size())
            throw IoError("corrupt central directory entry name");
        std::string name(reinterpret_cast<const char*>(&bytes_[pos + 46]), name_len);
        pos += 46u + name_len + extra_len + comment_len;

        if (entries_.count(name)) {
            // Last entry wins, matching common unzip behavior.
            diag(diags, Severity::warning, "duplicate_zip_entry",
                 "duplicate zip entry, keeping the last one: " + name);
            entries_[name] = e;
        } else {
            entries_[name] = e;
            names_.push_back(name);
        }
    }
}

std::vector<std::uint8_t> Archive::read(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end())
        throw IoError("no such zip entry: " + name);
    const Entry& e = it->second;
    // The local header's name/extra lengths can differ from the central
    // directory's; the data offset must come from the local record.
    if (e.local_header_offset + 30 > bytes_.size() ||
        read_u32(&bytes_[e.local_header_offset]) != kLocalHeaderSig)
        throw IoError("corrupt local header for entry: " + name);
    std::uint16_t name_len = read_u16(&bytes_[e.local_header_offset + 26]);
    std::uint16_t extra_len = read_u16(&bytes_[e.local_header_offset + 28]);
    std::uint64_t data_off = e.local_header_offset + 30u + name_len + extra_len;
    if (data_off + e.compressed_size > bytes_.size())
        throw IoError("zip entry data out of range: " + name);

    std::vector<std::uint8_t> out;
    if (e.method == 0) {
        out.assign(bytes_.begin() + static_cast<std::ptrdiff_t>(data_off),
                   bytes_.begin() + static_cast<std::ptrdiff_t>(data_off + e.compressed_size));
    } else if (e.method == 8) {
        out = inflate_raw(&bytes_[data_off], e.compressed_size, e.uncompressed_size);
    } else {
        throw IoError("unsupported zip compression method for entry: " + name);
    }
    std::uint32_t crc = ::crc32(0, out.data(), static_cast<uInt>(out.size()));
    if (crc != e.crc32)
        throw IoError("crc mismatch in zip entry: " + name);
    return out;
}

std::vector<std::uint8_t> write_archive(
    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::vector<std::uint8_t> out;
    struct CdEntry {
        std::string name;
        std::uint32_t crc;
        std::uint32_t size;
        std::uint32_t offset;
    };
    std::vector<CdEntry> cd;

    // Fixed DOS timestamp (2024-01-01 00:00:00) keeps output byte-stable.
    const std::uint16_t dos_time = 0;
    const std::uint16_t dos_date = static_cast<std::uint16_t>(((2024 - 1980) << 9) | (1 << 5) | 1);

    for (const auto& [name, data] : entries) {
        std::uint32_t offset = static_cast<std::uint32_t>(out.size());
        std::uint32_t crc = ::crc32(0, reinterpret_cast<const Bytef*>(data.data()),
                                    static_cast<uInt>(data.size()));
        std::uint32_t size = static_cast<std::uint32_t>(data.size());
        push_u32(out, kLocalHeaderSig);
        push_u16(out, 20);       // version needed
        push_u16(out, 0);        // flags
        push_u16(out, 0);        // method: stored
        push_u16(out, dos_time);
        push_u16(out, dos_date);
        push_u32(out, crc);
        push_u32(out, size);
        push_u32(out, size);
        push_u16(out, static_cast<std::uint16_t>(name.size()));
        push_u16(out, 0); // extra len
        out.insert(out.end(), name.begin(), name.end());
        out.insert(out.end(), data.begin(), data.end());
        cd.push_back({name, crc, size, offset});
    }

    std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
    for (const auto& e : cd) {
        push_u32(out, kCentralDirSig);
        push_u16(out, 20); // version made by
        push_u16(out, 20); // version needed
        push_u16(out, 0);
        push_u16(out, 0);
        push_u16(out, dos_time);
        push_u16(out, dos_date);
        push_u32(out, e.crc);
        push_u32(out, e.size);
        push_u32(out, e.size);
        push_u16(out, static_cast<std::uint16_t>(e.name.size()));
        push_u16(out, 0); // extra
        push_u16(out, 0); // comment
        push_u16(out, 0); // disk
        push_u16(out, 0); // internal attrs
        push_u32(out, 0); // external attrs
        push_u32(out, e.offset);
        out.insert(out.end(), e.name.begin(), e.name.end());
    }
    std::uint32_t cd_size = static_cast<std::uint32_t>(out.size()) - cd_offset;
    push_u32(out, kEndOfCentralDirSig);
    push_u16(out, 0);
    push_u16(out, 0);
    push_u16(out, static_cast<std::uint16_t>(cd.size()));
    push_u16(out, static_cast<std::uint16_t>(cd.size()));
    push_u32(out, cd_size);
    push_u32(out, cd_offset);
    push_u16(out, 0); // comment length
    return out;
}

} // namespace xlsxdiag::zip
