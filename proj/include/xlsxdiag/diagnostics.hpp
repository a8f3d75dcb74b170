#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace xlsxdiag {

enum class Severity { info, warning, error };

// Non-fatal findings accumulated along the pipeline. Fatal conditions throw.
struct Diagnostic {
    Severity severity = Severity::warning;
    std::string code;
    std::string message;
};

using DiagnosticList = std::vector<Diagnostic>;

inline void diag(DiagnosticList& sink, Severity sev, std::string code, std::string message) {
    sink.push_back({sev, std::move(code), std::move(message)});
}

inline const char* severity_name(Severity s) {
    switch (s) {
    case Severity::info: return "info";
    case Severity::warning: return "warning";
    case Severity::error: return "error";
    }
    return "warning";
}

// Fatal input problems. `code` mirrors the diagnostic vocabulary so CLI
// error reporting stays uniform.
class ExtractionError : public std::runtime_error {
public:
    ExtractionError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct NotAZipError : ExtractionError {
    explicit NotAZipError(const std::string& m) : ExtractionError("not_a_zip", m) {}
};
struct MissingContentTypesError : ExtractionError {
    explicit MissingContentTypesError(const std::string& m) : ExtractionError("missing_content_types", m) {}
};
struct IoError : ExtractionError {
    explicit IoError(const std::string& m) : ExtractionError("io_error", m) {}
};
struct MalformedXmlError : ExtractionError {
    explicit MalformedXmlError(const std::string& m) : ExtractionError("malformed_xml", m) {}
};
struct InvalidManifestError : ExtractionError {
    explicit InvalidManifestError(const std::string& m) : ExtractionError("invalid_manifest", m) {}
};

} // namespace xlsxdiag
