#pragma once

#include "xlsxdiag/fixture_forge.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline void write_file(const fs::path& path, const std::vector<std::uint8_t>& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(content.data()),
              static_cast<std::streamsize>(content.size()));
}

// Scratch directory removed on scope exit.
class TempDir {
public:
    TempDir() {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = fs::temp_directory_path() /
                ("xlsxdiag_test_" + std::to_string(rng()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }
    fs::path file(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline fs::path data_dir() { return fs::path(TEST_DATA_DIR); }

inline std::string load_manifest_text(const std::string& name) {
    return read_file(data_dir() / "fixtures" / name);
}

inline xlsxdiag::forge::FixtureManifest load_manifest(const std::string& name) {
    return xlsxdiag::forge::FixtureManifest::parse(load_manifest_text(name));
}

// Forges a manifest into a temp .xlsx and returns the path.
inline fs::path forge_to(const TempDir& dir, const xlsxdiag::forge::FixtureManifest& manifest,
                         const std::string& filename) {
    auto bytes = xlsxdiag::forge::forge(manifest);
    fs::path path = dir.file(filename);
    write_file(path, bytes);
    return path;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the CLI binary with stdout/stderr captured through temp files.
inline CliResult run_cli(const std::string& args, const std::string& stdin_data = {}) {
    TempDir io;
    fs::path out_file = io.file("stdout");
    fs::path err_file = io.file("stderr");
    std::string command = std::string(CLI_BINARY_PATH) + " " + args;
    if (!stdin_data.empty()) {
        fs::path in_file = io.file("stdin");
        write_file(in_file, stdin_data);
        command += " < " + in_file.string();
    } else {
        command += " < /dev/null";
    }
    command += " > " + out_file.string() + " 2> " + err_file.string();
    int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_file);
    result.err = read_file(err_file);
    return result;
}

} // namespace testsupport
