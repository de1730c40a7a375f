#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace tempus {

inline constexpr const char* kVersion = "0.1.0";

// shortest round-trip decimal form, locale-independent
std::string format_double(double v);

// rows of already-formatted cells; emits LF line endings only
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::vector<std::string>& row() { return rows.emplace_back(); }
    std::string render() const;
};

void write_text(const std::filesystem::path& path, const std::string& text);

// run manifests are written before any heavy computation so a crashed run
// still records what it was asked to do; no timestamps, fully deterministic
void write_manifest(const std::filesystem::path& out_dir,
                    const nlohmann::ordered_json& manifest);

} // namespace tempus
