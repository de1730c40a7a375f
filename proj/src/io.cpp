#include "tempus/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "tempus/errors.hpp"

namespace tempus {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string Csv::render() const {
    std::string out;
    auto emit_cell = [&out](const std::string& cell) {
        if (cell.find_first_of(",\"\n\r") == std::string::npos) {
            out += cell;
            return;
        }
        out.push_back('"');
        for (char c : cell) {
            if (c == '"') out.push_back('"');
            out.push_back(c);
        }
        out.push_back('"');
    };
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out.push_back(',');
            emit_cell(cells[i]);
        }
        out.push_back('\n');
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidParam("write_text: cannot open " + path.string());
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw InvalidParam("write_text: short write to " + path.string());
}

void write_manifest(const std::filesystem::path& out_dir,
                    const nlohmann::ordered_json& manifest) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw InvalidParam("write_manifest: cannot create " + out_dir.string());
    write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

} // namespace tempus
