#include "fracperim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracperim/error.hpp"

namespace fracperim {

void Table::add_row(std::vector<std::string> cells) {
    require(cells.size() == columns.size(), ErrorCode::invalid_argument, "row width differs from the header");
    rows.push_back(std::move(cells));
}

std::string Table::to_csv() const {
    auto quote = [](const std::string& c) {
        if (c.find_first_of(",\"\n") == std::string::npos) return c;
        std::string q = "\"";
        for (char ch : c) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    };
    std::ostringstream out;
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << quote(columns[k]);
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << quote(r[k]);
        out << '\n';
    }
    return out.str();
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_bool(bool v) { return v ? "true" : "false"; }

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(f), ErrorCode::io_error, "cannot open '" + path + "' for writing");
    f << content;
    f.close();
    require(static_cast<bool>(f), ErrorCode::io_error, "failed writing '" + path + "'");
}

void write_json(const std::string& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const std::string& path) {
    std::ifstream f(path);
    require(static_cast<bool>(f), ErrorCode::io_error, "cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::invalid_argument, "malformed JSON in '" + path + "': " + e.what());
    }
}

nlohmann::json sidecar(const std::string& command, const nlohmann::json& config, std::uint64_t seed) {
    return {{"command", command}, {"library", "fracperim"}, {"version", FRACPERIM_VERSION}, {"seed", seed},
            {"config", config}};
}

void write_pgm(const std::string& path, const RasterGrid& grid) {
    require(grid.dim() == 1 || grid.dim() == 2, ErrorCode::dimension_mismatch, "PGM output supports n = 1, 2");
    const int w = grid.dims[0];
    const int h = grid.dim() == 2 ? grid.dims[1] : 1;
    std::string data = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    for (int row = h - 1; row >= 0; --row)
        for (int col = 0; col < w; ++col) {
            const std::size_t idx = grid.dim() == 2 ? static_cast<std::size_t>(col) * h + row : col;
            data.push_back(grid.occupied[idx] ? static_cast<char>(255) : static_cast<char>(0));
        }
    write_text(path, data);
}

}  // namespace fracperim
