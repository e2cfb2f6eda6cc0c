#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracperim/set_spec.hpp"

namespace fracperim {

// Header plus string cells; numbers are formatted with format_number.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    std::string to_csv() const;
};

// Shortest round-trip decimal form of v ("nan", "inf", "-inf" for non-finite values).
std::string format_number(double v);
std::string format_bool(bool v);

// Replaces the file; io_error on failure.
void write_text(const std::string& path, const std::string& content);
void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// Metadata that accompanies a CSV: library version, seed and the resolved configuration.
nlohmann::json sidecar(const std::string& command, const nlohmann::json& config, std::uint64_t seed);

// Binary greymap of a two-dimensional raster; occupied cells white, first row at the top (largest y).
// One-dimensional rasters are written as a single row.
void write_pgm(const std::string& path, const RasterGrid& grid);

}  // namespace fracperim
