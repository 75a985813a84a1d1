#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "semcom/errors.hpp"
#include "semcom/version.hpp"

namespace semcom::harness {

/// Numeric result table with a commented, self-describing header block.
/// Formatting is pinned (%.12g) so identical inputs produce byte-identical
/// files.
struct Table {
    std::string name;
    std::vector<std::string> comments;  // emitted as "# key: value" lines
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::initializer_list<double> vals) {
        rows.emplace_back(vals);
    }
};

inline std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::filesystem::path write_csv(const Table& t,
                                       const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto path = out_dir / (t.name + ".csv");
    std::ofstream out(path);
    if (!out) throw parse_error(path.string(), -1, "", "cannot open for writing");
    out << "# table: " << t.name << "\n";
    out << "# tool_version: " << kVersion << "\n";
    for (const auto& c : t.comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << t.columns[i] << (i + 1 == t.columns.size() ? "" : ",");
    out << "\n";
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw shape_error("write_csv: row width != column count in " + t.name);
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_cell(row[i]) << (i + 1 == row.size() ? "" : ",");
        out << "\n";
    }
    return path;
}

}  // namespace semcom::harness
