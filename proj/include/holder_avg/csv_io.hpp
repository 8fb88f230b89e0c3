#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "holder_avg/metric_space.hpp"

namespace holder_avg {

// Numeric CSV with an optional header row: the first line is treated as a
// header exactly when at least one of its cells does not parse as a number.
struct CsvTable {
    std::vector<std::string> header;  // empty for headerless files
    std::vector<std::vector<double>> rows;

    bool has_header() const { return !header.empty(); }
    std::size_t columns() const { return header.empty() ? (rows.empty() ? 0 : rows[0].size())
                                                        : header.size(); }
};

// Parses the file; every row must have the same cell count and every data
// cell must be numeric (errors carry the file, line and cell position).
CsvTable read_csv(const std::string& path);

// Position of a named header column; throws when the file has no header or
// the name is missing.
std::size_t column_index(const CsvTable& table, const std::string& name);

std::vector<double> column_values(const CsvTable& table, const std::string& name);

// Number of leading coordinate columns x0, x1, ..., x{d-1}; throws unless
// they form a nonempty contiguous prefix of the header.
std::size_t coordinate_dim(const CsvTable& table);

// Row-major coordinates from the x0..x{d-1} prefix.
std::vector<double> coordinate_rows(const CsvTable& table);

// Builds the space from a dataset file: mode "euclidean" expects coordinate
// columns, mode "matrix" a headerless square distance matrix.
MetricAccessor load_space(const std::string& path, const std::string& mode);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

// Full-precision number formatting shared by all CSV output ("%.17g").
std::string format_number(double v);

}  // namespace holder_avg
