#include "holder_avg/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace holder_avg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_number(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size();
}

}  // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_cells(line);
        if (first) {
            first = false;
            width = cells.size();
            bool numeric = true;
            std::vector<double> parsed(cells.size());
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (!parse_number(cells[i], parsed[i])) numeric = false;
            if (numeric) {
                table.rows.push_back(std::move(parsed));
            } else {
                table.header = cells;
            }
            continue;
        }
        if (cells.size() != width)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(width) + " cells, got " +
                                     std::to_string(cells.size()));
        std::vector<double> parsed(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (!parse_number(cells[i], parsed[i]))
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": cell " +
                                         std::to_string(i + 1) + " ('" + cells[i] +
                                         "') is not a number");
        }
        table.rows.push_back(std::move(parsed));
    }
    if (first) throw std::runtime_error(path + ": empty file");
    return table;
}

std::size_t column_index(const CsvTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == name) return i;
    throw std::runtime_error("missing column '" + name + "'");
}

std::vector<double> column_values(const CsvTable& table, const std::string& name) {
    const std::size_t idx = column_index(table, name);
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (const auto& row : table.rows) values.push_back(row[idx]);
    return values;
}

std::size_t coordinate_dim(const CsvTable& table) {
    std::size_t d = 0;
    while (d < table.header.size() && table.header[d] == "x" + std::to_string(d)) ++d;
    if (d == 0)
        throw std::runtime_error("expected coordinate columns x0,...,x{d-1} at the start "
                                 "of the header");
    return d;
}

std::vector<double> coordinate_rows(const CsvTable& table) {
    const std::size_t d = coordinate_dim(table);
    std::vector<double> coords;
    coords.reserve(table.rows.size() * d);
    for (const auto& row : table.rows)
        for (std::size_t i = 0; i < d; ++i) coords.push_back(row[i]);
    return coords;
}

MetricAccessor load_space(const std::string& path, const std::string& mode) {
    const CsvTable table = read_csv(path);
    if (mode == "euclidean") {
        const std::size_t d = coordinate_dim(table);
        if (table.columns() != d)
            throw std::runtime_error(path + ": dataset must contain only coordinate columns");
        return MetricAccessor::from_coordinates(table.rows.size(), d, coordinate_rows(table));
    }
    if (mode == "matrix") {
        if (table.has_header())
            throw std::runtime_error(path + ": distance matrix files are headerless");
        const std::size_t n = table.rows.size();
        if (table.columns() != n)
            throw std::runtime_error(path + ": distance matrix must be square, got " +
                                     std::to_string(n) + " rows x " +
                                     std::to_string(table.columns()) + " columns");
        std::vector<double> matrix;
        matrix.reserve(n * n);
        for (const auto& row : table.rows) matrix.insert(matrix.end(), row.begin(), row.end());
        return MetricAccessor::from_distance_matrix(n, std::move(matrix));
    }
    throw std::runtime_error("unknown metric mode '" + mode + "' (euclidean or matrix)");
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    if (!header.empty()) out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_number(row[i]);
        out << "\n";
    }
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_csv(out, header, rows);
}

}  // namespace holder_avg
