#pragma once

#include "flexarm/errors.hpp"
#include "flexarm/sim.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace flexarm {

inline constexpr const char* kCsvSchemaLine = "# flexarm-csv v1";

inline void write_csv(std::ostream& os, const TimeSeries& ts) {
    os << kCsvSchemaLine << '\n';
    const auto& names = TimeSeries::column_names();
    for (int i = 0; i < TimeSeries::kColumns; ++i)
        os << (i ? "," : "") << names[i];
    os << '\n';
    os << std::setprecision(15);
    for (const auto& row : ts.rows) {
        for (int i = 0; i < TimeSeries::kColumns; ++i)
            os << (i ? "," : "") << row[i];
        os << '\n';
    }
}

inline void write_csv(const std::string& path, const TimeSeries& ts) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_csv(os, ts);
    if (!os.good()) throw IoError("write failed: " + path);
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        throw ValidationError("csv: no column named '" + name + "'");
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    // RFC-4180 style: commas split fields, double quotes protect commas
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { field += '"'; ++i; }
                else quoted = false;
            } else field += ch;
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    out.push_back(field);
    return out;
}

inline CsvTable read_csv(std::istream& is, const std::string& origin = "<stream>") {
    CsvTable t;
    std::string line;
    if (!std::getline(is, line) || line.rfind(kCsvSchemaLine, 0) != 0)
        throw IoError(origin + ": missing schema line '" + kCsvSchemaLine + "'");
    if (!std::getline(is, line)) throw IoError(origin + ": missing header row");
    t.columns = split_csv_line(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != t.columns.size())
            throw IoError(origin + ": row width does not match the header");
        std::vector<double> row(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            try {
                row[i] = std::stod(fields[i]);
            } catch (const std::exception&) {
                throw IoError(origin + ": non-numeric cell '" + fields[i] + "'");
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline CsvTable read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    return read_csv(is, path);
}

} // namespace flexarm
