#include "qforce/cli/csv.hpp"

#include "qforce/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qforce::cli {
namespace {

void write_metadata(std::ostringstream& body, const std::vector<std::string>& metadata) {
    for (const auto& line : metadata) {
        body << "# " << line << '\n';
    }
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        out.push_back(field);
    }
    return out;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

CsvTable::CsvTable(std::vector<std::string> metadata, std::vector<std::string> columns) : width_(columns.size()) {
    write_metadata(body_, metadata);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        body_ << (i ? "," : "") << columns[i];
    }
    body_ << '\n';
}

void CsvTable::add_row(std::span<const double> values) {
    if (values.size() != width_) {
        throw LengthMismatchError("CsvTable: row has " + std::to_string(values.size()) + " fields, expected " +
                                  std::to_string(width_));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        body_ << (i ? "," : "") << format_number(values[i]);
    }
    body_ << '\n';
}

SummaryTable::SummaryTable(std::vector<std::string> metadata) {
    write_metadata(body_, metadata);
    body_ << "quantity,value\n";
}

void SummaryTable::add(const std::string& quantity, double value) {
    body_ << quantity << ',' << format_number(value) << '\n';
}

std::vector<double> CsvData::column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == name) {
            std::vector<double> out;
            out.reserve(rows.size());
            for (const auto& row : rows) {
                out.push_back(row[c]);
            }
            return out;
        }
    }
    throw Error("csv: no column named " + name);
}

CsvData read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    CsvData data;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto fields = split(line);
        if (data.columns.empty()) {
            data.columns = std::move(fields);
            continue;
        }
        if (fields.size() != data.columns.size()) {
            throw Error(path.string() + ":" + std::to_string(line_number) + ": wrong number of fields");
        }
        std::vector<double> row(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto& f = fields[i];
            const auto result = std::from_chars(f.data(), f.data() + f.size(), row[i]);
            if (result.ec != std::errc() || result.ptr != f.data() + f.size()) {
                throw Error(path.string() + ":" + std::to_string(line_number) + ": not a number: " + f);
            }
        }
        data.rows.push_back(std::move(row));
    }
    return data;
}

std::map<std::string, double> read_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::map<std::string, double> values;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(path.string() + ": expected quantity,value in: " + line);
        }
        double v = 0.0;
        const char* begin = line.data() + comma + 1;
        const char* end = line.data() + line.size();
        const auto result = std::from_chars(begin, end, v);
        if (result.ec != std::errc() || result.ptr != end) {
            throw Error(path.string() + ": not a number: " + line);
        }
        values[line.substr(0, comma)] = v;
    }
    return values;
}

}  // namespace qforce::cli
