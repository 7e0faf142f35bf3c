#ifndef QFORCE_CLI_CSV_HPP
#define QFORCE_CLI_CSV_HPP

#include <filesystem>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace qforce::cli {

/// Shortest round-trip decimal form ("nan", "inf" for non-finite values).
std::string format_number(double value);

/// Comma-separated table with '#'-prefixed metadata lines, then one header
/// row, '.' decimal separator. Built in memory; callers write str().
class CsvTable {
public:
    CsvTable(std::vector<std::string> metadata, std::vector<std::string> columns);

    void add_row(std::span<const double> values);
    void add_row(std::initializer_list<double> values) { add_row(std::span<const double>(values.begin(), values.size())); }

    std::string str() const { return body_.str(); }

private:
    std::size_t width_;
    std::ostringstream body_;
};

/// Two-column "quantity,value" table.
class SummaryTable {
public:
    explicit SummaryTable(std::vector<std::string> metadata);

    void add(const std::string& quantity, double value);
    std::string str() const { return body_.str(); }

private:
    std::ostringstream body_;
};

/// Parsed numeric CSV (metadata lines skipped).
struct CsvData {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::vector<double> column(const std::string& name) const;
};

CsvData read_csv(const std::filesystem::path& path);

/// Parsed "quantity,value" table.
std::map<std::string, double> read_summary(const std::filesystem::path& path);

}  // namespace qforce::cli

#endif  // QFORCE_CLI_CSV_HPP
