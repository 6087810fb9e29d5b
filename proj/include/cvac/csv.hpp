#pragma once

#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace cvac::csv {

/// Numeric CSV table with a mandatory header row.
struct Table {
    std::string source;  // file name used in error messages
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based source line for each row
};

/// Same layout with cells kept as trimmed text.
struct TextTable {
    std::string source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

TextTable parse_text(std::istream& in, const std::string& source, std::initializer_list<const char*> expected);

/// Cell (row, col) as a finite number; errors name file, line and column.
double number(const TextTable& t, std::size_t row, std::size_t col);

/// Parses a comma-separated numeric table. The header must match `expected`
/// exactly (after trimming). Errors throw InputError naming file, line and
/// column.
Table parse(std::istream& in, const std::string& source, std::initializer_list<const char*> expected);

Table read(const std::filesystem::path& path, std::initializer_list<const char*> expected);

/// Formats a double for CSV/JSON output with a fixed, locale-free format.
std::string format(double x);

} // namespace cvac::csv
