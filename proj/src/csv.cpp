#include "cvac/csv.hpp"

#include "cvac/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cvac::csv {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(trim(std::string_view(line).substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string where(const std::string& source, std::size_t line, std::size_t column) {
    return source + ":" + std::to_string(line) + ":" + std::to_string(column);
}

} // namespace

TextTable parse_text(std::istream& in, const std::string& source, std::initializer_list<const char*> expected) {
    TextTable t;
    t.source = source;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        if (trim(line).empty()) continue;

        auto fields = split(line);
        if (t.header.empty()) {
            t.header = fields;
            if (fields.size() != expected.size()) {
                throw InputError(where(source, line_no, 1) + ": expected header '" + [&] {
                    std::string h;
                    for (const char* c : expected) h += (h.empty() ? "" : ",") + std::string(c);
                    return h;
                }() + "'");
            }
            std::size_t col = 0;
            for (const char* name : expected) {
                if (fields[col] != name) {
                    throw InputError(where(source, line_no, col + 1) + ": expected column '" + name + "', found '" +
                                     fields[col] + "'");
                }
                ++col;
            }
            continue;
        }

        if (fields.size() != t.header.size()) {
            throw InputError(where(source, line_no, std::min(fields.size(), t.header.size()) + 1) + ": expected " +
                             std::to_string(t.header.size()) + " fields, found " + std::to_string(fields.size()));
        }
        t.rows.push_back(std::move(fields));
        t.line_numbers.push_back(line_no);
    }
    if (t.header.empty()) {
        throw InputError(source + ": missing header row");
    }
    return t;
}

double number(const TextTable& t, std::size_t row, std::size_t col) {
    const auto& f = t.rows[row][col];
    double v = 0.0;
    const auto* first = f.data();
    const auto* last = f.data() + f.size();
    if (!f.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (f.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw InputError(where(t.source, t.line_numbers[row], col + 1) + ": column '" + t.header[col] +
                         "' is not a finite number: '" + f + "'");
    }
    return v;
}

Table parse(std::istream& in, const std::string& source, std::initializer_list<const char*> expected) {
    const auto text = parse_text(in, source, expected);
    Table t;
    t.source = text.source;
    t.header = text.header;
    t.line_numbers = text.line_numbers;
    for (std::size_t r = 0; r < text.rows.size(); ++r) {
        std::vector<double> row;
        row.reserve(text.header.size());
        for (std::size_t c = 0; c < text.header.size(); ++c) row.push_back(number(text, r, c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table read(const std::filesystem::path& path, std::initializer_list<const char*> expected) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.filename().string() + " (" + path.string() + ")");
    }
    return parse(in, path.filename().string(), expected);
}

std::string format(double x) {
    if (x == 0.0) return "0";  // avoids "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace cvac::csv
