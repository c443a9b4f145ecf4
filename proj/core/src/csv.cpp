#include "ccasc/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace ccasc {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("parse_double: bad number '" + s + "'");
    }
    return v;
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out_ += ',';
        out_ += names[i];
    }
    out_ += '\n';
}

CsvWriter& CsvWriter::field(const std::string& v) {
    if (row_open_) out_ += ',';
    out_ += v;
    row_open_ = true;
    return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }
CsvWriter& CsvWriter::field(int v) { return field(std::to_string(v)); }
CsvWriter& CsvWriter::field(std::uint64_t v) { return field(std::to_string(v)); }
CsvWriter& CsvWriter::field(bool v) { return field(std::string(v ? "1" : "0")); }

CsvWriter& CsvWriter::field(const std::optional<double>& v) {
    return v ? field(*v) : field(std::string());
}

void CsvWriter::end_row() {
    out_ += '\n';
    row_open_ = false;
}

int CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

CsvTable read_csv(const std::string& text) {
    CsvTable table;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        const std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) continue;
        if (first) {
            table.columns = split_line(line);
            first = false;
        } else {
            table.rows.push_back(split_line(line));
        }
    }
    return table;
}

}  // namespace ccasc
