#pragma once
// Locale-independent CSV emission and parsing.  Doubles are serialized with
// 17 significant digits via std::to_chars, so values round-trip exactly.

#include <optional>
#include <string>
#include <vector>

namespace ccasc {

// 17-significant-digit, locale-independent rendering (handles +-inf).
std::string format_double(double v);

double parse_double(const std::string& s);  // throws std::invalid_argument

class CsvWriter {
  public:
    void header(const std::vector<std::string>& names);
    CsvWriter& field(const std::string& v);
    CsvWriter& field(double v);
    CsvWriter& field(int v);
    CsvWriter& field(std::uint64_t v);
    CsvWriter& field(bool v);  // 0/1
    CsvWriter& field(const std::optional<double>& v);  // empty cell when absent
    void end_row();
    const std::string& str() const { return out_; }

  private:
    std::string out_;
    bool row_open_ = false;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const;  // -1 when missing
};

CsvTable read_csv(const std::string& text);

}  // namespace ccasc
