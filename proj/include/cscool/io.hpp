#pragma once
//
// Deterministic table output: CSV with `#` unit-comment headers, fixed column
// order, 12-significant-digit formatting, atomic writes (temp file + rename).
// All frequency-like columns are in Hz at this boundary, never rad/s.

#include <string>
#include <vector>

namespace cscool {

// 12 significant digits, shortest-faithful within that precision.
std::string format_sig(double v);

struct CsvTable {
    std::vector<std::string> comments; // emitted as "# ..." lines, units etc.
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows; // pre-formatted cells

    void add_row_values(const std::vector<double>& vals); // format_sig each
};

std::string csv_to_string(const CsvTable& t);

// Write via <path>.tmp + rename so readers never observe partial files.
void write_text_atomic(const std::string& path, const std::string& content);
void write_csv_atomic(const std::string& path, const CsvTable& t);

} // namespace cscool
