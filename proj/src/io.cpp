#include "cscool/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cscool {

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void CsvTable::add_row_values(const std::vector<double>& vals) {
    std::vector<std::string> r;
    r.reserve(vals.size());
    for (double v : vals) r.push_back(format_sig(v));
    rows.push_back(std::move(r));
}

std::string csv_to_string(const CsvTable& t) {
    std::ostringstream os;
    for (const auto& c : t.comments) os << "# " << c << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
        f << content;
        if (!f.flush()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

void write_csv_atomic(const std::string& path, const CsvTable& t) {
    write_text_atomic(path, csv_to_string(t));
}

} // namespace cscool
