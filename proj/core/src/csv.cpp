#include "scratchoff/csv.hpp"

#include <algorithm>
#include <charconv>

#include "scratchoff/errors.hpp"

namespace scratchoff {

std::string csv_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::string& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc),
      columns_(size_t(std::count(header.begin(), header.end(), ',')) + 1) {
    if (!out_) throw Error("cannot open CSV output: " + path);
    out_ << header << "\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_)
        throw Error("CSV row has " + std::to_string(fields.size()) +
                    " fields, header has " + std::to_string(columns_));
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out_ << ",";
        out_ << fields[i];
    }
    out_ << "\n";
}

void CsvWriter::raw_row(const std::string& line) {
    if (size_t(std::count(line.begin(), line.end(), ',')) + 1 != columns_)
        throw Error("CSV row column count mismatch");
    out_ << line << "\n";
}

void CsvWriter::close() {
    if (out_.is_open()) out_.close();
}

} // namespace scratchoff
