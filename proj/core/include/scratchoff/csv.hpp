#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace scratchoff {

/// Shortest round-trip decimal rendering; identical bytes for identical
/// doubles within one build, which is what the replay contract needs.
std::string csv_double(double v);

/// Line writer that pins the column count to the header.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& header);

    void row(const std::vector<std::string>& fields);
    void raw_row(const std::string& line); // preformatted, still column-checked
    void close();

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    size_t columns_;
};

} // namespace scratchoff
