#pragma once

#include <string>
#include <vector>

namespace cryomux {

/// Minimal RFC 4180 CSV reader/writer. Values are kept as strings; numeric
/// conversion is left to the caller.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

std::string to_csv(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);

std::string format_double(double v);

}  // namespace cryomux
