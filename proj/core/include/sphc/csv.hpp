#pragma once

#include <string>
#include <vector>

namespace sphc {

/// Numeric table with a header row. Serialized as RFC-4180-style CSV with
/// '\n' line endings and every value in scientific notation with 9
/// significant digits.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// One value in the fixed serialization format ("2.92000000e-17" style).
[[nodiscard]] std::string format_csv_value(double value);

[[nodiscard]] std::string format_csv(const CsvTable& table);

/// Writes the table to `path`; I/O failures throw with the path in the message.
void write_csv(const CsvTable& table, const std::string& path);

/// Parses text produced by format_csv (used for round-trip checks).
[[nodiscard]] CsvTable parse_csv(const std::string& text);

}  // namespace sphc
