#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bpv::cli {

/// Shortest round-trip-safe text for a double: 17 significant digits,
/// '.' decimal point regardless of locale.
[[nodiscard]] std::string format_number(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Header row, ',' separators, LF line endings. Cells holding a separator,
/// quote or line break are quoted with embedded quotes doubled.
void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace bpv::cli
