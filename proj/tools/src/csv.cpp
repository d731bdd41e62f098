#include "bpv/cli/csv.hpp"

#include <cstdio>
#include <ostream>

namespace bpv::cli {

std::string format_number(double value) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
    std::string out(buf, static_cast<std::size_t>(n));
    // snprintf honours LC_NUMERIC; the CSV contract does not.
    for (char& c : out) {
        if (c == ',') c = '.';
    }
    return out;
}

namespace {

void write_cell(std::ostream& out, const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) {
        out << cell;
        return;
    }
    out << '"';
    for (char c : cell) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != 0) out << ',';
        write_cell(out, cells[i]);
    }
    out << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const CsvTable& table) {
    write_row(out, table.header);
    for (const auto& row : table.rows) {
        write_row(out, row);
    }
}

}  // namespace bpv::cli
