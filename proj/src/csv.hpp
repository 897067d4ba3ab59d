#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "expansion.hpp"

namespace belief {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> columns;  // aligned with header

    std::int64_t rows() const { return columns.empty() ? 0 : static_cast<std::int64_t>(columns[0].size()); }
    const std::vector<std::string>& column(const std::string& name) const;
    RawColumn raw_column(const std::string& name) const;
};

// Comma-separated, header row required, UTF-8 passed through verbatim.
// Double quotes delimit fields containing commas; "" escapes a quote.
CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::string& path);

}  // namespace belief
