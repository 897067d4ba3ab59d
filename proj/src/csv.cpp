#include "csv.hpp"

#include <fstream>
#include <istream>

#include "errors.hpp"

namespace belief {

const std::vector<std::string>& CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return columns[i];
    }
    throw DataError("unknown column '" + name + "'");
}

RawColumn CsvTable::raw_column(const std::string& name) const {
    return {name, column(name)};
}

namespace {

std::vector<std::string> split_line(const std::string& line, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) throw DataError("csv line " + std::to_string(lineno) + ": unterminated quote");
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

CsvTable parse_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 && !line.empty() && line.size() >= 3 &&
            static_cast<unsigned char>(line[0]) == 0xEF) {
            line.erase(0, 3);  // UTF-8 BOM
        }
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        auto fields = split_line(line, lineno);
        if (lineno == 1) {
            table.header = std::move(fields);
            table.columns.resize(table.header.size());
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw DataError("csv line " + std::to_string(lineno) + ": expected " +
                            std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            table.columns[i].push_back(std::move(fields[i]));
        }
    }
    if (table.header.empty()) throw DataError("csv: missing header row");
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    return parse_csv(in);
}

}  // namespace belief
