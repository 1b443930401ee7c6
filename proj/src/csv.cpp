// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "secbeam/errors.hpp"

namespace secbeam {

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

bool needs_quoting(const std::string& f) {
    return f.find_first_of(",\"\n\r") != std::string::npos;
}

void write_field(std::ostream& os, const std::string& f) {
    if (!needs_quoting(f)) {
        os << f;
        return;
    }
    os << '"';
    for (char c : f) {
        if (c == '"') os << '"';
        os << c;
    }
    os << '"';
}

void write_row(std::ostream& os, const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        write_field(os, row[i]);
    }
    os << '\n';
}

}  // namespace

void write_csv(std::ostream& os, const CsvTable& table) {
    write_row(os, table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw BadConfig("csv row width does not match the header");
        write_row(os, row);
    }
}

void write_csv_file(const std::string& path, const CsvTable& table) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open for writing: " + path);
    write_csv(os, table);
    if (!os) throw Error("write failed: " + path);
}

CsvTable parse_csv(std::istream& is) {
    CsvTable table;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;

    auto push_field = [&] {
        row.push_back(field);
        field.clear();
    };
    auto push_row = [&] {
        push_field();
        if (table.header.empty() && !any)
            table.header = row;
        else
            table.rows.push_back(row);
        any = true;
        row.clear();
    };

    char c;
    bool row_open = false;
    while (is.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (is.peek() == '"') {
                    is.get();
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"': quoted = true; row_open = true; break;
            case ',': push_field(); row_open = true; break;
            case '\r': break;
            case '\n':
                if (row_open || !field.empty() || !row.empty()) push_row();
                row_open = false;
                break;
            default: field += c; row_open = true;
        }
    }
    if (quoted) throw BadConfig("unterminated quoted csv field");
    if (row_open || !field.empty() || !row.empty()) push_row();
    return table;
}

}  // namespace secbeam
