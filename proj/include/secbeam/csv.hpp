// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secbeam {

/// Number formatted with 12 significant digits, '.' decimal separator,
/// locale-independent. The same bits always produce the same string.
std::string csv_number(double v);

/// RFC-4180-style table: header row then data rows, LF line endings, fields
/// quoted only when they contain a comma, quote or newline.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // each row matches header size
};

void write_csv(std::ostream& os, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);

/// Parser for the subset produced above (used by round-trip tests).
CsvTable parse_csv(std::istream& is);

}  // namespace secbeam
