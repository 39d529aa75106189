// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ecobench {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Splits one CSV line; supports RFC-style double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

// Quotes a cell only when it contains a comma, quote or newline.
std::string csv_escape(const std::string& cell);

// Reads a whole file; throws DataError when the file is missing or has no
// header row. Tolerates trailing CR from CRLF files.
CsvTable read_csv_file(const std::filesystem::path& path);

// Writes header + rows; throws Error on I/O failure.
void write_csv_file(const std::filesystem::path& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

} // namespace ecobench
