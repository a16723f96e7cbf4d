#pragma once

#include <string>
#include <vector>

namespace ladderlab::report {

// Lossless float formatting: 17 significant digits.
std::string g17(double v);

// RFC-4180 field escaping (quote when the field contains comma, quote,
// CR, or LF; embedded quotes doubled).
std::string csv_field(const std::string& field);

// Header + rows, CRLF-free ("\n" line endings), trailing newline.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// Writes via a temp file in the same directory followed by rename, so
// readers never observe a partial report. An empty path writes to stdout.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace ladderlab::report
