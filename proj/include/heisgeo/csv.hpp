#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heisgeo {

using CsvRow = std::vector<std::string>;

/// Decimal form with 17 significant digits, which round-trips binary64.
std::string format_double(double v);

/// RFC-4180 writer: fields containing a comma, quote, CR or LF are quoted and
/// quotes are doubled. Rows end with CRLF.
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);

/// Parses RFC-4180 text (CRLF or LF line ends). Throws std::runtime_error on
/// an unterminated quoted field.
std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace heisgeo
