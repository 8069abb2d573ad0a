#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace policystory::csv {

using Row = std::vector<std::string>;

// RFC 4180: fields with comma, quote, CR or LF are quoted; quotes doubled.
std::string format_row(const Row& row);
std::string format(const std::vector<Row>& rows);

// Parses RFC 4180 text (quoted fields may span lines). Throws ParseError on an
// unterminated quote.
std::vector<Row> parse(std::string_view text);

}  // namespace policystory::csv
