// Minimal RFC-4180-style CSV helpers: header row, comma separated, no quoting
// needed for the numeric tables this project writes.
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eqnn::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws std::runtime_error if absent.
  std::size_t column(std::string_view name) const;
};

std::vector<std::string> split_line(std::string_view line);

/// Reads a header plus rows; every row must have as many fields as the
/// header. Blank lines are skipped. Throws std::runtime_error otherwise.
Table read(std::istream& in);

/// Exact parse of a full field; throws std::runtime_error on junk.
double parse_double(std::string_view field);
long long parse_int(std::string_view field);

/// Shortest-safe decimal form with 17 significant digits.
std::string format_double(double value);

}  // namespace eqnn::csv
