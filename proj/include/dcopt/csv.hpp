#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dcopt::csv {

/// Shortest decimal that is stable across runs: %.17g, with "nan"/"inf"/"-inf".
std::string format_real(double value);

/// Parses a full field as a double. Accepts the spellings format_real emits.
std::optional<double> parse_real(std::string_view field);

std::vector<std::string_view> split_fields(std::string_view line);

/// A header line plus data rows. Empty fields in numeric tables read as NaN.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
};

/// Reads a numeric table. Throws FormatError (with line number) on a missing
/// header, a ragged row, or an unparsable field.
Table read_numeric(std::istream& in);

}  // namespace dcopt::csv
