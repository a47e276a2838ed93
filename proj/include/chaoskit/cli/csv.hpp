#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "chaoskit/numerics.hpp"

namespace chaoskit::cli {

// Named table of preformatted cells; one CSV file per table.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Throws InvalidArgument when the row width differs from the header.
  void add_row(std::vector<std::string> cells);
  /// Index of a column by name. Throws InvalidArgument.
  std::size_t column(std::string_view col) const;
  bool empty() const noexcept { return rows.empty(); }
};

/// Shortest round-trip form ("%.17g"); "nan", "inf", "-inf" for non-finite.
std::string format_real(double v);
/// "re+imi" / "re-imi" with both parts in format_real.
std::string format_complex(Complex z);
std::string format_bool(bool b);

/// Reads a number written by format_real. Throws ParseError.
double parse_real(const std::string& cell);

/// RFC-4180: CRLF line ends, fields quoted when they hold , " CR or LF.
std::string to_csv(const Table& table);

/// Writes the whole string, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace chaoskit::cli
