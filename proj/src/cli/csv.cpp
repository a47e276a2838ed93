#include "chaoskit/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "chaoskit/error.hpp"

namespace chaoskit::cli {

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size())
    throw Error(ErrorCode::InvalidArgument, "table '" + name + "': row has " +
                                                std::to_string(cells.size()) + " cells, header has " +
                                                std::to_string(columns.size()));
  rows.push_back(std::move(cells));
}

std::size_t Table::column(std::string_view col) const {
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == col) return k;
  throw Error(ErrorCode::InvalidArgument, "table '" + name + "' has no column '" + std::string(col) + "'");
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex z) {
  const std::string im = format_real(z.imag());
  return format_real(z.real()) + (im.front() == '-' ? "" : "+") + im + "i";
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

double parse_real(const std::string& cell) {
  if (cell == "nan") return std::nan("");
  if (cell == "inf") return HUGE_VAL;
  if (cell == "-inf") return -HUGE_VAL;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size())
    throw Error(ErrorCode::ParseError, "not a number: '" + cell + "'");
  return v;
}

namespace {

void append_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_record(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out += ',';
    append_field(out, fields[k]);
  }
  out += "\r\n";
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  append_record(out, table.columns);
  for (const auto& row : table.rows) append_record(out, row);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace chaoskit::cli
