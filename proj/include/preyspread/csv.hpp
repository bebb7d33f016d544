#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace preyspread {

/// Shortest decimal that round-trips to the same double.
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws Io if absent.
  std::size_t column(const std::string& name) const;
};

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

/// Throws Io on failure.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

/// Parses a cell written by format_number; empty cells are absent.
std::optional<double> parse_number(const std::string& cell);

}  // namespace preyspread
