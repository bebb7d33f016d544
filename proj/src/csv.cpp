#include "preyspread/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "preyspread/error.hpp"

namespace preyspread {

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::Io, "CSV has no column '" + name + "'");
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  write_csv_row(out, table.header);
  for (const auto& row : table.rows) write_csv_row(out, row);
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, "empty CSV '" + path.string() + "'");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    table.rows.push_back(split(line));
    if (table.rows.back().size() != table.header.size()) {
      throw Error(ErrorCode::Io, "ragged row in '" + path.string() + "'");
    }
  }
  return table;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double x = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
    throw Error(ErrorCode::Io, "not a number: '" + cell + "'");
  }
  return x;
}

}  // namespace preyspread
