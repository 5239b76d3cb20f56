#include "maccfd/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace maccfd {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out.push_back(',');
    for (char c : cells[i]) {
      if (c == ',' || c == '\n' || c == '\r') {
        throw std::invalid_argument("csv cell contains a delimiter: " + cells[i]);
      }
    }
    out += cells[i];
  }
  out.push_back('\n');
}

}  // namespace

std::size_t CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::invalid_argument("missing column: " + name);
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty numeric csv cell");
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric csv cell: " + s);
  }
  if (used != s.size()) throw std::invalid_argument("bad numeric csv cell: " + s);
  return value;
}

std::string serialize_csv(const CsvTable& table) {
  if (table.columns.empty()) throw std::invalid_argument("csv table needs a header");
  std::string out;
  append_line(out, table.columns);
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("csv row width does not match header");
    }
    append_line(out, row);
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.eof()) break;
    auto cells = split_line(line);
    if (first) {
      table.columns = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.columns.size()) {
        throw std::invalid_argument("csv row width does not match header: " + line);
      }
      table.rows.push_back(std::move(cells));
    }
  }
  if (first) throw std::invalid_argument("csv text is empty");
  return table;
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write csv file: " + path);
  out << serialize_csv(table);
  if (!out) throw std::runtime_error("failed writing csv file: " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_csv(buffer.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace maccfd
