#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace maccfd {

/// Minimal long-format table: a header row plus string cells. Numeric cells
/// are serialized with 17 significant digits so a parse round-trip recovers
/// the exact double.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws std::invalid_argument
  /// ("missing column: <name>") when absent.
  std::size_t column_index(const std::string& name) const;
};

std::string format_double(double value);   // shortest %.17g form
double parse_double(const std::string& s); // strict: whole cell must parse

std::string serialize_csv(const CsvTable& table);  // LF line endings, UTF-8
CsvTable parse_csv(const std::string& text);

void write_csv(const CsvTable& table, const std::string& path);
CsvTable read_csv(const std::string& path);

}  // namespace maccfd
