#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wordwait::cli {

/// Empty, text, real or integer.
using Cell = std::variant<std::monostate, std::string, double, std::int64_t>;

/// One emitted dataset: header comments, a rectangular table and a list of
/// named summary values.
struct Table {
  std::string command;
  std::vector<std::pair<std::string, std::string>> header;  // params, seed
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  void add_row(std::vector<Cell> row);
  void add_summary(std::string key, Cell value);
  const Cell* find_summary(const std::string& key) const;
};

enum class Format { kCsv, kJson };

/// CSV: `# key=value` header lines, then `# summary.key=value` lines, then
/// the column row and data rows. Reals use the shortest round-trip form.
void write_csv(const Table& table, std::ostream& out);

/// One JSON object with command, params, columns, rows and summary.
void write_json(const Table& table, std::ostream& out);

void write_table(const Table& table, Format format, std::ostream& out);

std::string cell_text(const Cell& cell);

}  // namespace wordwait::cli
