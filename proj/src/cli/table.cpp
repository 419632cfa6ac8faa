#include "table.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "wordwait/format.hpp"

namespace wordwait::cli {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("row width " + std::to_string(row.size()) +
                           " does not match " + std::to_string(columns.size()) +
                           " columns");
  }
  rows.push_back(std::move(row));
}

void Table::add_summary(std::string key, Cell value) {
  summary.emplace_back(std::move(key), std::move(value));
}

const Cell* Table::find_summary(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
  };
  return std::visit(Visitor{}, cell);
}

namespace {

nlohmann::ordered_json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return format_number(d);
      return d;
    }
    nlohmann::ordered_json operator()(std::int64_t i) const { return i; }
  };
  return std::visit(Visitor{}, cell);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  out << "# command=" << table.command << '\n';
  for (const auto& [key, value] : table.header) out << "# " << key << '=' << value << '\n';
  for (const auto& [key, value] : table.summary) {
    out << "# summary." << key << '=' << cell_text(value) << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_field(cell_text(row[i]));
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["command"] = table.command;
  auto& params = doc["params"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.header) params[key] = value;
  doc["columns"] = table.columns;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto& r = rows.emplace_back(nlohmann::ordered_json::array());
    for (const auto& cell : row) r.push_back(cell_json(cell));
  }
  auto& summary = doc["summary"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.summary) summary[key] = cell_json(value);
  out << doc.dump(2) << '\n';
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::kJson) {
    write_json(table, out);
  } else {
    write_csv(table, out);
  }
}

}  // namespace wordwait::cli
