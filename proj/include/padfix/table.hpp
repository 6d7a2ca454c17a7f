#pragma once

// Column-typed result tables and their CSV / JSON renderings.

#include <charconv>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "padfix/arith.hpp"

namespace padfix {

using Cell = std::variant<i64, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, i64>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else return v;
      },
      cell);
}

/// Comma-separated, LF line endings, header first. Fields holding a comma
/// (the point lists) are wrapped in double quotes.
inline void write_csv(std::ostream& os, const Table& t) {
  auto field = [&](const std::string& s) {
    if (s.find(',') != std::string::npos) os << '"' << s << '"';
    else os << s;
  };
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    field(t.columns[i]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      field(cell_text(row[i]));
    }
    os << '\n';
  }
}

inline nlohmann::ordered_json to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit([&](const auto& v) { r[t.columns[i]] = v; }, row[i]);
    j["rows"].push_back(std::move(r));
  }
  return j;
}

inline Table table_from_json(const nlohmann::ordered_json& j) {
  Table t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    std::vector<Cell> row;
    for (const auto& col : t.columns) {
      const auto& v = r.at(col);
      if (v.is_number_integer()) row.emplace_back(v.get<i64>());
      else if (v.is_number_float()) row.emplace_back(v.get<double>());
      else row.emplace_back(v.get<std::string>());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(2) << '\n'; }

}  // namespace padfix
