#pragma once
//! \file emit.hpp
//! \brief Deterministic CSV and JSON table serialization.
//!
//! Output determinism is a hard requirement of the batch front end: the same
//! config bytes must produce byte-identical files. Floats are therefore
//! printed with a fixed "%.17g" (17 significant digits round-trips any
//! binary64 value), CSV uses comma separators with LF endings and "."
//! decimals regardless of locale, and JSON key order follows column order.

#include <cmath>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

namespace tubedyn::emit {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;  // each row has columns.size() cells
};

//! Fixed 17-significant-digit formatting; the one float-to-text path.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline bool needs_csv_quotes(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

inline std::string csv_escape(const std::string& s) {
  if (!needs_csv_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

inline std::string csv_cell(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
  return csv_escape(std::get<std::string>(cell));
}

//! JSON has no NaN/inf literals; non-finite numbers become null.
inline std::string json_cell(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) {
    const double v = std::get<double>(cell);
    if (!std::isfinite(v)) return "null";
    return format_double(v);
  }
  return json_escape(std::get<std::string>(cell));
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += detail::csv_escape(t.columns[c]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += detail::csv_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_json(const Table& t) {
  std::string out = "{\n  \"columns\": [";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ", ";
    out += detail::json_escape(t.columns[c]);
  }
  out += "],\n  \"rows\": [\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += "    {";
    const auto& row = t.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ", ";
      out += detail::json_escape(t.columns[c]);
      out += ": ";
      out += detail::json_cell(row[c]);
    }
    out += (r + 1 < t.rows.size()) ? "},\n" : "}\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace tubedyn::emit
