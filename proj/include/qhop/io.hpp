#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qhop/measure.hpp"
#include "qhop/protocol.hpp"

namespace qhop {

// Shortest representation that round-trips a double exactly.
inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// One tagged value in an output table.
class Cell {
 public:
  enum class Kind { Null, Text, Real, Integer, Boolean };

  Cell() : kind_(Kind::Null) {}
  Cell(std::string v) : kind_(Kind::Text), text_(std::move(v)) {}
  Cell(const char* v) : kind_(Kind::Text), text_(v) {}
  Cell(double v) : kind_(Kind::Real), real_(v) {}
  Cell(int v) : kind_(Kind::Integer), integer_(v) {}
  Cell(std::int64_t v) : kind_(Kind::Integer), integer_(v) {}
  Cell(std::size_t v)
      : kind_(Kind::Integer), integer_(static_cast<std::int64_t>(v)) {}
  Cell(bool v) : kind_(Kind::Boolean), boolean_(v) {}

  Kind kind() const { return kind_; }
  const std::string& text() const { return text_; }
  double real() const { return real_; }
  std::int64_t integer() const { return integer_; }
  bool boolean() const { return boolean_; }

 private:
  Kind kind_;
  std::string text_;
  double real_ = 0.0;
  std::int64_t integer_ = 0;
  bool boolean_ = false;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
      throw std::invalid_argument("Table: row width must match column count");
    }
    rows.push_back(std::move(row));
  }
};

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
  return out;
}

inline std::string csv_value(const Cell& c) {
  switch (c.kind()) {
    case Cell::Kind::Null: return "";
    case Cell::Kind::Text: return csv_field(c.text());
    case Cell::Kind::Real: return format_real(c.real());
    case Cell::Kind::Integer: return std::to_string(c.integer());
    case Cell::Kind::Boolean: return c.boolean() ? "true" : "false";
  }
  return "";
}

inline std::string json_value(const Cell& c) {
  switch (c.kind()) {
    case Cell::Kind::Null: return "null";
    case Cell::Kind::Text: return json_string(c.text());
    case Cell::Kind::Real: return format_real(c.real());
    case Cell::Kind::Integer: return std::to_string(c.integer());
    case Cell::Kind::Boolean: return c.boolean() ? "true" : "false";
  }
  return "null";
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += detail::csv_field(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

// One JSON object per row; keys keep the table's column order.
inline std::string to_jsonl(const Table& t) {
  std::string out;
  for (const auto& row : t.rows) {
    out += '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += detail::json_string(t.columns[i]);
      out += ':';
      out += detail::json_value(row[i]);
    }
    out += "}\n";
  }
  return out;
}

// Full run record as a single JSON object. Bell outcomes use the 2-bit wire
// code; amplitudes are [re, im] pairs.
inline std::string transcript_to_json(const Transcript& t) {
  std::string out = "{";
  out += "\"protocol\":";
  out += detail::json_string(to_string(t.kind));
  out += ",\"hops\":[";
  for (std::size_t i = 0; i < t.hops.size(); ++i) {
    const HopRecord& h = t.hops[i];
    if (i) out += ',';
    out += "{\"hop\":" + std::to_string(h.hop_index);
    out += ",\"bell\":" + std::to_string(wire_code(h.bell_outcome));
    out += ",\"pauli\":";
    out += h.pauli_applied ? detail::json_string(to_string(*h.pauli_applied))
                           : "null";
    out += ",\"kraus_success\":";
    out += h.kraus_success ? (*h.kraus_success ? "true" : "false") : "null";
    out += ",\"branch_probability\":" + format_real(h.branch_probability);
    out += '}';
  }
  out += "],\"error_index\":" + std::to_string(t.error_index);
  out += ",\"final_kraus_success\":";
  out += t.final_kraus_success ? (*t.final_kraus_success ? "true" : "false")
                               : "null";
  out += ",\"final_kraus_probability\":";
  out += t.final_kraus_probability ? format_real(*t.final_kraus_probability)
                                   : "null";
  out += ",\"success\":";
  out += t.success ? "true" : "false";
  out += ",\"total_probability\":" + format_real(t.total_probability);
  out += ",\"final_state\":[";
  for (std::size_t i = 0; i < t.final_state.dim(); ++i) {
    if (i) out += ',';
    out += '[' + format_real(t.final_state[i].real()) + ',' +
           format_real(t.final_state[i].imag()) + ']';
  }
  out += "]}";
  return out;
}

}  // namespace qhop
