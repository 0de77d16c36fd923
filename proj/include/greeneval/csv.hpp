#pragma once

// Comma-separated tables: header row, RFC 4180 quoting ("" escapes a quote,
// quoted fields may hold commas and newlines). Lines starting with '#' outside
// a quoted field are comments.

#include <string>
#include <string_view>
#include <vector>

namespace greeneval::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the row starts
  std::vector<std::string> fields;
};

// Throws Error(kParse) with the line number on an unterminated quote or text
// after a closing quote.
std::vector<Row> parse(std::string_view document);

// Writer cells: text is always quoted, numbers never are, empty cells are bare.
struct Cell {
  enum class Kind { kEmpty, kText, kNumber };
  Kind kind = Kind::kEmpty;
  std::string value;

  static Cell empty() { return {}; }
  static Cell text(std::string v) { return {Kind::kText, std::move(v)}; }
  static Cell number(std::string v) { return {Kind::kNumber, std::move(v)}; }
};

std::string quote(std::string_view text);
std::string format_row(const std::vector<Cell>& cells);

}  // namespace greeneval::csv
