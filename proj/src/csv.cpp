#include "greeneval/csv.hpp"

#include "greeneval/error.hpp"

namespace greeneval::csv {

std::vector<Row> parse(std::string_view doc) {
  std::vector<Row> rows;
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < doc.size()) {
    // Skip blank lines and comments at record start.
    if (doc[i] == '\n' || doc[i] == '\r') {
      if (doc[i] == '\n') ++line;
      ++i;
      continue;
    }
    if (doc[i] == '#') {
      while (i < doc.size() && doc[i] != '\n') ++i;
      continue;
    }

    Row row;
    row.line = line;
    std::string field;
    bool done = false;
    while (!done) {
      if (i < doc.size() && doc[i] == '"') {
        const std::size_t open_line = line;
        ++i;
        while (true) {
          if (i >= doc.size()) {
            throw Error(ErrorCode::kParse,
                        "csv: line " + std::to_string(open_line) + ": unterminated quoted field");
          }
          if (doc[i] == '"') {
            if (i + 1 < doc.size() && doc[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (doc[i] == '\n') ++line;
          field += doc[i++];
        }
        if (i < doc.size() && doc[i] != ',' && doc[i] != '\n' && doc[i] != '\r') {
          throw Error(ErrorCode::kParse,
                      "csv: line " + std::to_string(line) + ": unexpected text after closing quote");
        }
      } else {
        while (i < doc.size() && doc[i] != ',' && doc[i] != '\n' && doc[i] != '\r') {
          if (doc[i] == '"') {
            throw Error(ErrorCode::kParse,
                        "csv: line " + std::to_string(line) + ": stray quote in unquoted field");
          }
          field += doc[i++];
        }
      }
      row.fields.push_back(std::move(field));
      field.clear();
      if (i < doc.size() && doc[i] == ',') {
        ++i;
        continue;
      }
      if (i < doc.size() && doc[i] == '\r') ++i;
      if (i < doc.size() && doc[i] == '\n') {
        ++i;
        ++line;
      }
      done = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_row(const std::vector<Cell>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    switch (cells[i].kind) {
      case Cell::Kind::kEmpty: break;
      case Cell::Kind::kText: out += quote(cells[i].value); break;
      case Cell::Kind::kNumber: out += cells[i].value; break;
    }
  }
  return out + "\n";
}

}  // namespace greeneval::csv
