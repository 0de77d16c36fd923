#pragma once

// Small text helpers shared by the file-format readers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace greeneval::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string_view> split_lines(std::string_view document);

// Whole-string numeric parses; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

// 1-based line/column of a byte offset into `document`.
struct Position {
  std::size_t line;
  std::size_t column;
};
Position position_of(std::string_view document, std::size_t offset);

// Throws Error(kIo) if the file cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// Shortest round-trip representation of a double ("0.148", "407.7", "1e-300").
std::string format_double(double v);

// Fixed-point rendering rounded half-to-even on the exact binary value.
std::string format_fixed(double v, int decimals);

std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace greeneval::text
