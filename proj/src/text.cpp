#include "greeneval/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "greeneval/error.hpp"

namespace greeneval::text {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split_lines(std::string_view document) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < document.size()) {
    std::size_t end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    std::string_view line = document.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

Position position_of(std::string_view document, std::size_t offset) {
  offset = std::min(offset, document.size());
  Position pos{1, 1};
  for (std::size_t i = 0; i < offset; ++i) {
    if (document[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_fixed(double v, int decimals) {
  if (decimals < 0) throw Error(ErrorCode::kDomain, "decimals must be >= 0");
  if (!std::isfinite(v)) throw Error(ErrorCode::kDomain, "cannot format a non-finite value");

  // Every finite double has a terminating decimal expansion with at most 1074
  // fractional digits, so this rendering is exact.
  constexpr int kExactDigits = 1100;
  std::array<char, 1500> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::fabs(v),
                                       std::chars_format::fixed, kExactDigits);
  const std::string exact(buf.data(), ptr);
  const std::size_t dot = exact.find('.');
  std::string int_part = exact.substr(0, dot);
  const std::string frac = exact.substr(dot + 1);

  std::string kept = int_part + frac.substr(0, static_cast<std::size_t>(decimals));
  const std::string_view dropped = std::string_view(frac).substr(static_cast<std::size_t>(decimals));

  bool round_up = false;
  if (!dropped.empty()) {
    const char first = dropped.front();
    const bool rest_nonzero = dropped.find_first_not_of('0', 1) != std::string_view::npos;
    if (first > '5' || (first == '5' && rest_nonzero)) {
      round_up = true;
    } else if (first == '5') {
      round_up = ((kept.back() - '0') % 2) != 0;
    }
  }
  if (round_up) {
    std::size_t i = kept.size();
    while (i > 0) {
      --i;
      if (kept[i] == '9') {
        kept[i] = '0';
      } else {
        ++kept[i];
        break;
      }
      if (i == 0) kept.insert(kept.begin(), '1');
    }
  }

  const std::size_t int_len = kept.size() - static_cast<std::size_t>(decimals);
  std::string out = kept.substr(0, int_len);
  if (decimals > 0) out += "." + kept.substr(int_len);
  const bool all_zero = kept.find_first_not_of('0') == std::string::npos;
  if (std::signbit(v) && !all_zero) out.insert(out.begin(), '-');
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace greeneval::text
