#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "urig/error.hpp"
#include "urig/key_rings.hpp"

namespace urig {

// Text format: header "n m k seed", then one line per vertex holding its
// sorted colours separated by single spaces.
struct StoredTable {
  KeyRingTable table;
  std::uint64_t seed = 0;
};

inline void write_table(std::ostream& out, const KeyRingTable& table, std::uint64_t seed) {
  out << table.n() << ' ' << table.m() << ' ' << table.k() << ' ' << seed << '\n';
  std::string line;
  char buf[16];
  for (std::size_t v = 0; v < table.n(); ++v) {
    line.clear();
    for (Colour c : table.row(v)) {
      if (!line.empty()) line.push_back(' ');
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, c);
      line.append(buf, end);
    }
    line.push_back('\n');
    out << line;
  }
}

inline std::string header_line(const KeyRingTable& table, std::uint64_t seed) {
  return std::to_string(table.n()) + ' ' + std::to_string(table.m()) + ' ' +
         std::to_string(table.k()) + ' ' + std::to_string(seed);
}

namespace detail {

inline std::vector<std::uint64_t> parse_integers(std::string_view text, std::size_t line_no) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    if (pos == text.size()) break;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc{}) {
      throw ParseError(line_no, "expected a non-negative integer");
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\r') {
      throw ParseError(line_no, "unexpected character '" + std::string(1, text[pos]) + "'");
    }
    values.push_back(value);
  }
  return values;
}

}  // namespace detail

inline StoredTable read_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(line_no, "missing header line");
  const auto header = detail::parse_integers(line, line_no);
  if (header.size() != 4) throw ParseError(line_no, "header must be \"n m k seed\"");
  const std::uint64_t n = header[0], m = header[1], k = header[2];
  if (m == 0 || m > kMaxColours) throw ParseError(line_no, "m must lie in [1, 2^32]");
  if (k == 0 || k > m) throw ParseError(line_no, "k must lie in [1, m]");
  if (n > kMaxVertices) throw ParseError(line_no, "n exceeds 2^32");

  std::vector<Colour> flat;
  flat.reserve(static_cast<std::size_t>(n * k));
  for (std::uint64_t v = 0; v < n; ++v) {
    ++line_no;
    if (!std::getline(in, line)) {
      throw ParseError(line_no, "expected " + std::to_string(n) + " rows, found " +
                                    std::to_string(v));
    }
    const auto row = detail::parse_integers(line, line_no);
    if (row.size() != k) {
      throw ParseError(line_no, "row has " + std::to_string(row.size()) + " colours, expected " +
                                    std::to_string(k));
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] >= m) throw ParseError(line_no, "colour " + std::to_string(row[j]) + " >= m");
      if (j > 0 && row[j - 1] == row[j]) {
        throw ParseError(line_no, "duplicate colour " + std::to_string(row[j]));
      }
      if (j > 0 && row[j - 1] > row[j]) throw ParseError(line_no, "colours are not sorted");
      flat.push_back(static_cast<Colour>(row[j]));
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ParseError(line_no, "trailing data after the last row");
    }
  }
  return {KeyRingTable(m, k, std::move(flat)), header[3]};
}

}  // namespace urig
