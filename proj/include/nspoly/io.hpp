// Copyright 2026 The nspoly Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Text formats for behaviors, vertex and facet lists, and class tables.

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nspoly/box.hpp"
#include "nspoly/linalg.hpp"
#include "nspoly/symmetry.hpp"

namespace nspoly::io {

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline bool is_blank_or_comment(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

inline std::string format_row(std::span<const Rational> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += v[i].str();
  }
  return s;
}

inline std::string format_row(std::span<const Integer> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += v[i].get_str();
  }
  return s;
}

inline RationalVector parse_rational_row(std::string_view line, std::size_t expected, std::size_t line_no) {
  const auto toks = split_ws(line);
  if (expected && toks.size() != expected)
    throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(expected) + " values, found " +
                      std::to_string(toks.size()));
  RationalVector v;
  v.reserve(toks.size());
  for (const auto& t : toks) {
    try {
      v.push_back(Rational::parse(t));
    } catch (const std::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return v;
}

// One behavior per non-comment line.
inline std::vector<RationalVector> parse_rows(std::string_view text, std::size_t width) {
  std::vector<RationalVector> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (is_blank_or_comment(line)) continue;
    rows.push_back(parse_rational_row(line, width, no));
  }
  return rows;
}

inline std::vector<Table> parse_box_lines(std::string_view text) {
  std::vector<Table> out;
  for (auto& r : parse_rows(text, kEntries)) out.push_back(to_table(r));
  return out;
}

namespace detail {

// Reads 'count=<n>' from a header of the form '# nspoly <kind> v1 count=<n>'.
inline std::size_t header_count(std::string_view text, std::string_view kind) {
  const std::string prefix = "# nspoly " + std::string(kind) + " v1 count=";
  const auto eol = text.find('\n');
  const std::string_view first = text.substr(0, eol);
  if (first.substr(0, prefix.size()) != prefix) throw FormatError("missing header '" + prefix + "<n>'");
  try {
    return std::stoull(std::string(first.substr(prefix.size())));
  } catch (const std::exception&) {
    throw FormatError("malformed count in header");
  }
}

}  // namespace detail

inline std::string write_vertex_file(const std::vector<RationalVector>& vertices) {
  std::string s = "# nspoly vertices v1 count=" + std::to_string(vertices.size()) + "\n";
  for (const auto& v : vertices) {
    s += format_row(v);
    s += '\n';
  }
  return s;
}

inline std::vector<RationalVector> parse_vertex_file(std::string_view text) {
  const std::size_t count = detail::header_count(text, "vertices");
  auto rows = parse_rows(text, 0);
  if (rows.size() != count) throw FormatError("vertex count does not match header");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw FormatError("vertices have unequal length");
  return rows;
}

inline std::string write_facet_file(const std::vector<IntegerVector>& facets) {
  std::string s = "# nspoly facets v1 count=" + std::to_string(facets.size()) + "\n";
  for (const auto& f : facets) {
    s += format_row(f);
    s += '\n';
  }
  return s;
}

inline std::vector<IntegerVector> parse_facet_file(std::string_view text) {
  const std::size_t count = detail::header_count(text, "facets");
  std::vector<IntegerVector> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (is_blank_or_comment(line)) continue;
    IntegerVector row;
    for (const auto& t : split_ws(line)) {
      Integer z;
      if (z.set_str(t, 10) != 0) throw FormatError("line " + std::to_string(no) + ": bad integer '" + t + "'");
      row.push_back(z);
    }
    if (!out.empty() && row.size() != out.front().size()) throw FormatError("facets have unequal length");
    out.push_back(std::move(row));
  }
  if (out.size() != count) throw FormatError("facet count does not match header");
  return out;
}

struct ClassRecord {
  std::size_t id = 0;
  std::size_t size = 0;
  Table representative;
};

inline std::string write_class_file(const std::vector<ClassRecord>& records) {
  std::string s = "# nspoly classes v1 count=" + std::to_string(records.size()) + "\n";
  for (const auto& r : records) {
    s += "class " + std::to_string(r.id) + " size " + std::to_string(r.size) + " rep " + format_row(r.representative);
    s += '\n';
  }
  return s;
}

inline std::vector<ClassRecord> parse_class_file(std::string_view text) {
  std::vector<ClassRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (is_blank_or_comment(line)) continue;
    const auto toks = split_ws(line);
    if (toks.size() != 5 + kEntries || toks[0] != "class" || toks[2] != "size" || toks[4] != "rep")
      throw FormatError("line " + std::to_string(no) + ": expected 'class <id> size <n> rep <64 values>'");
    ClassRecord r;
    try {
      r.id = std::stoull(toks[1]);
      r.size = std::stoull(toks[3]);
      for (std::size_t i = 0; i < kEntries; ++i) r.representative[i] = Rational::parse(toks[5 + i]);
    } catch (const std::exception& e) {
      throw FormatError("line " + std::to_string(no) + ": " + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ClassRecord> class_records(const ClassTable& ct) {
  std::vector<ClassRecord> out;
  for (const auto& c : ct.classes) out.push_back({c.id, c.orbit_size, c.representative});
  return out;
}

// Minimal CSV: fields never contain commas, so no quoting is needed except
// for lists, which are joined with spaces.
inline std::string csv_line(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) s += ',';
    s += fields[i];
  }
  s += '\n';
  return s;
}

inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace nspoly::io
