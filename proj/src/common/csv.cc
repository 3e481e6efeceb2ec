/*
 * Copyright 2026 The imbal Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "imbal/common/csv.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace imbal {
namespace {

// Splits one logical record; may consume further physical lines when a
// quoted field spans newlines. Returns false at end of input.
bool ReadRecord(std::istream& in, char delimiter,
                std::vector<std::string>& fields, size_t& line_no) {
  fields.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  ++line_no;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  while (true) {
    for (size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      any = true;
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            ++i;
          } else {
            in_quotes = false;
          }
        } else {
          field.push_back(c);
        }
      } else if (c == '"') {
        in_quotes = true;
      } else if (c == delimiter) {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\r' && i + 1 == line.size()) {
        // CRLF
      } else {
        field.push_back(c);
      }
    }
    if (!in_quotes) break;
    field.push_back('\n');
    if (!std::getline(in, line)) {
      throw std::runtime_error("csv: unterminated quoted field at line " +
                               std::to_string(line_no));
    }
    ++line_no;
  }
  if (!any && fields.empty()) return true;  // blank line, caller skips
  fields.push_back(std::move(field));
  return true;
}

}  // namespace

CsvTable ReadCsv(std::istream& in, char delimiter) {
  CsvTable table;
  std::vector<std::string> fields;
  size_t line_no = 0;
  bool have_header = false;
  while (ReadRecord(in, delimiter, fields, line_no)) {
    if (fields.empty()) continue;
    if (!have_header) {
      table.header = fields;
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw std::runtime_error("csv: line " + std::to_string(line_no) +
                               " has " + std::to_string(fields.size()) +
                               " fields, header has " +
                               std::to_string(table.header.size()));
    }
    table.rows.push_back(fields);
  }
  if (!have_header) throw std::runtime_error("csv: missing header row");
  return table;
}

CsvTable ReadCsvFile(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return ReadCsv(in, delimiter);
}

std::string CsvEscape(std::string_view field, char delimiter) {
  const bool needs_quotes =
      field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
      std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields,
                 char delimiter) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << delimiter;
    out << CsvEscape(fields[i], delimiter);
  }
  out << '\n';
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("FormatDouble failed");
  return std::string(buf, ptr);
}

}  // namespace imbal
