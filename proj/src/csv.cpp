//
// Copyright 2026 The Anonytope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "anonytope/csv.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "anonytope/error.hpp"

namespace anonytope {

namespace {

bool IsBlank(const std::vector<std::string>& row) {
  return std::all_of(row.begin(), row.end(), [](const std::string& c) {
    return c.find_first_not_of(" \t\r") == std::string::npos;
  });
}

}  // namespace

CsvDocument ReadCsv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  char ch = 0;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          cell += '"';
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (ch == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      if (!IsBlank(row)) records.push_back(std::move(row));
      row.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  if (quoted) Fail(ErrorCode::kInput, "unterminated quoted field");
  if (any && (!cell.empty() || !row.empty())) {
    row.push_back(std::move(cell));
    if (!IsBlank(row)) records.push_back(std::move(row));
  }
  CsvDocument doc;
  if (records.empty()) Fail(ErrorCode::kInput, "empty file: no data rows");
  doc.header = std::move(records.front());
  for (std::string& h : doc.header) {
    const auto b = h.find_first_not_of(" \t");
    const auto e = h.find_last_not_of(" \t");
    h = b == std::string::npos ? "" : h.substr(b, e - b + 1);
  }
  doc.rows.assign(std::make_move_iterator(records.begin() + 1),
                  std::make_move_iterator(records.end()));
  return doc;
}

CsvDocument ReadCsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kInput, "cannot open '" + path + "'");
  return ReadCsv(in);
}

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n\r") == std::string::npos) {
      out << c;
      continue;
    }
    out << '"';
    for (char ch : c) {
      if (ch == '"') out << '"';
      out << ch;
    }
    out << '"';
  }
  out << '\n';
}

NumericTable TagColumns(const CsvDocument& doc,
                        const ColumnSelection& selection) {
  if (doc.rows.empty()) Fail(ErrorCode::kInput, "no data rows");
  NumericTable table;
  table.columns = doc.header;
  table.roles.assign(doc.header.size(), ColumnRole::kOther);
  auto tag = [&](const std::vector<std::string>& names, ColumnRole role) {
    for (const std::string& name : names) {
      auto it = std::find(doc.header.begin(), doc.header.end(), name);
      if (it == doc.header.end()) {
        Fail(ErrorCode::kInput, "column '" + name + "' not found in header");
      }
      table.roles[it - doc.header.begin()] = role;
    }
  };
  tag(selection.identifiers, ColumnRole::kIdentifier);
  tag(selection.sensitive, ColumnRole::kSensitive);
  tag(selection.quasi, ColumnRole::kQuasiIdentifier);
  table.rows = doc.rows;
  table.Validate();
  return table;
}

}  // namespace anonytope
