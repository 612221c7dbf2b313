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

#ifndef ANONYTOPE_CSV_HPP_
#define ANONYTOPE_CSV_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "anonytope/geometry.hpp"

namespace anonytope {

struct CsvDocument {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180 style: comma separated, double-quoted fields may hold commas,
// quotes ("") and newlines. Blank lines are skipped.
CsvDocument ReadCsv(std::istream& in);
CsvDocument ReadCsvFile(const std::string& path);

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& cells);

struct ColumnSelection {
  std::vector<std::string> quasi;
  std::vector<std::string> identifiers;
  std::vector<std::string> sensitive;
};

// Tags columns by role. Throws kInput for an empty document or a selected
// column missing from the header.
NumericTable TagColumns(const CsvDocument& doc,
                        const ColumnSelection& selection);

}  // namespace anonytope

#endif  // ANONYTOPE_CSV_HPP_
