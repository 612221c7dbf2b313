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

#ifndef ANONYTOPE_REPORT_HPP_
#define ANONYTOPE_REPORT_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "anonytope/anonymity.hpp"
#include "anonytope/categorical.hpp"
#include "anonytope/homology.hpp"
#include "json.hpp"

namespace anonytope {

// { "bars": [ { "dim", "birth", "death"|null, "weight_steps"|null } ],
//   "n_points" }. H0 bars come from the weighted sweep, higher dimensions
// from the reduction. Zero-length bars are kept.
nlohmann::json BarcodeJson(const WeightedBarcode& h0, const Barcode& barcode);

// { "k", "regimes": [ { "eps_lo", "eps_hi"|null, "n_classes", "classes" } ] }
nlohmann::json RegimeReportJson(std::size_t k,
                                const std::vector<Regime>& regimes);

nlohmann::json VerdictJson(double eps, std::size_t k,
                           const AnonymityVerdict& verdict);

nlohmann::json LatticeReportJson(std::size_t k,
                                 const std::vector<GeneralizationTree>& trees,
                                 const LatticeSearchResult& result);

// Partition with one-based row ids.
nlohmann::json PartitionJson(const Partition& classes);

// Tree file: { "trees": [ { "attribute", "root",
//                           "children": { parent: [child, ...], ... } } ] }
// Each tree is validated; errors list every violation found.
std::vector<GeneralizationTree> ParseTrees(const std::string& text);
std::vector<GeneralizationTree> LoadTreeFile(const std::string& path);

// Split-panel barcode: one column per k, H1 panel above H0. Bars are red
// where k-anonymity fails, green where it holds, grey for H0 segments whose
// component holds fewer than k rows.
std::string RenderBarcodeSvg(
    const WeightedBarcode& h0, const Barcode& barcode,
    const std::map<std::size_t, std::vector<Regime>>& regimes_by_k);

}  // namespace anonytope

#endif  // ANONYTOPE_REPORT_HPP_
