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

#include "anonytope/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "anonytope/error.hpp"

namespace anonytope {

using nlohmann::json;

namespace {

json OptionalNumber(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json StepsJson(const std::vector<WeightStep>& steps) {
  json out = json::array();
  for (const WeightStep& s : steps) out.push_back({s.eps, s.weight});
  return out;
}

}  // namespace

json PartitionJson(const Partition& classes) {
  json out = json::array();
  for (const auto& c : classes) {
    json ids = json::array();
    for (Vertex v : c) ids.push_back(v + 1);
    out.push_back(std::move(ids));
  }
  return out;
}

json BarcodeJson(const WeightedBarcode& h0, const Barcode& barcode) {
  json bars = json::array();
  for (const WeightedBar& b : h0.h0_bars) {
    bars.push_back({{"dim", 0},
                    {"birth", b.birth},
                    {"death", OptionalNumber(b.death)},
                    {"weight_steps", StepsJson(b.steps)}});
  }
  for (const Bar& b : barcode.bars) {
    if (b.dim == 0) continue;
    bars.push_back({{"dim", b.dim},
                    {"birth", b.birth},
                    {"death", OptionalNumber(b.death)},
                    {"weight_steps", nullptr}});
  }
  return {{"bars", std::move(bars)}, {"n_points", h0.n_points}};
}

json RegimeReportJson(std::size_t k, const std::vector<Regime>& regimes) {
  json list = json::array();
  for (const Regime& r : regimes) {
    list.push_back({{"eps_lo", r.eps_lo},
                    {"eps_hi", OptionalNumber(r.eps_hi)},
                    {"n_classes", r.n_classes()},
                    {"classes", PartitionJson(r.classes)}});
  }
  return {{"k", k}, {"regimes", std::move(list)}};
}

json VerdictJson(double eps, std::size_t k, const AnonymityVerdict& verdict) {
  json out = {{"eps", eps}, {"k", k}, {"achieved", verdict.achieved}};
  if (verdict.achieved) {
    out["classes"] = PartitionJson(verdict.classes);
    out["n_classes"] = verdict.classes.size();
  } else {
    out["failure_reason"] = FailureReasonName(verdict.failure);
    out["component"] = PartitionJson({verdict.failing_component}).front();
  }
  return out;
}

json LatticeReportJson(std::size_t k,
                       const std::vector<GeneralizationTree>& trees,
                       const LatticeSearchResult& result) {
  json attributes = json::array();
  for (const auto& t : trees) {
    attributes.push_back({{"name", t.attribute()}, {"height", t.height()}});
  }
  auto node_json = [](const ChainNodeReport& n) {
    return json{{"levels", n.levels},
                {"n_classes", n.classes.size()},
                {"k_anonymous", n.k_anonymous},
                {"classes", PartitionJson(n.classes)}};
  };
  json chains = json::array();
  for (const ChainReport& c : result.chains) {
    json nodes = json::array();
    for (const auto& n : c.nodes) nodes.push_back(node_json(n));
    json bars = json::array();
    for (const WeightedBar& b : c.h0_bars) {
      bars.push_back({{"dim", 0},
                      {"birth", b.birth},
                      {"death", OptionalNumber(b.death)},
                      {"weight_steps", StepsJson(b.steps)}});
    }
    chains.push_back(
        {{"name", c.name},
         {"nodes", std::move(nodes)},
         {"first_k_anonymous",
          c.first_k_anonymous ? json(c.nodes[*c.first_k_anonymous].levels)
                              : json(nullptr)},
         {"h0_bars", std::move(bars)}});
  }
  json out = {
      {"k", k},
      {"strategy", result.strategy == SearchStrategy::kExhaustive
                       ? "exhaustive"
                       : "lower_then_upper"},
      {"attributes", std::move(attributes)},
      {"chains", std::move(chains)},
      {"minimal_nodes", result.minimal_nodes},
      {"upper_chain_computed", result.upper_chain_computed},
      {"conclusive", result.conclusive},
      {"note", result.note}};
  if (!result.evaluated.empty()) {
    json nodes = json::array();
    for (const auto& n : result.evaluated) nodes.push_back(node_json(n));
    out["nodes"] = std::move(nodes);
  }
  return out;
}

std::vector<GeneralizationTree> ParseTrees(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInput, std::string("tree file is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("trees") || !doc["trees"].is_array()) {
    Fail(ErrorCode::kInput, "tree file must hold a \"trees\" array");
  }
  std::vector<GeneralizationTree> trees;
  try {
    for (const json& t : doc["trees"]) {
      GeneralizationTree::ChildList children;
      if (t.contains("children")) {
        for (const auto& [parent, kids] : t.at("children").items()) {
          children.emplace_back(parent, kids.get<std::vector<std::string>>());
        }
      }
      trees.emplace_back(t.at("attribute").get<std::string>(),
                         t.at("root").get<std::string>(), children);
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInput, std::string("malformed tree entry: ") + e.what());
  }
  for (const auto& t : trees) RequireValid(t);
  return trees;
}

std::vector<GeneralizationTree> LoadTreeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kInput, "cannot open tree file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseTrees(buf.str());
}

namespace {

constexpr double kPanelWidth = 320;
constexpr double kPanelHeight = 180;
constexpr double kMargin = 40;
constexpr const char* kValid = "#2e8b57";
constexpr const char* kInvalid = "#d62728";
constexpr const char* kMuted = "#b0b0b0";

struct Span {
  double lo, hi;
};

// Pieces of [lo, hi) inside / outside the union of regime intervals.
std::vector<std::pair<Span, bool>> SplitByRegimes(
    double lo, double hi, const std::vector<Regime>& regimes) {
  std::vector<double> cuts{lo, hi};
  for (const Regime& r : regimes) {
    if (r.eps_lo > lo && r.eps_lo < hi) cuts.push_back(r.eps_lo);
    if (r.eps_hi && *r.eps_hi > lo && *r.eps_hi < hi) cuts.push_back(*r.eps_hi);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<Span, bool>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const bool ok = std::any_of(regimes.begin(), regimes.end(),
                                [mid](const Regime& r) { return r.Contains(mid); });
    out.push_back({{cuts[i], cuts[i + 1]}, ok});
  }
  return out;
}

}  // namespace

std::string RenderBarcodeSvg(
    const WeightedBarcode& h0, const Barcode& barcode,
    const std::map<std::size_t, std::vector<Regime>>& regimes_by_k) {
  double max_eps = 0.0;
  for (const WeightedBar& b : h0.h0_bars) {
    if (b.death) max_eps = std::max(max_eps, *b.death);
  }
  for (const Bar& b : barcode.bars) {
    max_eps = std::max(max_eps, b.death.value_or(b.birth));
  }
  for (const auto& [k, regimes] : regimes_by_k) {
    for (const Regime& r : regimes) max_eps = std::max(max_eps, r.eps_lo);
  }
  max_eps = max_eps > 0.0 ? max_eps * 1.1 : 1.0;

  const std::size_t columns = std::max<std::size_t>(1, regimes_by_k.size());
  const double width = columns * (kPanelWidth + kMargin) + kMargin;
  const double height = 2 * (kPanelHeight + kMargin) + kMargin;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" "
      << "font-size=\"11\">\n";

  std::vector<Bar> h1;
  for (const Bar& b : barcode.Displayed()) {
    if (b.dim == 1) h1.push_back(b);
  }
  std::vector<const WeightedBar*> h0_shown;
  for (const WeightedBar& b : h0.h0_bars) {
    if (!(b.death && *b.death == b.birth)) h0_shown.push_back(&b);
  }

  std::size_t col = 0;
  for (const auto& [k, regimes] : regimes_by_k) {
    const double x0 = kMargin + col * (kPanelWidth + kMargin);
    auto x_of = [&](double eps) {
      return x0 + kPanelWidth * std::min(eps, max_eps) / max_eps;
    };
    for (int panel = 0; panel < 2; ++panel) {
      const double y0 = kMargin + panel * (kPanelHeight + kMargin);
      svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\""
          << kPanelWidth << "\" height=\"" << kPanelHeight
          << "\" fill=\"none\" stroke=\"#444\"/>\n";
      svg << "<text x=\"" << x0 << "\" y=\"" << y0 - 6 << "\">H"
          << (panel == 0 ? 1 : 0) << ", k = " << k << "</text>\n";
      const std::size_t rows = panel == 0 ? h1.size() : h0_shown.size();
      const double pitch = kPanelHeight / static_cast<double>(rows + 1);
      for (std::size_t i = 0; i < rows; ++i) {
        const double y = y0 + pitch * (i + 1);
        auto line = [&](double lo, double hi, const char* color) {
          svg << "<line x1=\"" << x_of(lo) << "\" y1=\"" << y << "\" x2=\""
              << x_of(hi) << "\" y2=\"" << y << "\" stroke=\"" << color
              << "\" stroke-width=\"3\"/>\n";
        };
        if (panel == 0) {
          const Bar& b = h1[i];
          for (const auto& [span, ok] :
               SplitByRegimes(b.birth, b.death.value_or(max_eps), regimes)) {
            line(span.lo, span.hi, ok ? kValid : kInvalid);
          }
          continue;
        }
        const WeightedBar& b = *h0_shown[i];
        const double end = b.death.value_or(max_eps);
        for (std::size_t s = 0; s < b.steps.size(); ++s) {
          const double lo = b.steps[s].eps;
          const double hi =
              s + 1 < b.steps.size() ? std::min(b.steps[s + 1].eps, end) : end;
          if (hi <= lo) continue;
          if (b.steps[s].weight < k) {
            line(lo, hi, kMuted);
            continue;
          }
          for (const auto& [span, ok] : SplitByRegimes(lo, hi, regimes)) {
            line(span.lo, span.hi, ok ? kValid : kInvalid);
          }
        }
        svg << "<text x=\"" << x_of(end) + 3 << "\" y=\"" << y + 4 << "\">"
            << b.steps.back().weight << "</text>\n";
      }
      svg << "<text x=\"" << x0 + kPanelWidth - 40 << "\" y=\""
          << y0 + kPanelHeight + 14 << "\">eps "
          << FormatDouble(max_eps) << "</text>\n";
    }
    ++col;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace anonytope
