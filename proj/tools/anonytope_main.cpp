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

// Command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "anonytope/anonytope.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;

struct Options {
  std::string config;
  std::string input;
  std::vector<std::string> quasi;
  std::vector<std::string> identifiers;
  std::vector<std::string> sensitive;
  std::vector<std::size_t> k;
  double eps = 0.0;
  std::string grid;
  int dim_cap = 2;
  std::string objective = "max_classes";
  std::string trees;
  std::string out;
  std::vector<std::string> format;
  std::string strategy = "lower_then_upper";
  bool keep_columns = false;
  unsigned threads = 1;
};

// Raised after a message has already been printed.
struct Exit {
  int code;
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { anontp_free_string(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

int ExitCodeFor(anontp_status status) {
  return status == ANONTP_ERROR_INFEASIBLE ? kExitInfeasible : kExitInput;
}

void Check(anontp_status status) {
  if (status == ANONTP_OK) return;
  std::cerr << "error: " << anontp_last_error() << "\n";
  throw Exit{ExitCodeFor(status)};
}

[[noreturn]] void InputError(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw Exit{kExitInput};
}

unsigned ThreadsFromEnv() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ANONYTOPE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return std::min<unsigned>(hw, static_cast<unsigned>(v));
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring ANONYTOPE_THREADS='" << env << "'\n";
  }
  return hw;
}

std::vector<std::string> SplitList(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const std::string& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

// "start:stop:step" (inclusive of stop up to rounding) or "a,b,c".
std::vector<double> ParseGrid(const std::string& spec) {
  std::vector<double> grid;
  try {
    if (spec.find(':') != std::string::npos) {
      std::stringstream ss(spec);
      std::string a, b, c;
      std::getline(ss, a, ':');
      std::getline(ss, b, ':');
      std::getline(ss, c, ':');
      const double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
      if (!(step > 0.0) || stop < start) InputError("bad grid '" + spec + "'");
      const auto count =
          static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
      for (std::size_t i = 0; i <= count; ++i) grid.push_back(start + i * step);
    } else {
      for (const std::string& v : SplitList({spec})) grid.push_back(std::stod(v));
    }
  } catch (const std::invalid_argument&) {
    InputError("bad grid '" + spec + "'");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || (i > 0 && grid[i] <= grid[i - 1])) {
      InputError("grid values must be nonnegative and strictly increasing");
    }
  }
  if (grid.empty()) InputError("empty grid");
  return grid;
}

bool Wants(const Options& o, const std::string& fmt) {
  return std::find(o.format.begin(), o.format.end(), fmt) != o.format.end();
}

void Emit(const Options& o, const std::string& name, const std::string& body) {
  if (o.out.empty()) {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::create_directories(o.out);
  const std::filesystem::path path = std::filesystem::path(o.out) / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) InputError("cannot write '" + path.string() + "'");
  file << body;
  if (!body.empty() && body.back() != '\n') file << '\n';
  std::cerr << "wrote " << path.string() << "\n";
}

anontp_objective ObjectiveOf(const Options& o) {
  if (o.objective == "max_classes") return ANONTP_MAX_CLASSES;
  if (o.objective == "smallest_eps") return ANONTP_SMALLEST_EPS;
  InputError("unknown objective '" + o.objective + "'");
}

struct Dataset {
  anontp_dataset* handle = nullptr;
  ~Dataset() { anontp_dataset_free(handle); }
};

void LoadNumeric(const Options& o, Dataset& ds) {
  if (o.input.empty()) InputError("--input is required");
  if (o.quasi.empty()) InputError("--quasi is required");
  auto c_names = [](const std::vector<std::string>& names) {
    std::vector<const char*> out;
    for (const auto& n : names) out.push_back(n.c_str());
    return out;
  };
  const auto quasi = c_names(o.quasi);
  const auto ids = c_names(o.identifiers);
  const auto sens = c_names(o.sensitive);
  anontp_columns columns{quasi.data(), quasi.size(), ids.data(), ids.size(),
                         sens.data(),  sens.size()};
  Check(anontp_dataset_load_csv(o.input.c_str(), &columns, &ds.handle));
}

anontp_filtration_options FiltrationOptions(const Options& o) {
  anontp_filtration_options f;
  anontp_filtration_options_default(&f);
  f.dim_cap = o.dim_cap;
  f.threads = o.threads;
  return f;
}

std::string Interval(const json& regime) {
  std::ostringstream s;
  s << "[" << regime["eps_lo"].get<double>() << ", ";
  if (regime["eps_hi"].is_null()) {
    s << "inf)";
  } else {
    s << regime["eps_hi"].get<double>() << ")";
  }
  return s.str();
}

std::string ClassesText(const json& classes) {
  std::string s;
  for (const auto& c : classes) {
    s += s.empty() ? "{" : " {";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i].get<int>());
    }
    s += "}";
  }
  return s;
}

void PrintNearest(const Dataset& ds, std::size_t k, double eps) {
  OwnedString nearest;
  Check(anontp_nearest_regime_json(ds.handle, k, eps, &nearest.ptr));
  const json r = json::parse(nearest.str());
  if (r.is_null()) {
    std::cout << "no regime achieves " << k << "-anonymity\n";
  } else {
    std::cout << "nearest achievable regime: eps in " << Interval(r) << ", "
              << r["n_classes"].get<int>() << " classes\n";
  }
}

int RunSweep(const Options& o) {
  Dataset ds;
  LoadNumeric(o, ds);
  const std::size_t n = anontp_dataset_rows(ds.handle);
  std::vector<std::size_t> ks = o.k.empty() ? std::vector<std::size_t>{2} : o.k;
  std::vector<double> grid;
  if (!o.grid.empty()) grid = ParseGrid(o.grid);

  // Per-k sweeps share the immutable dataset handle.
  std::vector<std::string> reports(ks.size());
  std::vector<anontp_status> status(ks.size(), ANONTP_OK);
  std::vector<std::string> errors(ks.size());
  {
    std::vector<std::thread> workers;
    std::size_t next = 0;
    auto work = [&](std::size_t i) {
      OwnedString s;
      status[i] = grid.empty()
                      ? anontp_regimes_json(ds.handle, ks[i], &s.ptr)
                      : anontp_grid_json(ds.handle, ks[i], grid.data(),
                                         grid.size(), &s.ptr);
      if (status[i] == ANONTP_OK) {
        reports[i] = s.str();
      } else {
        errors[i] = anontp_last_error();
      }
    };
    while (next < ks.size()) {
      const std::size_t batch = std::min<std::size_t>(o.threads, ks.size() - next);
      for (std::size_t b = 0; b < batch; ++b) workers.emplace_back(work, next + b);
      for (auto& t : workers) t.join();
      workers.clear();
      next += batch;
    }
  }
  int code = kExitOk;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (status[i] != ANONTP_OK) {
      std::cerr << "error: " << errors[i] << "\n";
      return ExitCodeFor(status[i]);
    }
    const json report = json::parse(reports[i]);
    std::cout << "k = " << ks[i] << ": " << report["regimes"].size()
              << " regime(s)\n";
    for (const auto& r : report["regimes"]) {
      std::cout << "  eps in " << Interval(r) << "  " << r["n_classes"]
                << " classes  " << ClassesText(r["classes"]) << "\n";
    }
    if (ks[i] > n) {
      std::cout << "  k exceeds row count (" << ks[i] << " > " << n << ")\n";
      code = kExitInfeasible;
    } else if (report["regimes"].empty()) {
      code = kExitInfeasible;
    }
    if (Wants(o, "json") && !o.out.empty()) {
      Emit(o, "regimes_k" + std::to_string(ks[i]) + ".json", reports[i]);
    }
  }
  const anontp_filtration_options f = FiltrationOptions(o);
  if (Wants(o, "json") && !o.out.empty()) {
    OwnedString barcode;
    Check(anontp_barcode_json(ds.handle, &f, &barcode.ptr));
    Emit(o, "barcode.json", barcode.str());
  }
  if (Wants(o, "svg") && !o.out.empty()) {
    OwnedString svg;
    Check(anontp_barcode_svg(ds.handle, &f, ks.data(), ks.size(), &svg.ptr));
    Emit(o, "barcode.svg", svg.str());
  }
  return code;
}

int RunCheck(const Options& o, bool eps_given) {
  if (!eps_given) InputError("--eps is required for check");
  if (o.k.size() != 1) InputError("check takes exactly one --k");
  Dataset ds;
  LoadNumeric(o, ds);
  const std::size_t k = o.k.front();
  const std::size_t n = anontp_dataset_rows(ds.handle);
  OwnedString verdict;
  int achieved = 0;
  Check(anontp_check(ds.handle, o.eps, k, &achieved, &verdict.ptr));
  if (Wants(o, "json") || o.out.empty()) Emit(o, "check.json", verdict.str());
  if (k > n) {
    std::cerr << "k exceeds row count (" << k << " > " << n << ")\n";
    return kExitInfeasible;
  }
  if (achieved) return kExitOk;
  const json v = json::parse(verdict.str());
  std::cerr << k << "-anonymity not achieved at eps = " << o.eps << " ("
            << v["failure_reason"].get<std::string>() << ")\n";
  PrintNearest(ds, k, o.eps);
  return kExitInfeasible;
}

int RunAnonymize(const Options& o) {
  if (o.k.size() != 1) InputError("anonymize takes exactly one --k");
  Dataset ds;
  LoadNumeric(o, ds);
  const std::size_t k = o.k.front();
  OwnedString csv, regime;
  const anontp_status st = anontp_anonymize_csv(
      ds.handle, k, ObjectiveOf(o), o.keep_columns ? 1 : 0, &csv.ptr,
      &regime.ptr);
  if (st == ANONTP_ERROR_INFEASIBLE) {
    std::cerr << "error: " << anontp_last_error() << "\n";
    PrintNearest(ds, k, 0.0);
    return kExitInfeasible;
  }
  Check(st);
  const json r = json::parse(regime.str());
  std::cerr << "selected eps in " << Interval(r) << ", " << r["n_classes"]
            << " classes " << ClassesText(r["classes"]) << "\n";
  Emit(o, "anonymized.csv", csv.str());
  if (!o.out.empty() && Wants(o, "json")) Emit(o, "selected_regime.json", regime.str());
  return kExitOk;
}

int RunBarcode(const Options& o) {
  Dataset ds;
  LoadNumeric(o, ds);
  const anontp_filtration_options f = FiltrationOptions(o);
  if (Wants(o, "json") || o.out.empty()) {
    OwnedString barcode;
    Check(anontp_barcode_json(ds.handle, &f, &barcode.ptr));
    Emit(o, "barcode.json", barcode.str());
  }
  if (Wants(o, "svg") && !o.out.empty()) {
    std::vector<std::size_t> ks = o.k;
    if (ks.empty()) {
      for (std::size_t k : {2, 3, 4}) {
        if (k <= anontp_dataset_rows(ds.handle)) ks.push_back(k);
      }
    }
    OwnedString svg;
    Check(anontp_barcode_svg(ds.handle, &f, ks.data(), ks.size(), &svg.ptr));
    Emit(o, "barcode.svg", svg.str());
  }
  if (Wants(o, "txt") && !o.out.empty()) {
    OwnedString text;
    Check(anontp_filtration_text(ds.handle, &f, &text.ptr));
    Emit(o, "filtration.txt", text.str());
  }
  return kExitOk;
}

int RunLattice(const Options& o) {
  if (o.input.empty()) InputError("--input is required");
  if (o.trees.empty()) InputError("--trees is required for lattice-sweep");
  if (o.k.size() != 1) InputError("lattice-sweep takes exactly one --k");
  anontp_strategy strategy = ANONTP_LOWER_THEN_UPPER;
  if (o.strategy == "exhaustive") {
    strategy = ANONTP_EXHAUSTIVE;
  } else if (o.strategy != "lower_then_upper") {
    InputError("unknown strategy '" + o.strategy + "'");
  }
  std::vector<const char*> quasi;
  for (const auto& q : o.quasi) quasi.push_back(q.c_str());
  anontp_categorical* handle = nullptr;
  Check(anontp_categorical_load(o.input.c_str(), o.trees.c_str(), quasi.data(),
                                quasi.size(), &handle));
  std::unique_ptr<anontp_categorical, void (*)(anontp_categorical*)> guard(
      handle, anontp_categorical_free);
  const std::size_t k = o.k.front();
  OwnedString report;
  Check(anontp_lattice_search_json(handle, k, strategy, o.threads, &report.ptr));
  Emit(o, "lattice_k" + std::to_string(k) + ".json", report.str());
  const json r = json::parse(report.str());
  std::cerr << r["note"].get<std::string>() << "\n";
  if (r["minimal_nodes"].empty()) return kExitInfeasible;
  std::cerr << "minimal nodes: " << r["minimal_nodes"].dump() << "\n";
  return kExitOk;
}

// Fills options the command line left unset from a JSON config file.
void ApplyConfig(Options& o, const CLI::App& sub) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) InputError("cannot open config '" + o.config + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    InputError(std::string("config is not valid JSON: ") + e.what());
  }
  auto unset = [&](const char* flag) {
    return sub.get_option(flag)->count() == 0;
  };
  auto list = [](const json& v) {
    std::vector<std::string> out;
    if (v.is_array()) {
      for (const auto& x : v) out.push_back(x.get<std::string>());
    } else {
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  try {
    if (cfg.contains("input") && unset("--input")) o.input = cfg["input"];
    if (cfg.contains("quasi") && unset("--quasi")) o.quasi = list(cfg["quasi"]);
    if (cfg.contains("identifiers") && unset("--identifiers")) {
      o.identifiers = list(cfg["identifiers"]);
    }
    if (cfg.contains("sensitive") && unset("--sensitive")) {
      o.sensitive = list(cfg["sensitive"]);
    }
    if (cfg.contains("k") && unset("--k")) {
      o.k.clear();
      if (cfg["k"].is_array()) {
        for (const auto& v : cfg["k"]) o.k.push_back(v.get<std::size_t>());
      } else {
        o.k.push_back(cfg["k"].get<std::size_t>());
      }
    }
    if (cfg.contains("eps") && unset("--eps")) o.eps = cfg["eps"];
    if (cfg.contains("grid") && unset("--grid")) {
      o.grid = cfg["grid"].is_string() ? cfg["grid"].get<std::string>()
                                       : [&] {
                                           std::string s;
                                           for (const auto& v : cfg["grid"]) {
                                             if (!s.empty()) s += ",";
                                             s += v.dump();
                                           }
                                           return s;
                                         }();
    }
    if (cfg.contains("dim_cap") && unset("--dim-cap")) o.dim_cap = cfg["dim_cap"];
    if (cfg.contains("objective") && unset("--objective")) {
      o.objective = cfg["objective"];
    }
    if (cfg.contains("trees") && unset("--trees")) o.trees = cfg["trees"];
    if (cfg.contains("out") && unset("--out")) o.out = cfg["out"];
    if (cfg.contains("format") && unset("--format")) o.format = list(cfg["format"]);
    if (cfg.contains("strategy") && unset("--strategy")) {
      o.strategy = cfg["strategy"];
    }
    if (cfg.contains("keep_columns") && unset("--keep-columns")) {
      o.keep_columns = cfg["keep_columns"];
    }
  } catch (const json::exception& e) {
    InputError(std::string("bad config value: ") + e.what());
  }
}

void AddCommon(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON config file mirroring the flags");
  sub->add_option("--input", o.input, "input CSV with a header row");
  sub->add_option("--quasi", o.quasi, "quasi-identifier columns")
      ->delimiter(',');
  sub->add_option("--identifiers", o.identifiers, "identifier columns")
      ->delimiter(',');
  sub->add_option("--sensitive", o.sensitive, "sensitive columns")
      ->delimiter(',');
  sub->add_option("--k", o.k, "anonymity level(s)")->delimiter(',');
  sub->add_option("--eps", o.eps, "generalization radius (normalized units)");
  sub->add_option("--grid", o.grid,
                  "radii grid, start:stop:step or comma list");
  sub->add_option("--dim-cap", o.dim_cap, "highest simplex dimension");
  sub->add_option("--objective", o.objective, "max_classes | smallest_eps");
  sub->add_option("--trees", o.trees, "generalization tree file (JSON)");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--format", o.format, "json,csv,svg,txt")->delimiter(',');
  sub->add_option("--strategy", o.strategy, "lower_then_upper | exhaustive");
  sub->add_flag("--keep-columns", o.keep_columns,
                "pass non-quasi columns through when anonymizing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent-homology k-anonymity explorer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", anontp_version());
  Options o;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"sweep", "all k-anonymity regimes per k, barcode and diagram"},
           {"check", "k-anonymity verdict at one radius"},
           {"anonymize", "emit the generalized table for the chosen regime"},
           {"barcode", "persistence barcode only"},
           {"lattice-sweep", "categorical generalization lattice search"}}) {
    subs[name] = app.add_subcommand(name, help);
    AddCommon(subs[name], o);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  try {
    CLI::App* sub = app.get_subcommands().front();
    ApplyConfig(o, *sub);
    o.quasi = SplitList(o.quasi);
    o.format = SplitList(o.format);
    if (o.format.empty()) o.format = {"json", "csv", "svg"};
    o.threads = ThreadsFromEnv();
    for (std::size_t k : o.k) {
      if (k < 1) InputError("k must be at least 1");
    }
    if (o.dim_cap < 1) InputError("--dim-cap must be at least 1");
    const std::string name = sub->get_name();
    if (name == "sweep") return RunSweep(o);
    if (name == "check") {
      bool eps_given = sub->get_option("--eps")->count() > 0;
      if (!eps_given && !o.config.empty()) {
        std::ifstream in(o.config);
        eps_given = json::parse(in, nullptr, false).contains("eps");
      }
      return RunCheck(o, eps_given);
    }
    if (name == "anonymize") return RunAnonymize(o);
    if (name == "barcode") return RunBarcode(o);
    return RunLattice(o);
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
