// Copyright 2026 The spdevops Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spdevops/opex.h"

#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"

namespace spdevops {

using nlohmann::json;

namespace {

constexpr std::string_view kProcessNames[] = {"VERIFICATION", "MONITORING",
                                              "TROUBLESHOOTING"};

bool InUnit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string_view ProcessName(Process p) {
  return kProcessNames[static_cast<int>(p)];
}

std::optional<Process> ParseProcess(std::string_view name) {
  for (int i = 0; i < 3; ++i) {
    if (kProcessNames[i] == name) return static_cast<Process>(i);
  }
  return std::nullopt;
}

bool IncidentCategory::AddressedBy(Process p) const {
  for (Process q : addressable_by) {
    if (q == p) return true;
  }
  return false;
}

std::string_view OpexScenarioName(OpexScenario s) {
  return s == OpexScenario::kConservative ? "conservative" : "optimistic";
}

std::optional<OpexScenario> ParseOpexScenario(std::string_view name) {
  if (name == "conservative") return OpexScenario::kConservative;
  if (name == "optimistic") return OpexScenario::kOptimistic;
  return std::nullopt;
}

IncidentModel DefaultIncidentModel() {
  using P = Process;
  IncidentModel m;
  m.categories = {
      {"software_bugs", 0.44, 1.0, {P::kVerification, P::kTroubleshooting}},
      {"network_overload", 0.19, 1.0, {P::kMonitoring, P::kTroubleshooting}},
      {"faulty_changes", 0.10, 1.0, {P::kVerification, P::kTroubleshooting}},
      {"faulty_policies", 0.10, 1.0, {P::kVerification, P::kTroubleshooting}},
      {"other", 0.17, 1.0, {}},
  };
  return m;
}

void CheckModel(const IncidentModel& m) {
  if (m.categories.empty()) throw InvalidModel("model has no categories");
  double total = 0.0;
  std::set<std::string> names;
  for (const auto& c : m.categories) {
    if (c.name.empty()) throw InvalidModel("category without a name");
    if (!names.insert(c.name).second) {
      throw InvalidModel("duplicate category " + c.name);
    }
    if (!InUnit(c.share)) {
      throw InvalidModel(c.name + ": share must lie in [0, 1]");
    }
    if (!std::isfinite(c.mean_duration) || c.mean_duration <= 0) {
      throw InvalidModel(c.name + ": mean_duration must be positive");
    }
    total += c.share;
  }
  if (total > 1.0 + 1e-9) {
    throw InvalidModel("shares sum to " + std::to_string(total) + " > 1");
  }
  if (!InUnit(m.conservative) || !InUnit(m.optimistic)) {
    throw InvalidModel("scenario fractions must lie in [0, 1]");
  }
}

SavingsReport OpexSavings(const IncidentModel& m, double fraction) {
  CheckModel(m);
  if (!InUnit(fraction)) throw InvalidModel("fraction must lie in [0, 1]");
  SavingsReport r;
  r.fraction = fraction;
  double impact_all = 0.0;
  double impact_addr = 0.0;
  double saved = 0.0;
  for (const auto& c : m.categories) {
    CategorySavings s;
    s.name = c.name;
    s.impact = c.share * c.mean_duration;
    if (c.AddressedBy(Process::kVerification)) s.avoided = fraction;
    if (c.AddressedBy(Process::kMonitoring) ||
        c.AddressedBy(Process::kTroubleshooting)) {
      s.duration_reduction = fraction;
    }
    s.reduction = c.Addressable() ? fraction : 0.0;
    impact_all += s.impact;
    if (c.Addressable()) impact_addr += s.impact;
    saved += s.impact * s.reduction;
    r.categories.push_back(s);
  }
  // Weighted mean taken relative to the first addressable reduction, so equal
  // reductions come back exactly instead of picking up rounding.
  std::optional<double> base;
  double shifted = 0.0;
  for (size_t i = 0; i < m.categories.size(); ++i) {
    if (!m.categories[i].Addressable()) continue;
    const CategorySavings& s = r.categories[i];
    if (!base) base = s.reduction;
    shifted += s.impact * (s.reduction - *base);
  }
  r.overall_addressable = impact_addr > 0 ? *base + shifted / impact_addr : 0.0;
  r.overall_total = impact_all > 0 ? saved / impact_all : 0.0;
  return r;
}

SavingsReport OpexSavings(const IncidentModel& m, OpexScenario s) {
  return OpexSavings(
      m, s == OpexScenario::kConservative ? m.conservative : m.optimistic);
}

IncidentModel IncidentModelFromJson(const std::string& text) {
  IncidentModel m;
  try {
    json j = json::parse(text);
    m.categories.clear();
    for (const auto& c : j.at("categories")) {
      IncidentCategory cat;
      cat.name = c.at("name").get<std::string>();
      cat.share = c.at("share").get<double>();
      cat.mean_duration = c.value("mean_duration", 1.0);
      for (const auto& p : c.value("addressable_by", json::array())) {
        auto proc = ParseProcess(p.get<std::string>());
        if (!proc) {
          throw ParseError("unknown process " + p.get<std::string>());
        }
        cat.addressable_by.push_back(*proc);
      }
      m.categories.push_back(std::move(cat));
    }
    if (j.contains("scenario_fraction")) {
      const auto& f = j.at("scenario_fraction");
      m.conservative = f.value("conservative", m.conservative);
      m.optimistic = f.value("optimistic", m.optimistic);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("incident model: ") + e.what());
  }
  CheckModel(m);
  return m;
}

std::string IncidentModelToJson(const IncidentModel& m) {
  json cats = json::array();
  for (const auto& c : m.categories) {
    json procs = json::array();
    for (Process p : c.addressable_by)
      procs.push_back(std::string(ProcessName(p)));
    cats.push_back({{"name", c.name},
                    {"share", c.share},
                    {"mean_duration", c.mean_duration},
                    {"addressable_by", procs}});
  }
  json j = {{"categories", cats},
            {"scenario_fraction",
             {{"conservative", m.conservative}, {"optimistic", m.optimistic}}}};
  return j.dump(2) + "\n";
}

std::string SavingsReportToJson(const SavingsReport& r) {
  json cats = json::array();
  for (const auto& c : r.categories) {
    cats.push_back({{"name", c.name},
                    {"impact", c.impact},
                    {"avoided", c.avoided},
                    {"duration_reduction", c.duration_reduction},
                    {"reduction", c.reduction}});
  }
  json j = {{"fraction", r.fraction},
            {"categories", cats},
            {"overall_addressable", r.overall_addressable},
            {"overall_total", r.overall_total}};
  return j.dump(2) + "\n";
}

std::string SavingsReportToCsv(const SavingsReport& r) {
  std::string out = "category,impact,avoided,duration_reduction,reduction\n";
  for (const auto& c : r.categories) {
    out += c.name + "," + Fixed(c.impact) + "," + Fixed(c.avoided) + "," +
           Fixed(c.duration_reduction) + "," + Fixed(c.reduction) + "\n";
  }
  out += "overall_addressable,,,," + Fixed(r.overall_addressable) + "\n";
  out += "overall_total,,,," + Fixed(r.overall_total) + "\n";
  return out;
}

std::string SavingsReportToText(const SavingsReport& r) {
  std::string out = "scenario fraction " + Fixed(r.fraction) + "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-18s %8s %8s %10s %10s\n", "category",
                "impact", "avoided", "shortened", "reduction");
  out += line;
  for (const auto& c : r.categories) {
    std::snprintf(line, sizeof line, "%-18s %8.4f %8.4f %10.4f %10.4f\n",
                  c.name.c_str(), c.impact, c.avoided, c.duration_reduction,
                  c.reduction);
    out += line;
  }
  out +=
      "overall (addressable incidents): " + Fixed(r.overall_addressable) + "\n";
  out += "overall (all incidents):         " + Fixed(r.overall_total) + "\n";
  return out;
}

}  // namespace spdevops
