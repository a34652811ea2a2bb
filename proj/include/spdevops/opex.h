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

#ifndef SPDEVOPS_OPEX_H_
#define SPDEVOPS_OPEX_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spdevops/errors.h"

namespace spdevops {

// Incident-impact model for estimating what verification, monitoring and
// troubleshooting save. Impact of a category is share x mean duration; a
// process that addresses a category cuts its impact by the scenario
// fraction.

enum class Process : uint8_t { kVerification, kMonitoring, kTroubleshooting };

std::string_view ProcessName(Process p);
std::optional<Process> ParseProcess(std::string_view name);

struct IncidentCategory {
  std::string name;
  double share = 0.0;          // fraction of all incidents
  double mean_duration = 1.0;  // hours
  std::vector<Process> addressable_by;

  bool Addressable() const { return !addressable_by.empty(); }
  bool AddressedBy(Process p) const;
};

struct IncidentModel {
  std::vector<IncidentCategory> categories;
  double conservative = 0.30;
  double optimistic = 0.80;
};

enum class OpexScenario : uint8_t { kConservative, kOptimistic };

std::string_view OpexScenarioName(OpexScenario s);
std::optional<OpexScenario> ParseOpexScenario(std::string_view name);

// Incident shares of significant telecom incidents by root cause, with
// uniform one-hour durations. The remaining 17% ("other") is not
// addressable.
IncidentModel DefaultIncidentModel();

// Throws InvalidModel unless shares lie in [0, 1] and sum to at most 1,
// durations are positive, names are unique and fractions lie in [0, 1].
void CheckModel(const IncidentModel& m);

struct CategorySavings {
  std::string name;
  double impact = 0.0;
  // Fraction of incidents avoided up front (verification).
  double avoided = 0.0;
  // Fraction of repair time saved (monitoring, troubleshooting).
  double duration_reduction = 0.0;
  // Impact reduction used in the totals.
  double reduction = 0.0;
};

struct SavingsReport {
  double fraction = 0.0;
  std::vector<CategorySavings> categories;
  // Impact-weighted reduction over addressable categories; 0 if none.
  double overall_addressable = 0.0;
  // The same over every category.
  double overall_total = 0.0;
};

SavingsReport OpexSavings(const IncidentModel& m, double fraction);
SavingsReport OpexSavings(const IncidentModel& m, OpexScenario s);

// JSON: {"categories": [{"name", "share", "mean_duration",
// "addressable_by": ["VERIFICATION", ...]}], "scenario_fraction":
// {"conservative", "optimistic"}}. Throws ParseError or InvalidModel.
IncidentModel IncidentModelFromJson(const std::string& text);
std::string IncidentModelToJson(const IncidentModel& m);

std::string SavingsReportToJson(const SavingsReport& r);
std::string SavingsReportToCsv(const SavingsReport& r);
std::string SavingsReportToText(const SavingsReport& r);

}  // namespace spdevops

#endif  // SPDEVOPS_OPEX_H_
