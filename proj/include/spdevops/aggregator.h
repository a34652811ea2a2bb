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

#ifndef SPDEVOPS_AGGREGATOR_H_
#define SPDEVOPS_AGGREGATOR_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spdevops/ratemon.h"

namespace spdevops {

enum class Combine : uint8_t { kMax, kMean, kWeightedSum };

// Which number an estimate contributes.
enum class Metric : uint8_t {
  kRisk,
  kMean,
  kUtilization,  // mean / capacity
};

// Configuration of one aggregation point. Thresholds form a hysteresis band
// (threshold_low <= threshold_high) and a trigger needs `sustain`
// consecutive windows on the same side.
struct AggregationSpec {
  std::vector<std::string> inputs;  // subscribed link ids
  Combine combine = Combine::kMax;
  std::vector<double> weights;  // kWeightedSum only, one per input
  Metric metric = Metric::kRisk;
  // Evaluate each estimate as if its load were multiplied by this factor
  // (mean and standard deviation scale together). 1 leaves it unchanged.
  double load_scale = 1.0;
  double capacity = 1.0;  // for kRisk with load_scale != 1, kUtilization
  double threshold_high = 1.0;
  double threshold_low = 0.0;
  int sustain = 1;
  std::string action;  // trigger topic
};

// Throws std::invalid_argument when the spec breaks its invariants.
void CheckSpec(const AggregationSpec& spec);

enum class TriggerKind : uint8_t { kHigh, kLow };

std::string_view TriggerKindName(TriggerKind k);

struct TriggerEvent {
  TriggerKind kind = TriggerKind::kHigh;
  double value = 0.0;
  Tick tick = 0;  // end of the window that fired
  std::string topic;
};

enum class AggregatorPhase : uint8_t {
  kIdle,       // no streak in progress
  kArmedHigh,  // above threshold_high, streak shorter than sustain
  kFiredHigh,  // HIGH fired; waits for a value below threshold_low
  kArmedLow,
  kFiredLow,  // LOW fired; waits for a value above threshold_high
};

struct AggregatorState {
  int above = 0;  // consecutive windows > threshold_high
  int below = 0;  // consecutive windows < threshold_low
  bool high_latched = false;
  bool low_latched = false;
  int64_t windows = 0;

  AggregatorPhase phase() const;
  friend bool operator==(const AggregatorState&,
                         const AggregatorState&) = default;
};

// Combined value of one window's estimates (those listed in spec.inputs;
// all of them if inputs is empty). Zero when there are none.
double CombineEstimates(const AggregationSpec& spec,
                        const std::vector<RateEstimate>& estimates);

// One window of the trigger state machine. A value above threshold_high
// for `sustain` windows fires HIGH once; HIGH cannot fire again until some
// window falls below threshold_low. LOW is symmetric.
std::pair<std::optional<TriggerEvent>, AggregatorState> AggregateStep(
    const AggregationSpec& spec, const std::vector<RateEstimate>& estimates,
    AggregatorState state);

// Same machine driven by an already combined value.
std::pair<std::optional<TriggerEvent>, AggregatorState> StepValue(
    const AggregationSpec& spec, double value, Tick tick,
    AggregatorState state);

}  // namespace spdevops

#endif  // SPDEVOPS_AGGREGATOR_H_
