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

#include "spdevops/aggregator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spdevops {

void CheckSpec(const AggregationSpec& spec) {
  if (spec.threshold_low > spec.threshold_high) {
    throw std::invalid_argument("threshold_low above threshold_high");
  }
  if (spec.sustain < 1) throw std::invalid_argument("sustain must be >= 1");
  if (spec.combine == Combine::kWeightedSum &&
      spec.weights.size() != spec.inputs.size()) {
    throw std::invalid_argument("one weight per input required");
  }
  if (!(spec.capacity > 0.0) || !(spec.load_scale > 0.0)) {
    throw std::invalid_argument("capacity and load_scale must be positive");
  }
}

std::string_view TriggerKindName(TriggerKind k) {
  return k == TriggerKind::kHigh ? "HIGH" : "LOW";
}

AggregatorPhase AggregatorState::phase() const {
  if (high_latched) return AggregatorPhase::kFiredHigh;
  if (low_latched) return AggregatorPhase::kFiredLow;
  if (above > 0) return AggregatorPhase::kArmedHigh;
  if (below > 0) return AggregatorPhase::kArmedLow;
  return AggregatorPhase::kIdle;
}

namespace {

double MetricOf(const AggregationSpec& spec, const RateEstimate& e) {
  const double s = spec.load_scale;
  switch (spec.metric) {
    case Metric::kRisk:
      if (s == 1.0) return e.risk;
      return GaussianTailRisk(e.mean * s, e.variance * s * s, spec.capacity);
    case Metric::kMean:
      return e.mean * s;
    case Metric::kUtilization:
      return e.mean * s / spec.capacity;
  }
  return 0.0;
}

}  // namespace

double CombineEstimates(const AggregationSpec& spec,
                        const std::vector<RateEstimate>& estimates) {
  std::vector<double> values;
  std::vector<double> weights;
  for (const auto& e : estimates) {
    if (spec.inputs.empty()) {
      values.push_back(MetricOf(spec, e));
      weights.push_back(1.0);
      continue;
    }
    auto it = std::find(spec.inputs.begin(), spec.inputs.end(), e.link_id);
    if (it == spec.inputs.end()) continue;
    values.push_back(MetricOf(spec, e));
    size_t idx = static_cast<size_t>(it - spec.inputs.begin());
    weights.push_back(idx < spec.weights.size() ? spec.weights[idx] : 1.0);
  }
  if (values.empty()) return 0.0;
  switch (spec.combine) {
    case Combine::kMax:
      return *std::max_element(values.begin(), values.end());
    case Combine::kMean: {
      double sum = 0.0;
      for (double v : values) sum += v;
      return sum / values.size();
    }
    case Combine::kWeightedSum: {
      double sum = 0.0;
      for (size_t i = 0; i < values.size(); ++i) sum += values[i] * weights[i];
      return sum;
    }
  }
  return 0.0;
}

std::pair<std::optional<TriggerEvent>, AggregatorState> StepValue(
    const AggregationSpec& spec, double value, Tick tick,
    AggregatorState state) {
  ++state.windows;
  const bool high = value > spec.threshold_high;
  const bool low = value < spec.threshold_low;
  state.above = high ? state.above + 1 : 0;
  state.below = low ? state.below + 1 : 0;
  if (low) state.high_latched = false;
  if (high) state.low_latched = false;

  std::optional<TriggerEvent> event;
  if (state.above >= spec.sustain && !state.high_latched) {
    event = TriggerEvent{TriggerKind::kHigh, value, tick, spec.action};
    state.high_latched = true;
    state.above = 0;
  } else if (state.below >= spec.sustain && !state.low_latched) {
    event = TriggerEvent{TriggerKind::kLow, value, tick, spec.action};
    state.low_latched = true;
    state.below = 0;
  }
  return {event, state};
}

std::pair<std::optional<TriggerEvent>, AggregatorState> AggregateStep(
    const AggregationSpec& spec, const std::vector<RateEstimate>& estimates,
    AggregatorState state) {
  Tick tick = 0;
  for (const auto& e : estimates) tick = std::max(tick, e.window_end);
  return StepValue(spec, CombineEstimates(spec, estimates), tick, state);
}

}  // namespace spdevops
