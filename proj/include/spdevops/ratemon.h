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

#ifndef SPDEVOPS_RATEMON_H_
#define SPDEVOPS_RATEMON_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace spdevops {

// Simulation time: one tick is 10 ms (100 Hz sampling).
using Tick = int64_t;
inline constexpr int kTicksPerSecond = 100;
inline constexpr int kDefaultWindow = 100;

struct RateSample {
  std::string link_id;
  Tick tick = 0;
  double mbps = 0.0;
};

// Windowed summary of one link's rate.
struct RateEstimate {
  std::string link_id;
  Tick window_start = 0;  // first sample tick
  Tick window_end = 0;    // last sample tick
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double risk = 0.0;      // P(rate > capacity) under Normal(mean, variance)
  int n = 0;
};

// P(X > capacity) for X ~ Normal(mean, variance). A degenerate distribution
// gives 1 if mean > capacity and 0 otherwise.
double GaussianTailRisk(double mean, double variance, double capacity);

// One estimate from exactly `window_size` samples of one link. Throws
// ShortWindow on a wrong sample count, and std::invalid_argument on a
// non-positive capacity.
RateEstimate RateMonUpdate(const std::vector<RateSample>& window,
                           double capacity, int window_size = kDefaultWindow);

// Observability point on one link: buffers samples and emits an estimate
// each time a window fills.
class RateMon {
 public:
  RateMon(std::string link_id, double capacity,
          int window_size = kDefaultWindow);

  std::optional<RateEstimate> Push(Tick tick, double mbps);

  const std::string& link_id() const { return link_id_; }
  int64_t samples() const { return samples_; }
  int64_t estimates() const { return estimates_; }

 private:
  std::string link_id_;
  double capacity_;
  int window_size_;
  std::vector<RateSample> buffer_;
  int64_t samples_ = 0;
  int64_t estimates_ = 0;
};

nlohmann::json RateEstimateToJson(const RateEstimate& e);
RateEstimate RateEstimateFromJson(const nlohmann::json& j);

}  // namespace spdevops

#endif  // SPDEVOPS_RATEMON_H_
