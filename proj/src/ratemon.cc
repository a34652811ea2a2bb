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

#include "spdevops/ratemon.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spdevops/errors.h"

namespace spdevops {

double GaussianTailRisk(double mean, double variance, double capacity) {
  if (variance <= 0.0) return mean > capacity ? 1.0 : 0.0;
  double z = (capacity - mean) / std::sqrt(2.0 * variance);
  return std::clamp(0.5 * std::erfc(z), 0.0, 1.0);
}

RateEstimate RateMonUpdate(const std::vector<RateSample>& window,
                           double capacity, int window_size) {
  if (window_size < 2 || static_cast<int>(window.size()) != window_size) {
    throw ShortWindow("rate window has " + std::to_string(window.size()) +
                      " samples, expected " + std::to_string(window_size));
  }
  if (!(capacity > 0.0)) {
    throw std::invalid_argument("capacity must be positive");
  }
  RateEstimate e;
  e.link_id = window.front().link_id;
  e.window_start = window.front().tick;
  e.window_end = window.back().tick;
  e.n = window_size;
  double sum = 0.0;
  for (const auto& s : window) sum += s.mbps;
  e.mean = sum / window_size;
  double ss = 0.0;
  for (const auto& s : window) ss += (s.mbps - e.mean) * (s.mbps - e.mean);
  e.variance = ss / (window_size - 1);
  e.risk = GaussianTailRisk(e.mean, e.variance, capacity);
  return e;
}

RateMon::RateMon(std::string link_id, double capacity, int window_size)
    : link_id_(std::move(link_id)),
      capacity_(capacity),
      window_size_(window_size) {
  buffer_.reserve(window_size);
}

std::optional<RateEstimate> RateMon::Push(Tick tick, double mbps) {
  buffer_.push_back({link_id_, tick, mbps});
  ++samples_;
  if (static_cast<int>(buffer_.size()) < window_size_) return std::nullopt;
  RateEstimate e = RateMonUpdate(buffer_, capacity_, window_size_);
  buffer_.clear();
  ++estimates_;
  return e;
}

nlohmann::json RateEstimateToJson(const RateEstimate& e) {
  return {{"link", e.link_id}, {"start", e.window_start}, {"end", e.window_end},
          {"mean", e.mean},    {"variance", e.variance},  {"risk", e.risk},
          {"n", e.n}};
}

RateEstimate RateEstimateFromJson(const nlohmann::json& j) {
  RateEstimate e;
  e.link_id = j.at("link").get<std::string>();
  e.window_start = j.at("start").get<Tick>();
  e.window_end = j.at("end").get<Tick>();
  e.mean = j.at("mean").get<double>();
  e.variance = j.at("variance").get<double>();
  e.risk = j.at("risk").get<double>();
  e.n = j.at("n").get<int>();
  return e;
}

}  // namespace spdevops
