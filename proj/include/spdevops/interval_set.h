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

#ifndef SPDEVOPS_INTERVAL_SET_H_
#define SPDEVOPS_INTERVAL_SET_H_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace spdevops {

// Closed interval [lo, hi] over the 16-bit header value space.
struct Interval {
  uint32_t lo = 0;
  uint32_t hi = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// A set of integers in [0, kDomainSize) stored as sorted, non-overlapping,
// non-adjacent closed intervals. Every public constructor and operation
// returns a normalized set.
class IntervalSet {
 public:
  static constexpr uint32_t kDomainSize = 1u << 16;
  static constexpr uint32_t kMaxValue = kDomainSize - 1;

  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> intervals);

  static IntervalSet Full();
  static IntervalSet Single(uint32_t value);
  static IntervalSet Range(uint32_t lo, uint32_t hi);
  // Normalizes arbitrary (possibly overlapping, unsorted) input. Values past
  // kMaxValue are clipped; inverted intervals are dropped.
  static IntervalSet FromIntervals(std::vector<Interval> intervals);
  // All values v in `base` with v % modulus == residue.
  static IntervalSet Residue(const IntervalSet& base, uint32_t modulus,
                             uint32_t residue);

  bool empty() const { return intervals_.empty(); }
  bool IsFull() const;
  bool Contains(uint32_t value) const;
  bool IsSubsetOf(const IntervalSet& other) const;
  uint64_t Cardinality() const;
  std::optional<uint32_t> Min() const;

  IntervalSet Intersect(const IntervalSet& other) const;
  IntervalSet Union(const IntervalSet& other) const;
  IntervalSet Subtract(const IntervalSet& other) const;
  IntervalSet Complement() const;

  const std::vector<Interval>& intervals() const { return intervals_; }

  std::string ToString() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace spdevops

#endif  // SPDEVOPS_INTERVAL_SET_H_
