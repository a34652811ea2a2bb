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

#include "spdevops/interval_set.h"

#include <algorithm>
#include <sstream>

namespace spdevops {

IntervalSet::IntervalSet(std::initializer_list<Interval> intervals)
    : IntervalSet(FromIntervals(std::vector<Interval>(intervals))) {}

IntervalSet IntervalSet::Full() { return Range(0, kMaxValue); }

IntervalSet IntervalSet::Single(uint32_t value) { return Range(value, value); }

IntervalSet IntervalSet::Range(uint32_t lo, uint32_t hi) {
  return FromIntervals({{lo, hi}});
}

IntervalSet IntervalSet::FromIntervals(std::vector<Interval> intervals) {
  std::vector<Interval> clipped;
  clipped.reserve(intervals.size());
  for (Interval iv : intervals) {
    if (iv.lo > kMaxValue || iv.lo > iv.hi) continue;
    iv.hi = std::min(iv.hi, kMaxValue);
    clipped.push_back(iv);
  }
  std::sort(clipped.begin(), clipped.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  IntervalSet out;
  for (const Interval& iv : clipped) {
    if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi + 1) {
      out.intervals_.back().hi = std::max(out.intervals_.back().hi, iv.hi);
    } else {
      out.intervals_.push_back(iv);
    }
  }
  return out;
}

IntervalSet IntervalSet::Residue(const IntervalSet& base, uint32_t modulus,
                                 uint32_t residue) {
  if (modulus <= 1) return residue == 0 ? base : IntervalSet();
  IntervalSet out;
  for (const Interval& iv : base.intervals_) {
    uint32_t first = iv.lo + (residue + modulus - iv.lo % modulus) % modulus;
    for (uint64_t v = first; v <= iv.hi; v += modulus) {
      out.intervals_.push_back(
          {static_cast<uint32_t>(v), static_cast<uint32_t>(v)});
    }
  }
  // Singletons spaced by modulus >= 2 are never adjacent, so `out` is already
  // normalized.
  return out;
}

bool IntervalSet::IsFull() const {
  return intervals_.size() == 1 && intervals_[0].lo == 0 &&
         intervals_[0].hi == kMaxValue;
}

bool IntervalSet::Contains(uint32_t value) const {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), value,
      [](uint32_t v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  --it;
  return value <= it->hi;
}

bool IntervalSet::IsSubsetOf(const IntervalSet& other) const {
  return Subtract(other).empty();
}

uint64_t IntervalSet::Cardinality() const {
  uint64_t n = 0;
  for (const Interval& iv : intervals_) n += uint64_t{iv.hi} - iv.lo + 1;
  return n;
}

std::optional<uint32_t> IntervalSet::Min() const {
  if (intervals_.empty()) return std::nullopt;
  return intervals_.front().lo;
}

IntervalSet IntervalSet::Intersect(const IntervalSet& other) const {
  IntervalSet out;
  size_t i = 0, j = 0;
  const auto& a = intervals_;
  const auto& b = other.intervals_;
  while (i < a.size() && j < b.size()) {
    uint32_t lo = std::max(a[i].lo, b[j].lo);
    uint32_t hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) out.intervals_.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

IntervalSet IntervalSet::Union(const IntervalSet& other) const {
  std::vector<Interval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  return FromIntervals(std::move(all));
}

IntervalSet IntervalSet::Complement() const {
  IntervalSet out;
  uint32_t next = 0;
  for (const Interval& iv : intervals_) {
    if (iv.lo > next) out.intervals_.push_back({next, iv.lo - 1});
    next = iv.hi + 1;
  }
  if (next <= kMaxValue) out.intervals_.push_back({next, kMaxValue});
  return out;
}

IntervalSet IntervalSet::Subtract(const IntervalSet& other) const {
  return Intersect(other.Complement());
}

std::string IntervalSet::ToString() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < intervals_.size(); ++i) {
    if (i) os << ",";
    if (intervals_[i].lo == intervals_[i].hi) {
      os << intervals_[i].lo;
    } else {
      os << intervals_[i].lo << ".." << intervals_[i].hi;
    }
  }
  os << "}";
  return os.str();
}

}  // namespace spdevops
