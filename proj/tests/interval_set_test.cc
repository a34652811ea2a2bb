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

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace spdevops {
namespace {

std::set<uint32_t> Values(const IntervalSet& s) {
  std::set<uint32_t> out;
  for (const auto& i : s.intervals()) {
    for (uint32_t v = i.lo; v <= i.hi; ++v) out.insert(v);
  }
  return out;
}

TEST(IntervalSet, NormalizesInput) {
  auto s = IntervalSet::FromIntervals({{5, 9}, {1, 2}, {3, 4}, {20, 10}});
  ASSERT_EQ(s.intervals().size(), 1u);
  EXPECT_EQ(s.intervals()[0], (Interval{1, 9}));
  EXPECT_EQ(IntervalSet::FromIntervals({{0, 70000}}), IntervalSet::Full());
}

TEST(IntervalSet, BasicQueries) {
  IntervalSet s = {{10, 20}, {30, 30}};
  EXPECT_TRUE(s.Contains(10));
  EXPECT_TRUE(s.Contains(30));
  EXPECT_FALSE(s.Contains(25));
  EXPECT_EQ(s.Cardinality(), 12u);
  EXPECT_EQ(*s.Min(), 10u);
  EXPECT_FALSE(IntervalSet().Min().has_value());
  EXPECT_TRUE(IntervalSet::Full().IsFull());
  EXPECT_EQ(IntervalSet::Full().Cardinality(), 65536u);
  EXPECT_EQ(s.ToString(), "{10..20,30}");
}

TEST(IntervalSet, Complement) {
  IntervalSet s = {{0, 9}, {100, 65535}};
  EXPECT_EQ(s.Complement(), IntervalSet::Range(10, 99));
  EXPECT_EQ(IntervalSet().Complement(), IntervalSet::Full());
}

TEST(IntervalSet, Residue) {
  auto r = IntervalSet::Residue(IntervalSet::Range(0, 9), 3, 1);
  EXPECT_EQ(Values(r), (std::set<uint32_t>{1, 4, 7}));
  // Residues partition the base.
  IntervalSet all;
  for (uint32_t k = 0; k < 5; ++k) {
    all = all.Union(IntervalSet::Residue(IntervalSet::Range(256, 511), 5, k));
  }
  EXPECT_EQ(all, IntervalSet::Range(256, 511));
}

TEST(IntervalSet, AlgebraMatchesEnumeration) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<uint32_t> v(0, 63);
  auto random_set = [&] {
    std::vector<Interval> iv;
    for (int i = 0; i < 3; ++i) {
      uint32_t a = v(rng), b = v(rng);
      iv.push_back({std::min(a, b), std::max(a, b)});
    }
    return IntervalSet::FromIntervals(iv);
  };
  for (int i = 0; i < 1000; ++i) {
    IntervalSet a = random_set(), b = random_set();
    auto va = Values(a), vb = Values(b);
    std::set<uint32_t> inter, uni, diff;
    for (auto x : va) (vb.count(x) ? inter : diff).insert(x);
    uni = va;
    uni.insert(vb.begin(), vb.end());
    EXPECT_EQ(Values(a.Intersect(b)), inter);
    EXPECT_EQ(Values(a.Union(b)), uni);
    EXPECT_EQ(Values(a.Subtract(b)), diff);
    EXPECT_EQ(a.IsSubsetOf(b), diff.empty());
    // Normal form: sorted, non-adjacent.
    const IntervalSet u = a.Union(b);
    const auto& iv = u.intervals();
    for (size_t k = 1; k < iv.size(); ++k)
      EXPECT_GT(iv[k].lo, iv[k - 1].hi + 1);
  }
}

}  // namespace
}  // namespace spdevops
