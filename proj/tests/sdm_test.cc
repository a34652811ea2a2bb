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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "spdevops/aggregator.h"
#include "spdevops/broker.h"
#include "spdevops/monitor.h"
#include "spdevops/ratemon.h"
#include "spdevops/vcpe.h"

namespace spdevops {
namespace {

std::vector<RateSample> Window(const std::vector<double>& v) {
  std::vector<RateSample> out;
  for (size_t i = 0; i < v.size(); ++i) {
    out.push_back({"l", static_cast<Tick>(i), v[i]});
  }
  return out;
}

// --- RateMon ----------------------------------------------------------------

TEST(RateMon, ConstantWindow) {
  RateEstimate e = RateMonUpdate(Window(std::vector<double>(100, 50.0)), 100);
  EXPECT_DOUBLE_EQ(e.mean, 50.0);
  EXPECT_DOUBLE_EQ(e.variance, 0.0);
  EXPECT_DOUBLE_EQ(e.risk, 0.0);
  EXPECT_EQ(e.n, 100);
  EXPECT_DOUBLE_EQ(GaussianTailRisk(120, 0, 100), 1.0);
}

TEST(RateMon, UnbiasedVariance) {
  std::vector<double> v(100, 0.0);
  for (int i = 0; i < 100; ++i) v[i] = i % 2 ? 10.0 : 0.0;
  RateEstimate e = RateMonUpdate(Window(v), 100);
  EXPECT_DOUBLE_EQ(e.mean, 5.0);
  EXPECT_NEAR(e.variance, 25.0 * 100 / 99, 1e-12);
}

TEST(RateMon, WrongWindowSize) {
  EXPECT_THROW(RateMonUpdate(Window({1, 2, 3}), 100), ShortWindow);
  EXPECT_THROW(RateMonUpdate(Window(std::vector<double>(100, 1)), 0),
               std::invalid_argument);
}

TEST(RateMon, TailMatchesMonteCarlo) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> d(80.0, 10.0);
  const int draws = 1'000'000;
  int over = 0;
  for (int i = 0; i < draws; ++i) over += d(rng) > 100.0;
  double mc = static_cast<double>(over) / draws;
  EXPECT_NEAR(GaussianTailRisk(80, 100, 100), 0.02275, 5e-5);
  EXPECT_NEAR(GaussianTailRisk(80, 100, 100), mc, 1e-3);
}

TEST(RateMon, OneEstimatePerWindow) {
  // 20 instances x 2 ports x 100 Hz for one second: 4000 samples, 40
  // estimates.
  std::vector<RateMon> mons;
  for (int i = 0; i < 40; ++i) mons.emplace_back("l" + std::to_string(i), 100);
  int estimates = 0;
  for (Tick t = 0; t < kTicksPerSecond; ++t) {
    for (auto& m : mons) estimates += m.Push(t, 10.0).has_value();
  }
  EXPECT_EQ(estimates, 40);
  int64_t samples = 0;
  for (auto& m : mons) samples += m.samples();
  EXPECT_EQ(samples, 4000);
}

TEST(RateMon, RiskNonIncreasingInCapacity) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> d(80.0, 10.0);
  for (int w = 0; w < 50; ++w) {
    std::vector<double> v(100);
    for (auto& x : v) x = d(rng);
    double prev = 1.0;
    for (double cap : {90.0, 100.0, 110.0, 120.0}) {
      double r = RateMonUpdate(Window(v), cap).risk;
      EXPECT_LE(r, prev);
      EXPECT_GE(r, 0.0);
      prev = r;
    }
  }
}

// --- Aggregator -------------------------------------------------------------

RateEstimate Risk(const std::string& link, double r) {
  RateEstimate e;
  e.link_id = link;
  e.risk = r;
  return e;
}

AggregationSpec Spec(double high, double low, int sustain) {
  AggregationSpec s;
  s.combine = Combine::kMax;
  s.threshold_high = high;
  s.threshold_low = low;
  s.sustain = sustain;
  s.action = "trigger.fw.scale";
  return s;
}

TEST(Aggregator, MaxOverThresholdFires) {
  auto [ev, st] =
      AggregateStep(Spec(0.8, 0.1, 1), {Risk("a", 0.1), Risk("b", 0.9)}, {});
  ASSERT_TRUE(ev.has_value());
  EXPECT_EQ(ev->kind, TriggerKind::kHigh);
  EXPECT_DOUBLE_EQ(ev->value, 0.9);
  EXPECT_EQ(st.phase(), AggregatorPhase::kFiredHigh);
}

TEST(Aggregator, SustainNotMet) {
  AggregationSpec s = Spec(0.8, 0.05, 3);
  AggregatorState st;
  for (double v : {0.9, 0.9, 0.1}) {
    auto [ev, next] = StepValue(s, v, 0, st);
    EXPECT_FALSE(ev.has_value());
    st = next;
  }
  EXPECT_EQ(st.phase(), AggregatorPhase::kIdle);
}

TEST(Aggregator, SawtoothNeverFires) {
  AggregationSpec s = Spec(0.8, 0.2, 2);
  AggregatorState st;
  int fired = 0;
  for (int w = 0; w < 100; ++w) {
    auto [ev, next] = StepValue(s, w % 2 ? 0.9 : 0.1, w, st);
    fired += ev.has_value();
    st = next;
  }
  EXPECT_EQ(fired, 0);
}

TEST(Aggregator, CombineRules) {
  AggregationSpec s = Spec(1, 0, 1);
  std::vector<RateEstimate> es = {Risk("a", 0.2), Risk("b", 0.6)};
  s.combine = Combine::kMean;
  EXPECT_DOUBLE_EQ(CombineEstimates(s, es), 0.4);
  s.combine = Combine::kWeightedSum;
  s.inputs = {"a", "b"};
  s.weights = {2.0, 0.5};
  EXPECT_DOUBLE_EQ(CombineEstimates(s, es), 0.7);
  s.inputs = {"b"};
  s.weights = {1.0};
  EXPECT_DOUBLE_EQ(CombineEstimates(s, es), 0.6);
  EXPECT_THROW(CheckSpec(Spec(0.1, 0.5, 1)), std::invalid_argument);
}

TEST(Aggregator, ProjectedLoad) {
  AggregationSpec s = Spec(1, 0, 1);
  s.capacity = 100;
  s.load_scale = 2.0;
  RateEstimate e;
  e.mean = 40;
  e.variance = 25;
  s.metric = Metric::kUtilization;
  EXPECT_DOUBLE_EQ(CombineEstimates(s, {e}), 0.8);
  s.metric = Metric::kRisk;
  EXPECT_DOUBLE_EQ(CombineEstimates(s, {e}), GaussianTailRisk(80, 100, 100));
}

TEST(AggregatorProperty, HysteresisSafety) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  AggregationSpec s = Spec(0.7, 0.3, 2);
  AggregatorState st;
  bool seen_high = false, low_since = true;
  int highs = 0;
  for (int w = 0; w < 5000; ++w) {
    double v = u(rng);
    if (v < s.threshold_low) low_since = true;
    auto [ev, next] = StepValue(s, v, w, st);
    st = next;
    if (ev && ev->kind == TriggerKind::kHigh) {
      if (seen_high) EXPECT_TRUE(low_since) << "window " << w;
      seen_high = true;
      low_since = false;
      ++highs;
    }
  }
  EXPECT_GT(highs, 10);
}

// --- Broker -----------------------------------------------------------------

BrokerTree ThreeLevels() {
  BrokerTree t;
  t.AddBroker("root", "");
  t.AddBroker("r1", "root");
  t.AddBroker("r2", "root");
  t.AddBroker("l1", "r1");
  t.AddBroker("l2", "r1");
  t.AddBroker("l3", "r2");
  return t;
}

Envelope Pub(const std::string& sender, const std::string& topic, Scope scope) {
  Envelope e;
  e.tenant = "A";
  e.sender = sender;
  e.topic = topic;
  e.scope = scope;
  return e;
}

TEST(Broker, SameLeafStaysLocal) {
  BrokerTree t = ThreeLevels();
  t.Register("pub", "A", "l1");
  t.Register("sub", "A", "l1");
  t.Subscribe("sub", "mf.rate.*");
  auto out = t.Route(Pub("pub", "mf.rate.fw1", Scope::kNode));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].envelope.hop_trace, (std::vector<std::string>{"l1"}));
  EXPECT_EQ(ParentLinkTraversals(out[0].envelope), 0);
}

TEST(Broker, CrossRegionPassesRootOnce) {
  BrokerTree t = ThreeLevels();
  t.Register("pub", "A", "l1");
  t.Register("sub", "A", "l3");
  t.Subscribe("sub", "alarm.A.x");
  auto out = t.Route(Pub("pub", "alarm.A.x", Scope::kGlobal));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].envelope.hop_trace,
            (std::vector<std::string>{"l1", "r1", "root", "r2", "l3"}));
  // Same region: the regional broker is the turning point.
  t.Register("near", "A", "l2");
  EXPECT_EQ(t.Path("l1", "l2"), (std::vector<std::string>{"l1", "r1", "l2"}));
}

TEST(Broker, ScopeBoundsDelivery) {
  BrokerTree t = ThreeLevels();
  t.Register("pub", "A", "l1");
  for (auto [c, b] : {std::pair{"s1", "l1"}, {"s2", "l2"}, {"s3", "l3"}}) {
    t.Register(c, "A", b);
    t.Subscribe(c, "x.y");
  }
  EXPECT_EQ(t.Route(Pub("pub", "x.y", Scope::kNode)).size(), 1u);
  EXPECT_EQ(t.Route(Pub("pub", "x.y", Scope::kRegion)).size(), 2u);
  EXPECT_EQ(t.Route(Pub("pub", "x.y", Scope::kGlobal)).size(), 3u);
}

TEST(Broker, TenantsAreIsolated) {
  BrokerTree t = ThreeLevels();
  t.Register("a", "A", "l1");
  t.Register("b", "B", "l1");
  t.Subscribe("b", "mf.rate.fw1");
  EXPECT_TRUE(t.Route(Pub("a", "mf.rate.fw1", Scope::kGlobal)).empty());
}

TEST(Broker, NotifyAndDeadLetters) {
  BrokerTree t = ThreeLevels();
  t.Register("a", "A", "l1");
  t.Register("b", "A", "l3");
  Envelope e = Pub("a", "alarm.A.1", Scope::kGlobal);
  e.kind = EnvelopeKind::kNotify;
  e.target = "b";
  auto out = t.Route(e);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].client, "b");
  EXPECT_EQ(out[0].envelope.hop_trace.size(), 5u);
  e.target = "ghost";
  EXPECT_TRUE(t.Route(e).empty());
  EXPECT_EQ(t.dead_letters(), 1);
  EXPECT_THROW(t.Route(Pub("ghost", "x", Scope::kNode)), UnknownClient);
}

TEST(BrokerProperty, EachMatchingSubscriberGetsOneCopy) {
  std::mt19937_64 rng(5);
  BrokerTree t = ThreeLevels();
  const std::vector<std::string> leaves = {"l1", "l2", "l3"};
  const std::vector<std::string> topics = {"mf.rate.a", "mf.rate.b",
                                           "trigger.fw.scale"};
  struct Sub {
    std::string tenant;
    std::set<std::string> topics;
  };
  std::map<std::string, Sub> subs;
  for (int i = 0; i < 30; ++i) {
    std::string c = "c" + std::to_string(i);
    Sub s{i % 3 ? "A" : "B", {topics[rng() % 3]}};
    if (rng() % 2) s.topics.insert("mf.rate.*");
    t.Register(c, s.tenant, leaves[rng() % 3]);
    for (const auto& f : s.topics) t.Subscribe(c, f);
    subs[c] = s;
  }
  for (int k = 0; k < 500; ++k) {
    std::string sender = "c" + std::to_string(rng() % 30);
    Envelope e = Pub(sender, topics[rng() % 3], Scope::kGlobal);
    e.tenant = subs[sender].tenant;
    std::set<std::string> want;
    for (const auto& [c, s] : subs) {
      if (s.tenant != e.tenant) continue;
      bool hit =
          s.topics.count(e.topic) > 0 || (s.topics.count("mf.rate.*") > 0 &&
                                          e.topic.rfind("mf.rate.", 0) == 0);
      if (hit) want.insert(c);
    }
    std::set<std::string> got;
    for (const auto& d : t.Route(e)) {
      EXPECT_TRUE(got.insert(d.client).second) << "duplicate copy";
      EXPECT_EQ(d.envelope.hop_trace.front(), t.BrokerOf(sender));
      EXPECT_EQ(d.envelope.hop_trace.back(), t.BrokerOf(d.client));
    }
    EXPECT_EQ(got, want);
  }
}

// --- Monitors ---------------------------------------------------------------

TEST(Monitor, TwoPortMonitorsPerFirewall) {
  Nffg g = vcpe::Make(5, vcpe::PermitAcl());
  MonitorRegistry reg(100);
  MonitorHandle h = reg.Deploy(g, "fw5");
  EXPECT_EQ(h.links, (std::vector<std::string>{"fw5:in", "fw5:out"}));
  EXPECT_EQ(h.topic, "mf.rate.fw5");
  EXPECT_EQ(reg.ActiveRateMons(), 2);
  EXPECT_EQ(reg.Deploy(g, "fw5"), h);
  EXPECT_EQ(reg.ActiveRateMons(), 2);
  EXPECT_TRUE(reg.Retire("fw5"));
  EXPECT_EQ(reg.ActiveRateMons(), 0);
  EXPECT_EQ(reg.Find("fw5"), nullptr);
  EXPECT_THROW(reg.Deploy(g, "fw9"), UnknownNode);
}

}  // namespace
}  // namespace spdevops
