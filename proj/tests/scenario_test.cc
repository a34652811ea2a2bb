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

#include <filesystem>

#include "spdevops/nffg_json.h"
#include "spdevops/scenario.h"
#include "spdevops/vcpe.h"

namespace spdevops {
namespace {

ScenarioConfig Flat() {
  ScenarioConfig c;
  c.initial_firewalls = 20;
  c.duration = 60;
  c.traffic.base_rate = 20;
  c.scale_in_risk = 0;  // hold the fleet
  return c;
}

ScenarioConfig Ramp(uint64_t seed) {
  ScenarioConfig c;
  c.seed = seed;
  c.duration = 90;
  c.traffic.base_rate = 20;
  c.traffic.ramp = 3;  // 200 Mbit/s, twice one port's capacity, at 60 s
  c.traffic.ramp_until = 60;
  return c;
}

Scenario Start(const ScenarioConfig& c) {
  return Scenario(c, vcpe::Make(c.initial_firewalls, vcpe::PermitAcl()),
                  vcpe::Policies());
}

int64_t CountEvents(const EventLedger& l, const std::string& kind,
                    const std::string& detail = "") {
  return std::count_if(l.events.begin(), l.events.end(), [&](const auto& e) {
    return e.kind == kind &&
           (detail.empty() || e.detail.find(detail) != std::string::npos);
  });
}

// --- Config ----------------------------------------------------------------

TEST(ScenarioConfig, ParsesSectionsAndComments) {
  ScenarioConfig c = ParseScenarioConfig(R"(# ramp run
seed = 7
duration = 30   # seconds
[traffic]
base_rate = 50
ramp = 2.5
[options]
acl = "deny"
second_tenant = false
)");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_DOUBLE_EQ(c.duration, 30);
  EXPECT_DOUBLE_EQ(c.traffic.base_rate, 50);
  EXPECT_DOUBLE_EQ(c.traffic.ramp, 2.5);
  EXPECT_EQ(c.acl, "deny");
  EXPECT_FALSE(c.second_tenant);
  EXPECT_EQ(c.max_firewalls, 20);
}

TEST(ScenarioConfig, TextRoundTrip) {
  ScenarioConfig c = Ramp(3);
  c.imbalance = 0.9;
  c.control_app_stalled = true;
  ScenarioConfig back = ParseScenarioConfig(ScenarioConfigToText(c));
  EXPECT_EQ(ScenarioConfigToText(back), ScenarioConfigToText(c));
  EXPECT_DOUBLE_EQ(back.traffic.ramp_until, 60);
  EXPECT_TRUE(back.control_app_stalled);
}

TEST(ScenarioConfig, Errors) {
  try {
    ParseScenarioConfig("seed = 1\nbogus = 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(ParseScenarioConfig("duration = fast"), ParseError);
  EXPECT_THROW(ParseScenarioConfig("scale_in_risk = 0.5\nscale_out_risk = 0.1"),
               ParseError);
  EXPECT_THROW(ParseScenarioConfig("initial_firewalls = 21"), ParseError);
}

// --- Control app and orchestrator ------------------------------------------

TEST(ControlApp, Bounds) {
  ScenarioConfig c;
  EXPECT_FALSE(ControlAppDecide({TriggerKind::kHigh}, 20, c).has_value());
  EXPECT_FALSE(ControlAppDecide({TriggerKind::kLow}, 1, c).has_value());
  auto in = ControlAppDecide({TriggerKind::kLow}, 5, c);
  ASSERT_TRUE(in.has_value());
  EXPECT_EQ(in->kind, ScaleKind::kScaleIn);
  EXPECT_EQ(in->target, 4);
}

TEST(ControlApp, ScaleOutRebalancesFullDomain) {
  auto d = ControlAppDecide({TriggerKind::kHigh}, 3, ScenarioConfig{});
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->kind, ScaleKind::kScaleOut);
  EXPECT_EQ(d->target, 4);
  ASSERT_EQ(d->buckets.size(), 4u);
  IntervalSet all;
  for (size_t i = 0; i < d->buckets.size(); ++i) {
    for (size_t j = i + 1; j < d->buckets.size(); ++j) {
      EXPECT_TRUE(d->buckets[i].Intersect(d->buckets[j]).empty());
    }
    all = all.Union(d->buckets[i]);
  }
  EXPECT_TRUE(all.IsFull());
}

TEST(Orchestrator, ScaleUpdatesPreservePolicies) {
  Nffg g = vcpe::Make(2, vcpe::PermitAcl());
  Nffg out = ApplyUpdate(g, ScaleOutUpdate(g));
  EXPECT_EQ(FirewallGroup(out),
            (std::vector<std::string>{"fw1", "fw2", "fw3"}));
  EXPECT_TRUE(Validate(out).empty());
  EXPECT_TRUE(VerifyPolicySet(out, vcpe::Policies()).AllHold());
  // The clone matches the factory-built graph of the same size.
  Nffg three = vcpe::Make(3, vcpe::PermitAcl());
  EXPECT_EQ(ExtractChains(out).size(), ExtractChains(three).size());

  Nffg back = ApplyUpdate(out, ScaleInUpdate(out));
  EXPECT_EQ(FirewallGroup(back), FirewallGroup(g));
  EXPECT_EQ(back.version, 2u);
  EXPECT_TRUE(VerifyPolicySet(back, vcpe::Policies()).AllHold());
  Nffg one = ApplyUpdate(back, ScaleInUpdate(back));
  EXPECT_THROW(ScaleInUpdate(one), std::logic_error);
}

// --- Runs ------------------------------------------------------------------

TEST(Scenario, FlatRunCounts) {
  RunResult r =
      RunScenario(Flat(), vcpe::Make(20, vcpe::PermitAcl()), vcpe::Policies());
  EXPECT_EQ(r.ledger.raw_samples, 240000);
  EXPECT_EQ(r.ledger.estimates, 2400);
  EXPECT_EQ(r.ledger.central_events, 0);
  EXPECT_EQ(r.ledger.scale_ops, 0);
  EXPECT_EQ(r.ledger.verification_runs, 1);
}

TEST(Scenario, RampScalesOutMonotonically) {
  Scenario s = Start(Ramp(1));
  s.RunToEnd();
  const auto& h = s.instance_history();
  ASSERT_EQ(h.size(), 90u);
  EXPECT_TRUE(std::is_sorted(h.begin(), h.end()));
  EXPECT_GT(h.back(), 1);
  // Plateau over the flat last 20 s.
  EXPECT_EQ(h[69], h.back());

  const EventLedger& l = s.ledger();
  EXPECT_EQ(l.central_events, l.scale_ops);
  EXPECT_GE(l.raw_samples / l.central_events, 10000);
  EXPECT_LE(l.central_events, l.scale_ops + l.verification_runs);
  // After the ramp the risk settles under the scale-out threshold.
  EXPECT_LT(s.series().points.back().max_risk, Ramp(1).scale_out_risk);
}

TEST(Scenario, EveryApplyFollowsPassingVerification) {
  Scenario s = Start(Ramp(2));
  s.RunToEnd();
  const auto& ev = s.ledger().events;
  int applies = 0;
  for (size_t i = 0; i < ev.size(); ++i) {
    if (ev[i].kind != "apply") continue;
    ++applies;
    ASSERT_GT(i, 0u);
    EXPECT_EQ(ev[i - 1].kind, "verify");
    EXPECT_EQ(ev[i - 1].detail, "candidate passed");
    EXPECT_EQ(ev[i - 1].tick, ev[i].tick);
  }
  EXPECT_EQ(applies, s.ledger().scale_ops);
  // Verdicts identical across every scale operation.
  const auto& log = s.verdict_log();
  ASSERT_EQ(log.size(), static_cast<size_t>(applies) + 1);
  for (const auto& vs : log) {
    ASSERT_EQ(vs.size(), log.front().size());
    for (size_t i = 0; i < vs.size(); ++i) {
      EXPECT_EQ(vs[i].policy_id, log.front()[i].policy_id);
      EXPECT_EQ(vs[i].holds, log.front()[i].holds);
    }
  }
}

TEST(Scenario, MonitorsTrackInstances) {
  ScenarioConfig c = Ramp(4);
  c.traffic.ramp_until = 40;
  c.traffic.ramp = 4;
  Scenario s = Start(c);
  s.RunToEnd();
  for (const auto& p : s.series().points) {
    EXPECT_EQ(p.active_monitors, 2 * p.instances) << "tick " << p.tick;
  }
  EXPECT_EQ(s.monitors().ActiveRateMons(), 2 * s.Instances());
}

TEST(Scenario, ScaleInFollowsFallingLoad) {
  ScenarioConfig c;
  c.initial_firewalls = 3;
  c.duration = 90;
  c.traffic.base_rate = 200;
  c.traffic.ramp = -3;
  c.traffic.ramp_until = 60;
  Scenario s = Start(c);
  s.RunToEnd();
  const auto& h = s.instance_history();
  EXPECT_TRUE(std::is_sorted(h.rbegin(), h.rend()));
  EXPECT_EQ(h.back(), 1);
  EXPECT_EQ(CountEvents(s.ledger(), "orchestrate", "SCALE_IN"), 2);
}

TEST(ScenarioProperty, NoFlappingAcrossSeeds) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    // Up, hold, then down again.
    ScenarioConfig c = Ramp(seed);
    c.duration = 60;
    Scenario s = Start(c);
    s.RunToEnd();
    EXPECT_EQ(CountEvents(s.ledger(), "orchestrate", "SCALE_IN"), 0)
        << "seed " << seed;
    const auto& h = s.instance_history();
    EXPECT_TRUE(std::is_sorted(h.begin(), h.end())) << "seed " << seed;

    // Opposite-direction operations are at least `sustain` windows apart.
    ScenarioConfig updown = c;
    updown.duration = 120;
    updown.traffic.ramp = 6;
    updown.traffic.ramp_until = 30;
    Scenario s2 = Start(updown);
    s2.Advance(TicksFor(60));
    s2.Inject(AppClass::kOther, -150, 60);
    s2.RunToEnd();
    EXPECT_GT(CountEvents(s2.ledger(), "orchestrate", "SCALE_IN"), 0);
    EXPECT_GT(CountEvents(s2.ledger(), "orchestrate", "SCALE_OUT"), 0);
    Tick last = -1;
    std::string last_kind;
    for (const auto& e : s2.ledger().events) {
      if (e.kind != "orchestrate") continue;
      std::string kind = e.detail.substr(0, e.detail.find(' '));
      if (!last_kind.empty() && kind != last_kind) {
        EXPECT_GE(e.tick - last, updown.sustain * kDefaultWindow)
            << "seed " << seed;
      }
      last = e.tick;
      last_kind = kind;
    }
  }
}

TEST(Scenario, InvalidAclRejectedBeforeAnyTick) {
  ScenarioConfig c;
  c.acl = "open";  // lets blocked hosts through
  try {
    Scenario s(c, ScenarioGraph(c, ""), ScenarioPolicies(c, ""));
    FAIL() << "deployment accepted";
  } catch (const DeploymentRejected& e) {
    ASSERT_EQ(e.failing().size(), 3u);
    for (const auto& v : e.failing()) {
      EXPECT_EQ(v.kind, PolicyKind::kIsolation);
      EXPECT_EQ(v.policy_id.rfind("isolate_", 0), 0u);
    }
  }
}

TEST(Scenario, BrokerLocalityAndTenancy) {
  Scenario s = Start(Ramp(5));
  s.RunToEnd();
  const EventLedger& l = s.ledger();
  EXPECT_GT(l.local_envelopes, 0);
  EXPECT_EQ(l.local_parent_hops, 0);
  EXPECT_GT(l.cross_region_envelopes, 0);
  EXPECT_EQ(l.lca_violations, 0);
  EXPECT_EQ(l.cross_tenant_deliveries, 0);
}

TEST(Scenario, InjectionRaisesLinkLoad) {
  ScenarioConfig c;
  c.initial_firewalls = 2;
  c.duration = 60;
  c.traffic.base_rate = 100;
  Scenario s = Start(c);
  s.Advance(TicksFor(10));
  Link cache_link{{vcpe::kCache, "out"}, {vcpe::kBalancer, "in"}};
  double before = s.LinkLoad(cache_link, 5);
  EXPECT_NEAR(before, 0.4, 0.02);
  s.Inject(AppClass::kWeb, 50, 5);
  s.Advance(TicksFor(5));
  EXPECT_NEAR(s.LinkLoad(cache_link, 5) - before, 50 / c.capacity, 0.02);
}

TEST(Scenario, CpuFollowsShares) {
  ScenarioConfig c;
  c.initial_firewalls = 2;
  c.traffic.base_rate = 100;
  c.imbalance = 0.9;
  Scenario s = Start(c);
  auto cpu = s.CpuLoads();
  ASSERT_EQ(cpu.size(), 2u);
  EXPECT_NEAR(cpu[0], 90, 1e-9);
  EXPECT_NEAR(cpu[1], 10, 1e-9);
}

// --- Reports and snapshots -------------------------------------------------

std::string Slurp(const std::string& p) { return ReadFile(p); }

TEST(Report, DeterministicGivenSeed) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "spdevops_report_test";
  fs::remove_all(dir);
  std::vector<std::string> a, b;
  for (const char* sub : {"a", "b"}) {
    RunResult r = RunScenario(Ramp(9), vcpe::Make(1, vcpe::PermitAcl()),
                              vcpe::Policies());
    auto files = ExportReport(r.ledger, r.series, (dir / sub).string());
    ASSERT_EQ(files.size(), 4u);
    (sub[0] == 'a' ? a : b) = files;
  }
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(Slurp(a[i]), Slurp(b[i]));

  RunResult other =
      RunScenario(Ramp(10), vcpe::Make(1, vcpe::PermitAcl()), vcpe::Policies());
  EXPECT_NE(TimeSeriesCsv(other.series), Slurp(a[0]));
  fs::remove_all(dir);
}

TEST(Report, ZeroDurationGivesHeadersOnly) {
  ScenarioConfig c = Ramp(1);
  c.duration = 0;
  RunResult r =
      RunScenario(c, vcpe::Make(1, vcpe::PermitAcl()), vcpe::Policies());
  EXPECT_EQ(TimeSeriesCsv(r.series), "tick,instances,link,risk\n");
  EXPECT_EQ(GnuplotData(r.series),
            "# tick seconds instances monitors offered_mbps max_risk\n");
}

TEST(Report, LedgerMatchesEventLog) {
  Scenario s = Start(Ramp(6));
  s.RunToEnd();
  const EventLedger& l = s.ledger();
  EXPECT_EQ(CountEvents(l, "orchestrate"), l.central_events);
  EXPECT_EQ(CountEvents(l, "apply"), l.scale_ops);
  EXPECT_EQ(CountEvents(l, "verify"), l.verification_runs);
  // Each window's samples come from the monitors active when it began,
  // i.e. those recorded at the end of the previous window.
  int64_t samples = 0, estimates = 0;
  int prev = 2 * Ramp(6).initial_firewalls;
  for (const auto& p : s.series().points) {
    samples += int64_t{prev} * kDefaultWindow;
    estimates += prev;
    prev = p.active_monitors;
  }
  EXPECT_EQ(samples, l.raw_samples);
  EXPECT_EQ(estimates, l.estimates);
  std::string csv = LedgerCsv(l);
  EXPECT_NE(csv.find("scale_ops," + std::to_string(l.scale_ops) + "\n"),
            std::string::npos);
}

TEST(Snapshot, ReplayReproducesState) {
  ScenarioConfig c = Ramp(8);
  Snapshot snap{c, vcpe::Make(1, vcpe::PermitAcl()), vcpe::Policies(),
                TicksFor(45)};
  Snapshot back = SnapshotFromJson(SnapshotToJson(snap));
  EXPECT_EQ(back.tick, snap.tick);
  EXPECT_EQ(back.graph, snap.graph);
  Scenario a = Restore(back);
  Scenario b = Start(c);
  b.Advance(TicksFor(45));
  EXPECT_EQ(a.tick(), b.tick());
  EXPECT_EQ(a.graph(), b.graph());
  EXPECT_EQ(LedgerCsv(a.ledger()), LedgerCsv(b.ledger()));
  EXPECT_THROW(SnapshotFromJson("{"), ParseError);
}

}  // namespace
}  // namespace spdevops
