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

#ifndef SPDEVOPS_SCENARIO_H_
#define SPDEVOPS_SCENARIO_H_

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spdevops/aggregator.h"
#include "spdevops/broker.h"
#include "spdevops/chains.h"
#include "spdevops/monitor.h"
#include "spdevops/nffg.h"
#include "spdevops/verifier.h"

namespace spdevops {

// Offered load into the firewall group, in Mbit/s at time t seconds:
// base_rate + ramp * min(t, ramp_until). Every monitored port sees its
// instance's share plus N(0, noise_sd) per sample.
struct TrafficModel {
  double base_rate = 20.0;
  double ramp = 0.0;
  double noise_sd = 5.0;
  double ramp_until = 1e300;
  // Split of the offered load by application; OTHER takes the rest.
  double mail_share = 0.2;
  double web_share = 0.4;
};

struct ScenarioConfig {
  uint64_t seed = 1;
  double duration = 60.0;  // simulated seconds
  int initial_firewalls = 1;
  int max_firewalls = 20;
  TrafficModel traffic;
  double capacity = 100.0;  // per port, Mbit/s
  double scale_out_risk = 0.05;
  double scale_in_risk = 0.01;  // 0 disables scale-in
  int sustain = 3;              // windows

  // Fault injection, used to build troubleshooting fixtures.
  bool control_app_stalled = false;
  // Share of the load the first firewall receives; 0 means an ideal
  // balancer.
  double imbalance = 0.0;

  // A second tenant publishing on the same topic names.
  bool second_tenant = true;
  // Firewall ACL of the built-in vCPE graph: "permit" or "deny".
  std::string acl = "permit";
  // Optional graph and policy files; the built-in vCPE is used otherwise.
  std::string nffg_path;
  std::string policies_path;
};

// Throws std::invalid_argument when the config breaks its invariants.
void CheckConfig(const ScenarioConfig& cfg);

// Key-value text, one `key = value` per line, `#` comments, and
// `[traffic]` / `[options]` sections. Throws ParseError with the line.
ScenarioConfig ParseScenarioConfig(const std::string& text);
ScenarioConfig LoadScenarioConfig(const std::string& path);
std::string ScenarioConfigToText(const ScenarioConfig& cfg);

constexpr Tick TicksFor(double seconds) {
  return static_cast<Tick>(seconds * kTicksPerSecond + 0.5);
}

// --- Ledger and series -----------------------------------------------------

struct LedgerEvent {
  Tick tick = 0;
  std::string kind;
  std::string detail;
};

struct EventLedger {
  int64_t raw_samples = 0;
  int64_t estimates = 0;
  int64_t local_triggers = 0;
  // Orchestrator invocations requested by the control app. The initial
  // deployment check is counted only in verification_runs.
  int64_t central_events = 0;
  int64_t scale_ops = 0;
  int64_t verification_runs = 0;
  int64_t rejected_updates = 0;
  int64_t saturations = 0;

  // Broker accounting.
  int64_t envelopes = 0;
  int64_t deliveries = 0;
  int64_t local_envelopes = 0;
  int64_t local_parent_hops = 0;  // must stay 0
  int64_t cross_region_envelopes = 0;
  int64_t lca_violations = 0;           // must stay 0
  int64_t cross_tenant_deliveries = 0;  // must stay 0

  std::vector<LedgerEvent> events;

  // Counters in report order.
  std::vector<std::pair<std::string, int64_t>> Counters() const;
};

struct SeriesPoint {
  Tick tick = 0;  // last tick of the window
  int instances = 0;
  int active_monitors = 0;
  double offered = 0.0;
  double max_risk = 0.0;
};

struct LinkRisk {
  Tick tick = 0;
  int instances = 0;
  std::string link;
  double risk = 0.0;
};

struct TimeSeries {
  std::vector<SeriesPoint> points;
  std::vector<LinkRisk> links;
};

// --- Control app and orchestrator ------------------------------------------

enum class ScaleKind : uint8_t { kScaleOut, kScaleIn };

std::string_view ScaleKindName(ScaleKind k);

struct ScaleDecision {
  ScaleKind kind = ScaleKind::kScaleOut;
  int target = 0;  // instance count after the operation
  // Source-address bucket of each backend under the new count.
  std::vector<IntervalSet> buckets;
};

// src_ip buckets of a modulo balancer with `n` backends.
std::vector<IntervalSet> BalancerBuckets(int n);

std::optional<ScaleDecision> ControlAppDecide(const TriggerEvent& trigger,
                                              int current,
                                              const ScenarioConfig& cfg);

// The load balancer whose backends are firewalls, or null.
const VnfInstance* FirewallBalancer(const Nffg& g);
std::vector<std::string> FirewallGroup(const Nffg& g);

// Adds a firewall cloned from the first backend, or removes the last one.
GraphUpdate ScaleOutUpdate(const Nffg& g);
GraphUpdate ScaleInUpdate(const Nffg& g);

class DeploymentRejected : public Error {
 public:
  DeploymentRejected(const std::string& what, std::vector<Verdict> failing)
      : Error(what), failing_(std::move(failing)) {}
  const std::vector<Verdict>& failing() const { return failing_; }

 private:
  std::vector<Verdict> failing_;
};

// --- Simulation ------------------------------------------------------------

// The elastic firewall closed loop, one tick (10 ms) at a time. Copies are
// independent simulations.
class Scenario {
 public:
  // Validates and verifies g0 (throws DeploymentRejected), then deploys a
  // monitor on every firewall.
  Scenario(ScenarioConfig cfg, Nffg g0, std::vector<Policy> policies);

  void Step();
  void Advance(Tick ticks);
  void RunToEnd();
  bool Done() const { return tick_ >= end_tick_; }

  // Adds `mbps` of `app` traffic for `seconds` starting now.
  void Inject(AppClass app, double mbps, double seconds);

  Tick tick() const { return tick_; }
  const ScenarioConfig& config() const { return cfg_; }
  const Nffg& graph() const { return g_; }
  const std::vector<Policy>& policies() const { return policies_; }
  const EventLedger& ledger() const { return ledger_; }
  const TimeSeries& series() const { return series_; }
  const BrokerTree& broker() const { return broker_; }
  const MonitorRegistry& monitors() const { return monitors_; }
  int Instances() const;
  // Instance count at the end of each completed window.
  const std::vector<int>& instance_history() const { return history_; }
  // Verdicts of every passing verification, in order.
  const std::vector<std::vector<Verdict>>& verdict_log() const {
    return verdict_log_;
  }

  // Offered load by application at the current tick.
  double OfferedLoad(AppClass app) const;
  double OfferedLoad() const;
  // Fraction of the group load each firewall receives, in group order.
  std::vector<double> Shares() const;
  // Synthetic CPU percentage per firewall: share x offered / capacity.
  std::vector<double> CpuLoads() const;
  // Mean utilization of `link` over the last `windows` windows.
  double LinkLoad(const Link& link, int windows) const;
  std::optional<RateEstimate> LatestEstimate(const std::string& link) const;

 private:
  struct Injection {
    AppClass app;
    double mbps;
    Tick until;
  };

  void SetupBroker();
  void PlaceFirewall(const std::string& fw);
  void Join(const std::string& client, const std::string& tenant,
            const std::string& broker);
  std::vector<Delivery> Publish(const Envelope& env);
  void EndWindow(const std::vector<RateEstimate>& estimates);
  void HandleTrigger(const TriggerEvent& ev, const std::string& leaf,
                     bool scale_in_spec);
  void Orchestrate(const ScaleDecision& d);
  void ResetAggregators();
  void RecordLinkLoads();
  void Log(const std::string& kind, const std::string& detail);
  double LinkModelLoad(const Link& link) const;

  ScenarioConfig cfg_;
  Nffg g_;
  std::vector<Policy> policies_;
  Tick tick_ = 0;
  Tick end_tick_ = 0;
  std::mt19937_64 rng_;
  std::mt19937_64 link_rng_;
  std::vector<Injection> injections_;

  EventLedger ledger_;
  TimeSeries series_;
  std::vector<int> history_;
  std::vector<std::vector<Verdict>> verdict_log_;

  MonitorRegistry monitors_;
  BrokerTree broker_;
  std::vector<std::string> leaves_;
  std::vector<Chain> chains_;                         // of g_, for link loads
  std::map<std::string, std::string> tenant_of_;      // client -> tenant
  std::map<std::string, std::string> leaf_of_;        // firewall -> leaf broker
  std::map<std::string, AggregatorState> out_state_;  // per leaf
  std::map<std::string, AggregatorState> in_state_;
  std::map<std::string, bool> low_latched_;
  std::map<std::string, RateEstimate> latest_;
  // Per link ("a:p->b:q"), measured utilization of each window.
  std::map<std::string, std::vector<double>> link_history_;
};

struct RunResult {
  EventLedger ledger;
  TimeSeries series;
  Nffg final_graph;
};

RunResult RunScenario(const ScenarioConfig& cfg, const Nffg& g0,
                      const std::vector<Policy>& policies);

// The graph and policies a config describes: the files it names, or the
// built-in vCPE with cfg.initial_firewalls firewalls.
Nffg ScenarioGraph(const ScenarioConfig& cfg, const std::string& base_dir);
std::vector<Policy> ScenarioPolicies(const ScenarioConfig& cfg,
                                     const std::string& base_dir);

// A snapshot is reproduced by replaying the deterministic run to `tick`.
struct Snapshot {
  ScenarioConfig config;
  Nffg graph;
  std::vector<Policy> policies;
  Tick tick = 0;
};

Scenario Restore(const Snapshot& s);
std::string SnapshotToJson(const Snapshot& s);
Snapshot SnapshotFromJson(const std::string& text);
Snapshot LoadSnapshot(const std::string& path);

// --- Reports ---------------------------------------------------------------

// Writes timeseries.csv, ledger.csv, events.csv and scenario.dat into `dir`
// (created if needed) and returns the paths written.
std::vector<std::string> ExportReport(const EventLedger& ledger,
                                      const TimeSeries& series,
                                      const std::string& dir);

std::string TimeSeriesCsv(const TimeSeries& series);
std::string LedgerCsv(const EventLedger& ledger);
std::string EventsCsv(const EventLedger& ledger);
std::string GnuplotData(const TimeSeries& series);

}  // namespace spdevops

#endif  // SPDEVOPS_SCENARIO_H_
