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

#include "spdevops/scenario.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace spdevops {

using nlohmann::json;

namespace {

constexpr char kTenant[] = "A";
constexpr char kOtherTenant[] = "B";
constexpr char kControlApp[] = "ctl";
constexpr char kSlaLogger[] = "sla";
constexpr char kScaleOutTopic[] = "trigger.fw.out";
constexpr char kScaleInTopic[] = "trigger.fw.in";

std::string LinkKey(const Link& l) {
  return l.from.node + ":" + l.from.port + "->" + l.to.node + ":" + l.to.port;
}

std::string OpClient(const std::string& fw) { return "op." + fw; }
std::string ApClient(const std::string& leaf) { return "ap." + leaf; }

std::string Num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

json TriggerToJson(const TriggerEvent& e) {
  return {{"kind", std::string(TriggerKindName(e.kind))},
          {"value", e.value},
          {"tick", e.tick},
          {"topic", e.topic}};
}

TriggerEvent TriggerFromJson(const json& j) {
  TriggerEvent e;
  e.kind = j.at("kind") == "HIGH" ? TriggerKind::kHigh : TriggerKind::kLow;
  e.value = j.at("value");
  e.tick = j.at("tick");
  e.topic = j.at("topic");
  return e;
}

}  // namespace

void CheckConfig(const ScenarioConfig& cfg) {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (cfg.duration < 0) fail("duration must be >= 0");
  if (cfg.initial_firewalls < 1 || cfg.initial_firewalls > cfg.max_firewalls) {
    fail("need 1 <= initial_firewalls <= max_firewalls");
  }
  if (cfg.capacity <= 0) fail("capacity must be positive");
  if (!(cfg.scale_in_risk < cfg.scale_out_risk)) {
    fail("scale_in_risk must be below scale_out_risk");
  }
  if (cfg.sustain < 1) fail("sustain must be >= 1");
  if (cfg.traffic.noise_sd < 0) fail("noise_sd must be >= 0");
  const TrafficModel& t = cfg.traffic;
  if (t.mail_share < 0 || t.web_share < 0 || t.mail_share + t.web_share > 1) {
    fail("application shares must lie in [0, 1] and sum to at most 1");
  }
  if (cfg.imbalance < 0 || cfg.imbalance > 1) {
    fail("imbalance must lie in [0, 1]");
  }
  if (cfg.acl != "permit" && cfg.acl != "deny" && cfg.acl != "open") {
    fail("acl must be permit, deny or open");
  }
}

std::vector<std::pair<std::string, int64_t>> EventLedger::Counters() const {
  return {{"raw_samples", raw_samples},
          {"estimates", estimates},
          {"local_triggers", local_triggers},
          {"central_events", central_events},
          {"scale_ops", scale_ops},
          {"verification_runs", verification_runs},
          {"rejected_updates", rejected_updates},
          {"saturations", saturations},
          {"envelopes", envelopes},
          {"deliveries", deliveries},
          {"local_envelopes", local_envelopes},
          {"local_parent_hops", local_parent_hops},
          {"cross_region_envelopes", cross_region_envelopes},
          {"lca_violations", lca_violations},
          {"cross_tenant_deliveries", cross_tenant_deliveries}};
}

// --- Control app and orchestrator ------------------------------------------

std::string_view ScaleKindName(ScaleKind k) {
  return k == ScaleKind::kScaleOut ? "SCALE_OUT" : "SCALE_IN";
}

std::vector<IntervalSet> BalancerBuckets(int n) {
  std::vector<IntervalSet> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(IntervalSet::Residue(IntervalSet::Full(), n, i));
  }
  return out;
}

std::optional<ScaleDecision> ControlAppDecide(const TriggerEvent& trigger,
                                              int current,
                                              const ScenarioConfig& cfg) {
  ScaleDecision d;
  if (trigger.kind == TriggerKind::kHigh && current < cfg.max_firewalls) {
    d.kind = ScaleKind::kScaleOut;
    d.target = current + 1;
  } else if (trigger.kind == TriggerKind::kLow && current > 1) {
    d.kind = ScaleKind::kScaleIn;
    d.target = current - 1;
  } else {
    return std::nullopt;
  }
  d.buckets = BalancerBuckets(d.target);
  return d;
}

const VnfInstance* FirewallBalancer(const Nffg& g) {
  for (const auto& n : g.nodes) {
    const auto* lb = std::get_if<LoadBalancerConfig>(&n.config);
    if (lb == nullptr || lb->backends.empty()) continue;
    bool all_fw = std::all_of(
        lb->backends.begin(), lb->backends.end(), [&](const std::string& b) {
          const VnfInstance* fw = g.FindNode(b);
          return fw != nullptr && fw->kind() == VnfKind::kAclFw;
        });
    if (all_fw) return &n;
  }
  return nullptr;
}

std::vector<std::string> FirewallGroup(const Nffg& g) {
  const VnfInstance* lb = FirewallBalancer(g);
  if (lb == nullptr) return {};
  return std::get<LoadBalancerConfig>(lb->config).backends;
}

GraphUpdate ScaleOutUpdate(const Nffg& g) {
  const VnfInstance* lb = FirewallBalancer(g);
  if (lb == nullptr) throw UnknownNode("graph has no firewall group");
  LoadBalancerConfig cfg = std::get<LoadBalancerConfig>(lb->config);
  const VnfInstance& tmpl = *g.FindNode(cfg.backends.front());

  // Name: the template's id with its numeric suffix bumped past every
  // existing node.
  std::string prefix = tmpl.id;
  while (!prefix.empty() && std::isdigit(prefix.back())) prefix.pop_back();
  int k = 1;
  std::string id;
  do {
    id = prefix + std::to_string(k++);
  } while (g.FindNode(id) != nullptr);

  VnfInstance fw = tmpl;
  fw.id = id;
  std::string in_port;
  for (const auto& l : g.links) {
    if (l.from.node == lb->id && l.to.node == tmpl.id) in_port = l.to.port;
  }
  std::string lb_port = "to_" + id;
  cfg.backends.push_back(id);
  std::vector<std::string> lb_ports = lb->ports;
  lb_ports.push_back(lb_port);

  GraphUpdate u;
  u.steps.push_back(AddNode{fw});
  u.steps.push_back(SetConfig{lb->id, cfg, lb_ports});
  u.steps.push_back(AddLink{Link{{lb->id, lb_port}, {id, in_port}}});
  for (const auto& l : g.links) {
    if (l.from.node == tmpl.id) {
      u.steps.push_back(AddLink{Link{{id, l.from.port}, l.to}});
    }
  }
  std::vector<ForwardingRule> rules;
  for (const ForwardingRule* r : g.RulesAt(tmpl.id)) {
    rules.push_back(*r);
    rules.back().node = id;
  }
  u.steps.push_back(SetRules{id, rules});
  return u;
}

GraphUpdate ScaleInUpdate(const Nffg& g) {
  const VnfInstance* lb = FirewallBalancer(g);
  if (lb == nullptr) throw UnknownNode("graph has no firewall group");
  LoadBalancerConfig cfg = std::get<LoadBalancerConfig>(lb->config);
  if (cfg.backends.size() < 2) {
    throw std::logic_error("cannot remove the last firewall");
  }
  const std::string victim = cfg.backends.back();
  const std::string lb_port = g.PortToward(lb->id, victim);
  cfg.backends.pop_back();
  std::vector<std::string> lb_ports;
  for (const auto& p : lb->ports) {
    if (p != lb_port) lb_ports.push_back(p);
  }

  GraphUpdate u;
  for (const auto& l : g.links) {
    if (l.from.node == victim || l.to.node == victim) {
      u.steps.push_back(RemoveLink{l});
    }
  }
  u.steps.push_back(SetConfig{lb->id, cfg, lb_ports});
  u.steps.push_back(RemoveNode{victim});
  return u;
}

// --- Simulation ------------------------------------------------------------

Scenario::Scenario(ScenarioConfig cfg, Nffg g0, std::vector<Policy> policies)
    : cfg_(std::move(cfg)),
      g_(std::move(g0)),
      policies_(std::move(policies)),
      rng_(cfg_.seed),
      link_rng_(cfg_.seed ^ 0x9e3779b97f4a7c15ULL),
      monitors_(cfg_.capacity) {
  CheckConfig(cfg_);
  end_tick_ = TicksFor(cfg_.duration);

  auto violations = Validate(g_);
  if (!violations.empty()) {
    throw DeploymentRejected("invalid graph: " + ToString(violations.front()),
                             {});
  }
  if (FirewallGroup(g_).empty()) {
    throw DeploymentRejected("graph has no load-balanced firewall group", {});
  }
  ++ledger_.verification_runs;
  BatchResult r = VerifyPolicySet(g_, policies_);
  if (!r.AllHold()) {
    std::vector<Verdict> failing;
    for (const auto& v : r.verdicts) {
      if (!v.holds) failing.push_back(v);
    }
    std::string what = "policy " + failing.front().policy_id +
                       " does not hold on the initial graph";
    throw DeploymentRejected(what, std::move(failing));
  }
  verdict_log_.push_back(r.verdicts);
  Log("verify", "initial deployment passed");

  chains_ = ExtractChains(g_);
  SetupBroker();
  for (const auto& fw : FirewallGroup(g_)) PlaceFirewall(fw);
}

void Scenario::SetupBroker() {
  broker_.AddBroker("root", "");
  broker_.AddBroker("r0", "root");
  broker_.AddBroker("r1", "root");
  leaves_ = {"n0", "n1", "n2", "n3"};
  for (size_t i = 0; i < leaves_.size(); ++i) {
    broker_.AddBroker(leaves_[i], i < 2 ? "r0" : "r1");
    Join(ApClient(leaves_[i]), kTenant, leaves_[i]);
    broker_.Subscribe(ApClient(leaves_[i]), "mf.rate.*");
  }
  Join(kControlApp, kTenant, "n0");
  Join(kSlaLogger, kTenant, "n3");
  broker_.Subscribe(kSlaLogger, "ctl.*");
  broker_.Subscribe(kSlaLogger, "alarm.A.*");
  if (cfg_.second_tenant) {
    // Same topic names, different tenant: must never cross over.
    Join("B.op", kOtherTenant, "n0");
    Join("B.ap", kOtherTenant, "n0");
    Join("B.far", kOtherTenant, "n2");
    broker_.Subscribe("B.ap", "mf.rate.*");
    broker_.Subscribe("B.far", "mf.rate.*");
  }
}

void Scenario::Join(const std::string& client, const std::string& tenant,
                    const std::string& broker) {
  broker_.Register(client, tenant, broker);
  tenant_of_[client] = tenant;
}

void Scenario::PlaceFirewall(const std::string& fw) {
  monitors_.Deploy(g_, fw);
  // Round-robin by group position keeps placement independent of history.
  auto group = FirewallGroup(g_);
  size_t pos = std::find(group.begin(), group.end(), fw) - group.begin();
  const std::string& leaf = leaves_[pos % leaves_.size()];
  leaf_of_[fw] = leaf;
  Join(OpClient(fw), kTenant, leaf);
}

void Scenario::Log(const std::string& kind, const std::string& detail) {
  ledger_.events.push_back({tick_, kind, detail});
}

int Scenario::Instances() const {
  return static_cast<int>(FirewallGroup(g_).size());
}

double Scenario::OfferedLoad(AppClass app) const {
  const TrafficModel& t = cfg_.traffic;
  double seconds = static_cast<double>(tick_) / kTicksPerSecond;
  double base = t.base_rate + t.ramp * std::min(seconds, t.ramp_until);
  double share = app == AppClass::kEmail ? t.mail_share
                 : app == AppClass::kWeb ? t.web_share
                                         : 1.0 - t.mail_share - t.web_share;
  double load = base * share;
  for (const auto& inj : injections_) {
    if (inj.app == app && inj.until > tick_) load += inj.mbps;
  }
  return load;
}

double Scenario::OfferedLoad() const {
  return OfferedLoad(AppClass::kEmail) + OfferedLoad(AppClass::kWeb) +
         OfferedLoad(AppClass::kOther);
}

std::vector<double> Scenario::Shares() const {
  const int n = Instances();
  if (n == 1) return {1.0};
  if (cfg_.imbalance <= 0) return std::vector<double>(n, 1.0 / n);
  std::vector<double> out(n, (1.0 - cfg_.imbalance) / (n - 1));
  out[0] = cfg_.imbalance;
  return out;
}

std::vector<double> Scenario::CpuLoads() const {
  std::vector<double> out;
  const double total = OfferedLoad();
  for (double s : Shares()) {
    out.push_back(std::min(100.0, 100.0 * s * total / cfg_.capacity));
  }
  return out;
}

void Scenario::Inject(AppClass app, double mbps, double seconds) {
  injections_.push_back({app, mbps, tick_ + TicksFor(seconds)});
  Log("inject", Num(mbps) + " Mbit/s for " + Num(seconds) + " s");
}

double Scenario::LinkModelLoad(const Link& link) const {
  // Each chain carries its applications' load, times the balancer share of
  // the firewall it passes.
  const auto group = FirewallGroup(g_);
  const auto shares = Shares();
  double load = 0.0;
  for (const Chain& c : chains_) {
    bool uses = false;
    for (size_t i = 0; i + 1 < c.nodes.size(); ++i) {
      if (c.nodes[i] == link.from.node && c.nodes[i + 1] == link.to.node) {
        uses = true;
      }
    }
    if (!uses) continue;
    uint8_t apps = 0;
    for (const auto& k : c.traffic.classes()) apps |= k.app_mask();
    double rate = 0.0;
    for (AppClass a : {AppClass::kEmail, AppClass::kWeb, AppClass::kOther}) {
      if (apps >> static_cast<int>(a) & 1) rate += OfferedLoad(a);
    }
    for (size_t i = 0; i < group.size(); ++i) {
      if (std::find(c.nodes.begin(), c.nodes.end(), group[i]) !=
          c.nodes.end()) {
        rate *= shares[i];
      }
    }
    load += rate;
  }
  return load;
}

void Scenario::RecordLinkLoads() {
  const double sd = cfg_.traffic.noise_sd / std::sqrt(kDefaultWindow);
  std::normal_distribution<double> noise(0.0, sd);
  for (const auto& l : g_.links) {
    double mbps = LinkModelLoad(l) + (sd > 0 ? noise(link_rng_) : 0.0);
    link_history_[LinkKey(l)].push_back(std::max(0.0, mbps) / cfg_.capacity);
  }
}

double Scenario::LinkLoad(const Link& link, int windows) const {
  auto it = link_history_.find(LinkKey(link));
  if (it == link_history_.end() || it->second.empty()) {
    return LinkModelLoad(link) / cfg_.capacity;
  }
  const auto& h = it->second;
  size_t k = std::clamp<size_t>(windows, 1, h.size());
  double sum = 0.0;
  for (size_t i = h.size() - k; i < h.size(); ++i) sum += h[i];
  return sum / k;
}

std::optional<RateEstimate> Scenario::LatestEstimate(
    const std::string& link) const {
  auto it = latest_.find(link);
  if (it == latest_.end()) return std::nullopt;
  return it->second;
}

void Scenario::Step() {
  const auto group = FirewallGroup(g_);
  const auto shares = Shares();
  const double total = OfferedLoad();
  std::normal_distribution<double> noise(0.0, cfg_.traffic.noise_sd);
  std::vector<RateEstimate> estimates;
  for (size_t i = 0; i < group.size(); ++i) {
    const MonitorHandle* h = monitors_.Find(group[i]);
    if (h == nullptr) continue;
    for (const auto& link : h->links) {
      double x = total * shares[i];
      if (cfg_.traffic.noise_sd > 0) x += noise(rng_);
      ++ledger_.raw_samples;
      if (auto e = monitors_.MonFor(link)->Push(tick_, std::max(0.0, x))) {
        estimates.push_back(std::move(*e));
      }
    }
  }
  if ((tick_ + 1) % kDefaultWindow == 0) EndWindow(estimates);
  ++tick_;
}

void Scenario::Advance(Tick ticks) {
  for (Tick i = 0; i < ticks; ++i) Step();
}

void Scenario::RunToEnd() {
  while (!Done()) Step();
}

std::vector<Delivery> Scenario::Publish(const Envelope& env) {
  auto deliveries = broker_.Route(env);
  ++ledger_.envelopes;
  ledger_.deliveries += static_cast<int64_t>(deliveries.size());
  const std::string& from = broker_.BrokerOf(env.sender);
  bool all_local = !deliveries.empty();
  bool cross_region = false;
  for (const auto& d : deliveries) {
    const std::string& to = broker_.BrokerOf(d.client);
    if (to != from) all_local = false;
    const auto& trace = d.envelope.hop_trace;
    std::string lca = broker_.LowestCommonAncestor(from, to);
    if (lca == "root" && from != to) cross_region = true;
    if (std::count(trace.begin(), trace.end(), lca) != 1) {
      ++ledger_.lca_violations;
    }
    if (tenant_of_.at(d.client) != env.tenant) {
      ++ledger_.cross_tenant_deliveries;
    }
  }
  if (all_local) {
    ++ledger_.local_envelopes;
    for (const auto& d : deliveries) {
      ledger_.local_parent_hops += ParentLinkTraversals(d.envelope);
    }
  }
  if (cross_region) ++ledger_.cross_region_envelopes;

  // Hand each delivery to its handler.
  for (const auto& d : deliveries) {
    if (d.client == kControlApp && env.kind == EnvelopeKind::kNotify) {
      json j = json::parse(d.envelope.payload);
      HandleTrigger(TriggerFromJson(j.at("trigger")), j.at("leaf"),
                    j.at("trigger").at("topic") == kScaleInTopic);
    }
  }
  return deliveries;
}

void Scenario::EndWindow(const std::vector<RateEstimate>& estimates) {
  const int n = Instances();
  std::map<std::string, std::vector<RateEstimate>> by_leaf;
  double max_risk = 0.0;
  for (const auto& e : estimates) {
    ++ledger_.estimates;
    latest_[e.link_id] = e;
    max_risk = std::max(max_risk, e.risk);
    series_.links.push_back({tick_, n, e.link_id, e.risk});
    std::string fw = e.link_id.substr(0, e.link_id.find(':'));
    Envelope env;
    env.tenant = kTenant;
    env.topic = MonitorTopic(fw);
    env.scope = Scope::kNode;
    env.sender = OpClient(fw);
    env.payload = RateEstimateToJson(e).dump();
    for (const auto& d : Publish(env)) {
      // Only the local aggregation point subscribes at node scope.
      by_leaf[broker_.BrokerOf(d.client)].push_back(
          RateEstimateFromJson(json::parse(d.envelope.payload)));
    }
  }
  if (cfg_.second_tenant) {
    Envelope env;
    env.tenant = kOtherTenant;
    env.topic = "mf.rate.fw1";
    env.scope = Scope::kGlobal;
    env.sender = "B.op";
    env.payload = "{}";
    Publish(env);
  }

  // Local aggregation: one out-spec and one in-spec per leaf.
  AggregationSpec out;
  out.combine = Combine::kMax;
  out.metric = Metric::kRisk;
  out.threshold_high = cfg_.scale_out_risk;
  out.threshold_low = cfg_.scale_in_risk;
  out.sustain = cfg_.sustain;
  out.action = kScaleOutTopic;
  AggregationSpec in = out;
  in.action = kScaleInTopic;
  in.capacity = cfg_.capacity;
  in.load_scale = n > 1 ? static_cast<double>(n) / (n - 1) : 1.0;

  const uint64_t version = g_.version;
  for (const auto& leaf : leaves_) {
    auto it = by_leaf.find(leaf);
    if (it == by_leaf.end()) continue;
    std::vector<TriggerEvent> fired;
    auto [hi, out_next] = AggregateStep(out, it->second, out_state_[leaf]);
    out_state_[leaf] = out_next;
    if (hi && hi->kind == TriggerKind::kHigh) fired.push_back(*hi);
    if (n > 1) {
      auto [lo, in_next] = AggregateStep(in, it->second, in_state_[leaf]);
      in_state_[leaf] = in_next;
      if (lo && lo->kind == TriggerKind::kLow) fired.push_back(*lo);
    }
    for (auto& ev : fired) {
      // One operation per window: the graph changed, the rest is stale.
      if (g_.version != version) break;
      ev.tick = tick_;
      ++ledger_.local_triggers;
      Envelope env;
      env.tenant = kTenant;
      env.topic = ev.topic;
      env.scope = Scope::kGlobal;
      env.kind = EnvelopeKind::kNotify;
      env.sender = ApClient(leaf);
      env.target = kControlApp;
      env.payload = json{{"leaf", leaf}, {"trigger", TriggerToJson(ev)}}.dump();
      Publish(env);
    }
    if (g_.version != version) break;
  }

  series_.points.push_back({tick_, Instances(), monitors_.ActiveRateMons(),
                            OfferedLoad(), max_risk});
  history_.push_back(Instances());
  RecordLinkLoads();
}

void Scenario::HandleTrigger(const TriggerEvent& ev, const std::string& leaf,
                             bool scale_in_spec) {
  if (cfg_.control_app_stalled) {
    Log("control_stalled",
        std::string(TriggerKindName(ev.kind)) + " from " + leaf + " ignored");
    return;
  }
  const int n = Instances();
  if (!scale_in_spec) {
    low_latched_.erase(leaf);
    auto d = ControlAppDecide(ev, n, cfg_);
    if (!d) {
      ++ledger_.saturations;
      Log("saturated", "HIGH at " + std::to_string(n) + " instances");
      Envelope env;
      env.tenant = kTenant;
      env.topic = "alarm.A.saturated";
      env.scope = Scope::kGlobal;
      env.sender = kControlApp;
      env.payload = json{{"instances", n}, {"tick", tick_}}.dump();
      Publish(env);
      return;
    }
    Orchestrate(*d);
    return;
  }
  // Scale in only once every leaf hosting a firewall agrees.
  low_latched_[leaf] = true;
  for (const auto& [fw, l] : leaf_of_) {
    if (!low_latched_.count(l)) return;
  }
  if (auto d = ControlAppDecide(ev, n, cfg_)) Orchestrate(*d);
}

void Scenario::ResetAggregators() {
  out_state_.clear();
  in_state_.clear();
  low_latched_.clear();
}

void Scenario::Orchestrate(const ScaleDecision& d) {
  ++ledger_.central_events;
  Log("orchestrate",
      std::string(ScaleKindName(d.kind)) + " to " + std::to_string(d.target));
  Nffg candidate;
  try {
    candidate =
        ApplyUpdate(g_, d.kind == ScaleKind::kScaleOut ? ScaleOutUpdate(g_)
                                                       : ScaleInUpdate(g_));
  } catch (const RejectedUpdate& e) {
    ++ledger_.rejected_updates;
    Log("reject", ToString(e.first()));
    return;
  }
  ++ledger_.verification_runs;
  BatchResult r = VerifyPolicySet(candidate, policies_);
  if (!r.AllHold()) {
    ++ledger_.rejected_updates;
    Log("verify", "candidate failed");
    Log("reject", "policy verification failed");
    return;
  }
  Log("verify", "candidate passed");
  const auto before = FirewallGroup(g_);
  g_ = std::move(candidate);
  chains_ = ExtractChains(g_);
  ++ledger_.scale_ops;
  verdict_log_.push_back(r.verdicts);
  const auto after = FirewallGroup(g_);
  Log("apply", "version " + std::to_string(g_.version) + ", " +
                   std::to_string(after.size()) + " firewalls");

  for (const auto& fw : after) {
    if (!monitors_.Find(fw)) PlaceFirewall(fw);
  }
  for (const auto& fw : before) {
    if (std::find(after.begin(), after.end(), fw) == after.end()) {
      monitors_.Retire(fw);
      broker_.Unregister(OpClient(fw));
      leaf_of_.erase(fw);
    }
  }
  ResetAggregators();

  Envelope env;
  env.tenant = kTenant;
  env.topic = "ctl.scale";
  env.scope = Scope::kGlobal;
  env.sender = kControlApp;
  env.payload = json{{"op", std::string(ScaleKindName(d.kind))},
                     {"instances", after.size()}}
                    .dump();
  Publish(env);
}

RunResult RunScenario(const ScenarioConfig& cfg, const Nffg& g0,
                      const std::vector<Policy>& policies) {
  Scenario s(cfg, g0, policies);
  s.RunToEnd();
  return {s.ledger(), s.series(), s.graph()};
}

}  // namespace spdevops
