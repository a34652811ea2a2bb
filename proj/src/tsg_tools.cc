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

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "spdevops/chains.h"
#include "spdevops/oracle.h"
#include "spdevops/scenario.h"
#include "spdevops/tsg.h"

namespace spdevops {

namespace {

using Args = std::vector<std::pair<std::string, std::string>>;

class ArgReader {
 public:
  ArgReader(const std::string& tool, const Args& args)
      : tool_(tool), args_(args) {}

  std::string Str(const std::string& key, const std::string& fallback = "") {
    used_.push_back(key);
    for (const auto& [k, v] : args_) {
      if (k == key) return v;
    }
    if (fallback.empty()) {
      throw InvalidToolArgs(tool_ + ": missing argument " + key);
    }
    return fallback;
  }

  double Num(const std::string& key, std::optional<double> fallback) {
    std::string v = Str(key, fallback ? "?" : "");
    if (v == "?") return *fallback;
    try {
      size_t used = 0;
      double d = std::stod(v, &used);
      if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw InvalidToolArgs(tool_ + ": " + key + " must be a number, got '" +
                            v + "'");
    }
  }

  // Rejects arguments the tool does not take.
  void Done() const {
    for (const auto& [k, v] : args_) {
      if (std::find(used_.begin(), used_.end(), k) == used_.end()) {
        throw InvalidToolArgs(tool_ + ": unknown argument " + k);
      }
    }
  }

 private:
  std::string tool_;
  const Args& args_;
  std::vector<std::string> used_;
};

std::string Fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

AppClass App(const std::string& tool, const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
  if (upper == "MAIL") upper = "EMAIL";
  auto a = ParseAppClass(upper);
  if (!a) throw InvalidToolArgs(tool + ": unknown application " + name);
  return *a;
}

bool Carries(const Chain& c, AppClass app) {
  for (const auto& k : c.traffic.classes()) {
    if (k.app_mask() >> static_cast<int>(app) & 1) return true;
  }
  return false;
}

// Resolves names against the graph as it is now.
class Resolver {
 public:
  explicit Resolver(const Nffg& g) : g_(g) {}

  // Firewall ids a target stands for.
  std::vector<std::string> Firewalls(const std::string& target) const {
    if (target == "firewall_group") {
      auto group = FirewallGroup(g_);
      if (group.empty())
        throw UnresolvedReference("no firewall group in graph");
      return group;
    }
    const VnfInstance* n = Node(target);
    if (n->kind() != VnfKind::kAclFw) {
      throw UnknownTarget(target + " is not a firewall");
    }
    return {target};
  }

  const VnfInstance* Node(const std::string& name) const {
    std::string id = name;
    if (name == "load_balancer") {
      const VnfInstance* lb = FirewallBalancer(g_);
      if (lb == nullptr) throw UnresolvedReference("no load balancer in graph");
      return lb;
    }
    const VnfInstance* n = g_.FindNode(id);
    if (n == nullptr) throw UnknownTarget("no node " + name);
    return n;
  }

  std::string Endpoint(const std::string& name) const {
    if (name == "client") {
      auto clients = g_.Clients();
      if (clients.empty()) throw UnresolvedReference("no client in graph");
      return clients.front();
    }
    for (auto [symbol, app] : {std::pair{"web_server", AppClass::kWeb},
                               std::pair{"mail_server", AppClass::kEmail},
                               std::pair{"other_server", AppClass::kOther}}) {
      if (name != symbol) continue;
      for (const Chain& c : Chains()) {
        if (Carries(c, app)) return c.server;
      }
      throw UnresolvedReference("no chain carries " +
                                std::string(AppClassName(app)) + " traffic");
    }
    if (g_.FindEndpoint(name) == nullptr) {
      throw UnknownTarget("no endpoint " + name);
    }
    return name;
  }

  Link LinkOf(const std::string& name) const {
    if (name == "webcache_nat_link") {
      // The cache's uplink on the way to the NAT.
      for (const auto& n : g_.nodes) {
        if (n.kind() != VnfKind::kWebCache) continue;
        for (const auto& l : g_.links) {
          if (l.from.node == n.id && !g_.FindEndpoint(l.to.node)) return l;
        }
      }
      throw UnresolvedReference("no link leaves a web cache");
    }
    size_t arrow = name.find("->");
    if (arrow == std::string::npos) {
      throw UnknownTarget("no link " + name + " (use <from>-><to>)");
    }
    std::string from = name.substr(0, arrow);
    std::string to = name.substr(arrow + 2);
    for (const auto& l : g_.links) {
      if (l.from.node == from && l.to.node == to) return l;
    }
    throw UnknownTarget("no link " + name);
  }

  const std::vector<Chain>& Chains() const {
    if (!chains_) chains_ = ExtractChains(g_);
    return *chains_;
  }

 private:
  const Nffg& g_;
  mutable std::optional<std::vector<Chain>> chains_;
};

std::vector<double> PerFirewall(const Scenario& sim,
                                const std::vector<std::string>& fws,
                                const std::vector<double>& group_values) {
  const auto group = FirewallGroup(sim.graph());
  std::vector<double> out;
  for (const auto& fw : fws) {
    auto it = std::find(group.begin(), group.end(), fw);
    if (it == group.end())
      throw UnknownTarget(fw + " is not behind the balancer");
    out.push_back(group_values[it - group.begin()]);
  }
  return out;
}

double Mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / xs.size();
}

double Max(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
}

}  // namespace

ToolResult SimulationTools::Run(const std::string& tool, const Args& args) {
  ToolResult r;
  r.tool = tool;
  ArgReader a(tool, args);
  Resolver names(sim_.graph());

  if (tool == "traffic_gen") {
    std::string target = a.Str("target", "firewall_group");
    names.Firewalls(target);  // the group must exist
    AppClass app = App(tool, a.Str("app", "OTHER"));
    double rate = a.Num("rate", std::nullopt);
    double duration = a.Num("duration", 10);
    a.Done();
    if (rate < 0) throw InvalidToolArgs("traffic_gen: rate must be >= 0");
    if (duration <= 0)
      throw InvalidToolArgs("traffic_gen: duration must be > 0");
    const int before = sim_.Instances();
    sim_.Inject(app, rate, duration);
    sim_.Advance(TicksFor(duration));
    r.values = {{"rate", rate},
                {"duration", duration},
                {"instances_before", static_cast<double>(before)},
                {"instances_after", static_cast<double>(sim_.Instances())}};
    r.raw = "+" + Fmt(rate) + " Mbit/s " + std::string(AppClassName(app)) +
            " for " + Fmt(duration) + " s; instances " +
            std::to_string(before) + " -> " + std::to_string(sim_.Instances());
  } else if (tool == "vnf_count") {
    std::string kind_name = a.Str("kind", "ACL_FW");
    a.Done();
    auto kind = ParseVnfKind(kind_name);
    if (!kind) throw InvalidToolArgs("vnf_count: unknown kind " + kind_name);
    int count = 0;
    for (const auto& n : sim_.graph().nodes) count += n.kind() == *kind;
    r.values = {{"count", static_cast<double>(count)}};
    r.raw = kind_name + " instances: " + std::to_string(count);
  } else if (tool == "link_load") {
    std::string name = a.Str("link");
    double windows = a.Num("windows", 5);
    a.Done();
    if (windows < 1) throw InvalidToolArgs("link_load: windows must be >= 1");
    Link l = names.LinkOf(name);
    double load = sim_.LinkLoad(l, static_cast<int>(windows));
    r.values = {{"load", load}};
    r.raw = name + " mean utilization over " + Fmt(windows) +
            " windows: " + Fmt(load);
  } else if (tool == "cpu_load") {
    std::string target = a.Str("target", "firewall_group");
    a.Done();
    auto cpu = PerFirewall(sim_, names.Firewalls(target), sim_.CpuLoads());
    r.values = {{"cpu", cpu}, {"mean", Mean(cpu)}, {"max", Max(cpu)}};
    r.raw = target + " cpu% " + ToString(Value(cpu));
  } else if (tool == "rate_risk") {
    std::string target = a.Str("target", "firewall_group");
    a.Done();
    std::vector<double> risk;
    for (const auto& fw : names.Firewalls(target)) {
      double worst = 0.0;
      if (const MonitorHandle* h = sim_.monitors().Find(fw)) {
        for (const auto& link : h->links) {
          if (auto e = sim_.LatestEstimate(link))
            worst = std::max(worst, e->risk);
        }
      }
      risk.push_back(worst);
    }
    r.values = {{"risk", risk}, {"max", Max(risk)}};
    r.raw = target + " overload risk " + ToString(Value(risk));
  } else if (tool == "ping_path") {
    std::string from = names.Endpoint(a.Str("from", "client"));
    std::string to = names.Endpoint(a.Str("to"));
    AppClass app = App(tool, a.Str("app", "OTHER"));
    a.Done();
    // A concrete packet from the chain that carries this application.
    std::optional<Packet> packet;
    for (const Chain& c : names.Chains()) {
      if (c.client != from || c.server != to) continue;
      auto cls = PacketClass::Full().WithApp(app);
      packet = c.traffic.Intersect(cls).AnyPacket();
      if (packet) break;
    }
    if (!packet) {
      throw UnresolvedReference("no chain carries " +
                                std::string(AppClassName(app)) + " from " +
                                from + " to " + to);
    }
    auto walks = TracePacket(sim_.graph(), from, *packet);
    const ConcreteTrace* best = walks.empty() ? nullptr : &walks.front();
    for (const auto& w : walks) {
      if (w.fate == Fate::kArrived && w.hops.back() == to) {
        best = &w;
        break;
      }
    }
    bool arrived = best != nullptr && best->fate == Fate::kArrived &&
                   best->hops.back() == to;
    std::string path;
    if (best != nullptr) {
      for (const auto& h : best->hops) path += (path.empty() ? "" : " ") + h;
    }
    r.values = {{"hops", static_cast<double>(best ? best->hops.size() : 0)},
                {"arrived", arrived}};
    r.raw = path;
  } else {
    throw UnknownTool("unknown tool " + tool);
  }
  return r;
}

}  // namespace spdevops
