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

#include "spdevops/nffg.h"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>

namespace spdevops {
namespace {

constexpr std::array<std::string_view, 7> kKindNames = {
    "NAT",    "ACL_FW",        "WEB_CACHE", "ANTISPAM",
    "VPN_GW", "LOAD_BALANCER", "ENDPOINT"};

constexpr std::array<std::string_view, 13> kViolationNames = {
    "duplicate_node",       "unknown_link_node",
    "unknown_link_port",    "duplicate_link_source",
    "bad_endpoint",         "unknown_rule_node",
    "unknown_rule_port",    "duplicate_rule_priority",
    "bad_config",           "missing_endpoints",
    "disconnected_client",  "node_in_use",
    "unknown_update_target"};

std::string LinkName(const Link& l) {
  return l.from.node + ":" + l.from.port + "->" + l.to.node + ":" + l.to.port;
}

std::string RuleName(const ForwardingRule& r) {
  return r.node + "#" + std::to_string(r.priority);
}

void CheckConfig(const Nffg& g, const VnfInstance& n,
                 std::vector<Violation>& out) {
  if (const auto* nat = std::get_if<NatConfig>(&n.config)) {
    if (nat->internal_prefix.empty()) {
      out.push_back(
          {ViolationCode::kBadConfig, n.id, "NAT internal_prefix is empty"});
    }
  } else if (const auto* vpn = std::get_if<VpnConfig>(&n.config)) {
    if (vpn->inner_prefix.empty()) {
      out.push_back(
          {ViolationCode::kBadConfig, n.id, "VPN inner_prefix is empty"});
    }
  } else if (const auto* lb = std::get_if<LoadBalancerConfig>(&n.config)) {
    std::set<std::string> seen;
    for (const auto& b : lb->backends) {
      if (!seen.insert(b).second) {
        out.push_back(
            {ViolationCode::kBadConfig, n.id, "backend listed twice: " + b});
      } else if (g.FindNode(b) == nullptr) {
        out.push_back(
            {ViolationCode::kBadConfig, n.id, "unknown backend " + b});
      } else if (g.PortToward(n.id, b).empty()) {
        out.push_back({ViolationCode::kBadConfig, n.id,
                       "backend " + b + " is not linked"});
      }
    }
  }
}

}  // namespace

std::string_view VnfKindName(VnfKind kind) {
  return kKindNames[static_cast<int>(kind)];
}

std::optional<VnfKind> ParseVnfKind(std::string_view name) {
  for (size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<VnfKind>(i);
  }
  return std::nullopt;
}

VnfConfig DefaultConfig(VnfKind kind) {
  switch (kind) {
    case VnfKind::kNat:
      return NatConfig{};
    case VnfKind::kAclFw:
      return AclConfig{};
    case VnfKind::kWebCache:
      return WebCacheConfig{};
    case VnfKind::kAntispam:
      return AntispamConfig{};
    case VnfKind::kVpnGw:
      return VpnConfig{};
    case VnfKind::kLoadBalancer:
      return LoadBalancerConfig{};
    case VnfKind::kEndpoint:
      return EndpointConfig{};
  }
  return EndpointConfig{};
}

std::string_view ViolationCodeName(ViolationCode code) {
  return kViolationNames[static_cast<int>(code)];
}

std::string ToString(const Violation& v) {
  return std::string(ViolationCodeName(v.code)) + " at " + v.subject + ": " +
         v.message;
}

bool VnfInstance::HasPort(const std::string& port) const {
  return std::find(ports.begin(), ports.end(), port) != ports.end();
}

// --- Nffg queries ----------------------------------------------------------

const VnfInstance* Nffg::FindNode(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

const Endpoint* Nffg::FindEndpoint(const std::string& id) const {
  for (const auto& e : endpoints) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::vector<const Link*> Nffg::LinksFrom(const std::string& node,
                                         const std::string& port) const {
  std::vector<const Link*> out;
  for (const auto& l : links) {
    if (l.from.node == node && l.from.port == port) out.push_back(&l);
  }
  return out;
}

std::string Nffg::PortToward(const std::string& node,
                             const std::string& neighbor) const {
  for (const auto& l : links) {
    if (l.from.node == node && l.to.node == neighbor) return l.from.port;
  }
  return {};
}

std::vector<const ForwardingRule*> Nffg::RulesAt(
    const std::string& node) const {
  std::vector<const ForwardingRule*> out;
  for (const auto& r : rules) {
    if (r.node == node) out.push_back(&r);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ForwardingRule* a, const ForwardingRule* b) {
                     return a->priority > b->priority;
                   });
  return out;
}

std::vector<std::string> Nffg::Clients() const {
  std::vector<std::string> out;
  for (const auto& e : endpoints) {
    if (e.role == EndpointRole::kClient) out.push_back(e.id);
  }
  return out;
}

std::vector<std::string> Nffg::Servers() const {
  std::vector<std::string> out;
  for (const auto& e : endpoints) {
    if (e.role == EndpointRole::kServer) out.push_back(e.id);
  }
  return out;
}

bool Nffg::IsServer(const std::string& id) const {
  const Endpoint* e = FindEndpoint(id);
  return e != nullptr && e->role == EndpointRole::kServer;
}

// --- Validation ------------------------------------------------------------

std::vector<Violation> Validate(const Nffg& g) {
  std::vector<Violation> out;

  std::set<std::string> ids;
  for (const auto& n : g.nodes) {
    if (!ids.insert(n.id).second) {
      out.push_back(
          {ViolationCode::kDuplicateNode, n.id, "node id is not unique"});
    }
  }

  std::set<NodePort> link_sources;
  for (const auto& l : g.links) {
    bool ok = true;
    for (const NodePort* end : {&l.from, &l.to}) {
      const VnfInstance* n = g.FindNode(end->node);
      if (n == nullptr) {
        out.push_back({ViolationCode::kUnknownLinkNode, LinkName(l),
                       "link references unknown node " + end->node});
        ok = false;
      } else if (!n->HasPort(end->port)) {
        out.push_back({ViolationCode::kUnknownLinkPort, LinkName(l),
                       "node " + end->node + " has no port " + end->port});
        ok = false;
      }
    }
    if (ok && !link_sources.insert(l.from).second) {
      out.push_back({ViolationCode::kDuplicateLinkSource, LinkName(l),
                     "more than one link leaves this port"});
    }
  }

  std::set<std::string> endpoint_ids;
  for (const auto& e : g.endpoints) {
    const VnfInstance* n = g.FindNode(e.id);
    if (n == nullptr || n->kind() != VnfKind::kEndpoint) {
      out.push_back({ViolationCode::kBadEndpoint, e.id,
                     "endpoint is not an ENDPOINT node"});
    } else if (!endpoint_ids.insert(e.id).second) {
      out.push_back(
          {ViolationCode::kBadEndpoint, e.id, "endpoint declared twice"});
    }
  }

  std::set<std::pair<std::string, int>> priorities;
  for (const auto& r : g.rules) {
    const VnfInstance* n = g.FindNode(r.node);
    if (n == nullptr) {
      out.push_back({ViolationCode::kUnknownRuleNode, RuleName(r),
                     "rule at unknown node"});
      continue;
    }
    if (!n->HasPort(r.out_port)) {
      out.push_back({ViolationCode::kUnknownRulePort, RuleName(r),
                     "rule forwards to nonexistent port " + r.out_port});
    }
    if (!priorities.insert({r.node, r.priority}).second) {
      out.push_back({ViolationCode::kDuplicateRulePriority, RuleName(r),
                     "two rules share a priority at this node"});
    }
  }

  for (const auto& n : g.nodes) CheckConfig(g, n, out);

  auto clients = g.Clients();
  auto servers = g.Servers();
  if (clients.empty() || servers.empty()) {
    out.push_back({ViolationCode::kMissingEndpoints, "graph",
                   "graph needs at least one client and one server"});
    return out;
  }

  std::map<std::string, std::vector<std::string>> adjacency;
  for (const auto& l : g.links) adjacency[l.from.node].push_back(l.to.node);
  for (const auto& c : clients) {
    std::set<std::string> seen = {c};
    std::deque<std::string> frontier = {c};
    bool reached = false;
    while (!frontier.empty() && !reached) {
      std::string cur = frontier.front();
      frontier.pop_front();
      for (const auto& next : adjacency[cur]) {
        if (g.IsServer(next)) reached = true;
        if (seen.insert(next).second) frontier.push_back(next);
      }
    }
    if (!reached) {
      out.push_back({ViolationCode::kDisconnectedClient, c,
                     "client cannot reach any server"});
    }
  }
  return out;
}

// --- Updates ---------------------------------------------------------------

RejectedUpdate::RejectedUpdate(std::vector<Violation> violations)
    : Error("update rejected: " + (violations.empty()
                                       ? std::string("unknown reason")
                                       : ToString(violations.front()))),
      violations_(std::move(violations)) {
  if (violations_.empty()) {
    violations_.push_back(
        {ViolationCode::kUnknownUpdateTarget, "update", "unknown reason"});
  }
}

namespace {

struct StepApplier {
  Nffg& g;
  std::vector<Violation>& errors;

  void operator()(const AddNode& s) {
    if (g.FindNode(s.node.id) != nullptr) {
      errors.push_back(
          {ViolationCode::kDuplicateNode, s.node.id, "node already exists"});
      return;
    }
    g.nodes.push_back(s.node);
  }

  void operator()(const RemoveNode& s) {
    auto it = std::find_if(g.nodes.begin(), g.nodes.end(),
                           [&](const VnfInstance& n) { return n.id == s.id; });
    if (it == g.nodes.end()) {
      errors.push_back({ViolationCode::kUnknownUpdateTarget, s.id,
                        "cannot remove unknown node"});
      return;
    }
    for (const auto& l : g.links) {
      if (l.from.node == s.id || l.to.node == s.id) {
        errors.push_back({ViolationCode::kNodeInUse, s.id,
                          "node is still referenced by link " + LinkName(l)});
        return;
      }
    }
    g.nodes.erase(it);
    std::erase_if(g.rules,
                  [&](const ForwardingRule& r) { return r.node == s.id; });
    std::erase_if(g.endpoints, [&](const Endpoint& e) { return e.id == s.id; });
  }

  void operator()(const AddLink& s) { g.links.push_back(s.link); }

  void operator()(const RemoveLink& s) {
    auto it = std::find(g.links.begin(), g.links.end(), s.link);
    if (it == g.links.end()) {
      errors.push_back({ViolationCode::kUnknownUpdateTarget, LinkName(s.link),
                        "cannot remove unknown link"});
      return;
    }
    g.links.erase(it);
  }

  void operator()(const SetRules& s) {
    if (g.FindNode(s.node) == nullptr) {
      errors.push_back({ViolationCode::kUnknownUpdateTarget, s.node,
                        "cannot set rules on unknown node"});
      return;
    }
    std::erase_if(g.rules,
                  [&](const ForwardingRule& r) { return r.node == s.node; });
    for (auto r : s.rules) {
      r.node = s.node;
      g.rules.push_back(std::move(r));
    }
  }

  void operator()(const SetConfig& s) {
    for (auto& n : g.nodes) {
      if (n.id == s.node) {
        n.config = s.config;
        n.ports = s.ports;
        return;
      }
    }
    errors.push_back({ViolationCode::kUnknownUpdateTarget, s.node,
                      "cannot configure unknown node"});
  }
};

}  // namespace

Nffg ApplyUpdate(const Nffg& g, const GraphUpdate& u) {
  Nffg next = g;
  std::vector<Violation> errors;
  StepApplier apply{next, errors};
  for (const auto& step : u.steps) {
    std::visit(apply, step);
    if (!errors.empty()) throw RejectedUpdate(std::move(errors));
  }
  auto violations = Validate(next);
  if (!violations.empty()) throw RejectedUpdate(std::move(violations));
  next.version = g.version + 1;
  return next;
}

}  // namespace spdevops
