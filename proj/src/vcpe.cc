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

#include "spdevops/vcpe.h"

#include <tuple>

namespace spdevops::vcpe {
namespace {

IntervalSet Of(Interval i) { return IntervalSet::Range(i.lo, i.hi); }

PacketClass FromClient() {
  return PacketClass::Full().With(Field::kSrcIp, Of(kClientHosts));
}

ForwardingRule Rule(const std::string& node, int priority, PacketClass match,
                    const std::string& port) {
  return ForwardingRule{node, priority, std::move(match), port};
}

Link L(const std::string& a, const std::string& ap, const std::string& b,
       const std::string& bp) {
  return Link{{a, ap}, {b, bp}};
}

PacketClass Hosts(const PacketClass& c, Interval hosts) {
  return c.With(Field::kSrcIp, Of(hosts));
}

std::vector<Policy> PolicyPair(const std::string& tag, const std::string& to,
                               const PacketClass& traffic) {
  Interval allowed = {kClientHosts.lo, kBlockedHosts.lo - 1};
  return {
      {"reach_" + tag, PolicyKind::kReachability, kClient, to,
       Hosts(traffic, allowed)},
      {"isolate_" + tag, PolicyKind::kIsolation, kClient, to,
       Hosts(traffic, kBlockedHosts)},
  };
}

}  // namespace

std::string FirewallId(int i) { return "fw" + std::to_string(i); }

AclConfig PermitAcl() {
  AclConfig acl;
  acl.rules.push_back(
      {PacketClass::Full().With(Field::kSrcIp, Of(kBlockedHosts)),
       AclAction::kDeny});
  acl.default_action = AclAction::kPermit;
  return acl;
}

AclConfig DenyAcl() {
  AclConfig acl;
  acl.default_action = AclAction::kDeny;
  return acl;
}

PacketClass MailTraffic() {
  return FromClient()
      .WithApp(AppClass::kEmail)
      .With(Field::kDstIp, Of(kMailServer))
      .With(Field::kDstPort, IntervalSet::Single(kSmtpPort));
}

PacketClass WebTraffic() {
  return FromClient()
      .WithApp(AppClass::kWeb)
      .With(Field::kDstIp, Of(kWebServer))
      .With(Field::kDstPort, IntervalSet::Single(kHttpPort));
}

PacketClass OtherTraffic() {
  return FromClient()
      .WithApp(AppClass::kOther)
      .With(Field::kDstIp, Of(kOtherServer));
}

Nffg Make(int firewalls, const AclConfig& acl) {
  Nffg g;
  LoadBalancerConfig lb;
  std::vector<std::string> lb_ports = {"in"};
  for (int i = 1; i <= firewalls; ++i) {
    lb.backends.push_back(FirewallId(i));
    lb_ports.push_back("to_" + FirewallId(i));
  }

  g.nodes = {
      {kClient, EndpointConfig{}, {"to_antispam", "to_cache", "to_lb"}},
      {kAntispam, AntispamConfig{}, {"in", "out"}},
      {kCache, WebCacheConfig{}, {"in", "out"}},
      {kBalancer, lb, lb_ports},
  };
  for (int i = 1; i <= firewalls; ++i) {
    g.nodes.push_back({FirewallId(i), acl, {"in", "out"}});
  }
  g.nodes.push_back({kNat,
                     NatConfig{kPublicIp, Of(kInternalPrefix)},
                     {"in", "to_a", "to_b", "to_c"}});
  for (const char* s : {kMailServerId, kWebServerId, kOtherServerId}) {
    g.nodes.push_back({s, EndpointConfig{}, {"in"}});
  }

  g.links = {
      L(kClient, "to_antispam", kAntispam, "in"),
      L(kClient, "to_cache", kCache, "in"),
      L(kClient, "to_lb", kBalancer, "in"),
      L(kAntispam, "out", kBalancer, "in"),
      L(kCache, "out", kBalancer, "in"),
  };
  for (int i = 1; i <= firewalls; ++i) {
    g.links.push_back(L(kBalancer, "to_" + FirewallId(i), FirewallId(i), "in"));
    g.links.push_back(L(FirewallId(i), "out", kNat, "in"));
  }
  g.links.push_back(L(kNat, "to_a", kMailServerId, "in"));
  g.links.push_back(L(kNat, "to_b", kWebServerId, "in"));
  g.links.push_back(L(kNat, "to_c", kOtherServerId, "in"));

  g.endpoints = {{kClient, EndpointRole::kClient},
                 {kMailServerId, EndpointRole::kServer},
                 {kWebServerId, EndpointRole::kServer},
                 {kOtherServerId, EndpointRole::kServer}};

  const PacketClass all = PacketClass::Full();
  g.rules = {
      Rule(kClient, 30, MailTraffic(), "to_antispam"),
      Rule(kClient, 20, WebTraffic(), "to_cache"),
      Rule(kClient, 10, OtherTraffic(), "to_lb"),
      Rule(kAntispam, 10, all, "out"),
      Rule(kCache, 10, all, "out"),
      Rule(kNat, 30, all.With(Field::kDstIp, Of(kMailServer)), "to_a"),
      Rule(kNat, 20, all.With(Field::kDstIp, Of(kWebServer)), "to_b"),
      Rule(kNat, 10, all.With(Field::kDstIp, Of(kOtherServer)), "to_c"),
  };
  for (int i = 1; i <= firewalls; ++i) {
    g.rules.push_back(Rule(FirewallId(i), 10, all, "out"));
  }
  return g;
}

std::vector<Policy> Policies() {
  std::vector<Policy> out;
  for (auto&& [tag, to, traffic] :
       {std::tuple{"mail", kMailServerId, MailTraffic()},
        std::tuple{"web", kWebServerId, WebTraffic()},
        std::tuple{"other", kOtherServerId, OtherTraffic()}}) {
    for (auto& p : PolicyPair(tag, to, traffic)) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Policy> DenyPolicies() {
  return {
      {"deny_mail", PolicyKind::kIsolation, kClient, kMailServerId,
       MailTraffic()},
      {"deny_web", PolicyKind::kIsolation, kClient, kWebServerId, WebTraffic()},
      {"deny_other", PolicyKind::kIsolation, kClient, kOtherServerId,
       OtherTraffic()},
  };
}

}  // namespace spdevops::vcpe
