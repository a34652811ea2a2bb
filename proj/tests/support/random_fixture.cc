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

#include "random_fixture.h"

#include <string>

#include "spdevops/oracle.h"

namespace spdevops::testing {
namespace {

uint32_t Pick(std::mt19937_64& rng, uint32_t lo, uint32_t hi) {
  return std::uniform_int_distribution<uint32_t>(lo, hi)(rng);
}

IntervalSet RandomSubset(std::mt19937_64& rng, uint32_t max) {
  IntervalSet s;
  int pieces = static_cast<int>(Pick(rng, 1, 2));
  for (int i = 0; i < pieces; ++i) {
    uint32_t a = Pick(rng, 0, max), b = Pick(rng, 0, max);
    if (a > b) std::swap(a, b);
    s = s.Union(IntervalSet::Range(a, b));
  }
  return s;
}

uint8_t RandomMask(std::mt19937_64& rng, int width) {
  return static_cast<uint8_t>(Pick(rng, 1, (1u << width) - 1));
}

Link L(const std::string& a, const std::string& ap, const std::string& b,
       const std::string& bp) {
  return Link{{a, ap}, {b, bp}};
}

AclConfig RandomAcl(std::mt19937_64& rng, int bits) {
  AclConfig acl;
  int n = static_cast<int>(Pick(rng, 0, 3));
  for (int i = 0; i < n; ++i) {
    acl.rules.push_back({RandomClass(rng, bits), Pick(rng, 0, 1)
                                                     ? AclAction::kDeny
                                                     : AclAction::kPermit});
  }
  acl.default_action = Pick(rng, 0, 3) ? AclAction::kPermit : AclAction::kDeny;
  return acl;
}

}  // namespace

PacketClass RandomClass(std::mt19937_64& rng, int bits) {
  PacketClass domain = ReducedDomain(bits);
  PacketClass c = domain;
  for (int f = 0; f < kNumNumericFields; ++f) {
    Field field = static_cast<Field>(f);
    uint32_t max = domain.numeric(field).intervals().back().hi;
    if (Pick(rng, 0, 2) != 0) c = c.With(field, RandomSubset(rng, max));
  }
  if (Pick(rng, 0, 1)) c = c.WithProtos(RandomMask(rng, kNumProtos));
  if (Pick(rng, 0, 1)) c = c.WithApps(RandomMask(rng, kNumAppClasses));
  if (Pick(rng, 0, 1)) c = c.WithSpam(RandomMask(rng, kNumSpamFlags));
  return c;
}

Fixture RandomFixture(std::mt19937_64& rng, int bits) {
  const uint32_t max =
      ReducedDomain(bits).numeric(Field::kSrcIp).intervals().back().hi;
  Fixture fx;
  Nffg& g = fx.graph;
  g.nodes.push_back({"c", EndpointConfig{}, {"out"}});
  g.endpoints.push_back({"c", EndpointRole::kClient});

  // `tail` is the (node, port) the next hop attaches to; `tail_rule` says
  // whether that node still needs a forwarding rule for the port.
  std::string tail = "c";
  int stages = static_cast<int>(Pick(rng, 0, 4));
  g.rules.push_back({"c", 10, RandomClass(rng, bits), "out"});
  if (Pick(rng, 0, 3) == 0) {
    g.rules.push_back({"c", 5, RandomClass(rng, bits), "out"});
  }

  auto attach = [&](const std::string& id) {
    g.links.push_back(L(tail, "out", id, "in"));
  };

  for (int s = 0; s < stages; ++s) {
    std::string id = "n" + std::to_string(s);
    switch (Pick(rng, 0, 5)) {
      case 0:
        g.nodes.push_back({id, RandomAcl(rng, bits), {"in", "out"}});
        break;
      case 1:
        g.nodes.push_back({id, AntispamConfig{}, {"in", "out"}});
        break;
      case 2:
        g.nodes.push_back({id, WebCacheConfig{}, {"in", "out"}});
        break;
      case 3:
        g.nodes.push_back({id,
                           NatConfig{Pick(rng, 0, max), RandomSubset(rng, max)},
                           {"in", "out"}});
        break;
      case 4:
        g.nodes.push_back({id,
                           VpnConfig{Pick(rng, 0, max), Pick(rng, 0, max),
                                     RandomSubset(rng, max)},
                           {"in", "out"}});
        break;
      default: {
        // Load balancer over two random firewalls that rejoin at a merge
        // point (a pass-through anti-spam would filter, so use an ACL that
        // permits everything).
        std::string a = id + "a", b = id + "b", m = id + "m";
        g.nodes.push_back(
            {id, LoadBalancerConfig{{a, b}}, {"in", "to_a", "to_b"}});
        g.nodes.push_back({a, RandomAcl(rng, bits), {"in", "out"}});
        g.nodes.push_back({b, RandomAcl(rng, bits), {"in", "out"}});
        g.nodes.push_back({m, AclConfig{}, {"in", "out"}});
        attach(id);
        g.links.push_back(L(id, "to_a", a, "in"));
        g.links.push_back(L(id, "to_b", b, "in"));
        g.links.push_back(L(a, "out", m, "in"));
        g.links.push_back(L(b, "out", m, "in"));
        g.rules.push_back({a, 10, PacketClass::Full(), "out"});
        g.rules.push_back({b, 10, PacketClass::Full(), "out"});
        g.rules.push_back({m, 10, PacketClass::Full(), "out"});
        tail = m;
        continue;
      }
    }
    attach(id);
    g.rules.push_back({id, 10, PacketClass::Full(), "out"});
    tail = id;
  }

  // Final split to two servers by destination.
  g.nodes.push_back({"s1", EndpointConfig{}, {"in"}});
  g.nodes.push_back({"s2", EndpointConfig{}, {"in"}});
  g.endpoints.push_back({"s1", EndpointRole::kServer});
  g.endpoints.push_back({"s2", EndpointRole::kServer});
  std::string split = "split";
  g.nodes.push_back({split, AclConfig{}, {"in", "p1", "p2"}});
  attach(split);
  g.links.push_back(L(split, "p1", "s1", "in"));
  g.links.push_back(L(split, "p2", "s2", "in"));
  g.rules.push_back(
      {split, 20,
       PacketClass::Full().With(Field::kDstIp, RandomSubset(rng, max)), "p1"});
  g.rules.push_back({split, 10, PacketClass::Full(), "p2"});

  std::string to = Pick(rng, 0, 1) ? "s1" : "s2";
  PacketClass traffic = RandomClass(rng, bits);
  fx.reach = {"r", PolicyKind::kReachability, "c", to, traffic};
  fx.isolate = {"i", PolicyKind::kIsolation, "c", to, traffic};
  return fx;
}

namespace {

Policy Restricted(Policy p, int bits) {
  p.traffic = p.traffic.Intersect(ReducedDomain(bits));
  return p;
}

}  // namespace

bool SymbolicReach(const Nffg& g, const Policy& p, int bits) {
  try {
    return CheckReachability(g, Restricted(p, bits)).holds;
  } catch (const NoChainError&) {
    return false;
  }
}

bool SymbolicIsolated(const Nffg& g, const Policy& p, int bits) {
  try {
    return CheckIsolation(g, Restricted(p, bits)).holds;
  } catch (const NoChainError&) {
    return true;
  }
}

}  // namespace spdevops::testing
