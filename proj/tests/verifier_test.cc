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

#include "spdevops/verifier.h"

#include <gtest/gtest.h>

#include <random>

#include "spdevops/chains.h"
#include "spdevops/oracle.h"
#include "spdevops/vcpe.h"
#include "support/random_fixture.h"

namespace spdevops {
namespace {

constexpr int kBits = 8;

Policy Pol(PolicyKind kind, const std::string& to, PacketClass traffic) {
  return {"p", kind, vcpe::kClient, to, std::move(traffic)};
}

// Client wired straight to one server.
Nffg Direct() {
  Nffg g;
  g.nodes = {{"c", EndpointConfig{}, {"out"}}, {"s", EndpointConfig{}, {"in"}}};
  g.links = {{{"c", "out"}, {"s", "in"}}};
  g.endpoints = {{"c", EndpointRole::kClient}, {"s", EndpointRole::kServer}};
  g.rules = {{"c", 1, PacketClass::Full(), "out"}};
  return g;
}

TEST(Reachability, OtherTrafficReachesServerC) {
  auto g = vcpe::Make(1, vcpe::PermitAcl());
  Verdict v =
      CheckReachability(g, Pol(PolicyKind::kReachability, vcpe::kOtherServerId,
                               vcpe::OtherTraffic()));
  ASSERT_TRUE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->path, (std::vector<std::string>{"client", "lb", "fw1",
                                                       "nat", "serverC"}));
  // The concrete simulator delivers the same packet along the same path.
  bool replayed = false;
  for (const auto& t : TracePacket(g, "client", v.witness->packet)) {
    if (t.fate == Fate::kArrived && t.hops == v.witness->path) replayed = true;
  }
  EXPECT_TRUE(replayed);
}

TEST(Reachability, DirectWireAlwaysReaches) {
  Verdict v = CheckReachability(
      Direct(), {"p", PolicyKind::kReachability, "c", "s",
                 PacketClass::Full().WithApp(AppClass::kEmail)});
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.witness->path, (std::vector<std::string>{"c", "s"}));
}

TEST(Reachability, DenyAllFirewallBlocks) {
  auto g = vcpe::Make(1, vcpe::DenyAcl());
  EXPECT_FALSE(CheckReachability(g, Pol(PolicyKind::kReachability,
                                        vcpe::kWebServerId, vcpe::WebTraffic()))
                   .holds);
}

TEST(Reachability, NoChainIsAnError) {
  auto g = vcpe::Make(1, vcpe::PermitAcl());
  Policy p =
      Pol(PolicyKind::kReachability, vcpe::kMailServerId, vcpe::MailTraffic());
  p.from = vcpe::kClient;
  g.rules.erase(g.rules.begin());  // drop the mail steering rule
  EXPECT_THROW(CheckReachability(g, p), NoChainError);
}

TEST(Reachability, InvalidPolicies) {
  auto g = vcpe::Make(1, vcpe::PermitAcl());
  Policy p = Pol(PolicyKind::kReachability, "nowhere", vcpe::MailTraffic());
  EXPECT_THROW(CheckReachability(g, p), InvalidPolicy);
  p = Pol(PolicyKind::kReachability, vcpe::kMailServerId, PacketClass());
  EXPECT_THROW(CheckReachability(g, p), InvalidPolicy);
}

TEST(Isolation, SmtpDenyIsolatesMail) {
  AclConfig acl;
  acl.rules.push_back(
      {PacketClass::Full().With(Field::kDstPort, IntervalSet::Single(25)),
       AclAction::kDeny});
  auto g = vcpe::Make(1, acl);
  Policy p = Pol(PolicyKind::kIsolation, vcpe::kMailServerId,
                 PacketClass::Full().WithApp(AppClass::kEmail));
  Verdict v = RootCauseIsolation(g, p);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.cause->node_id, "fw1");
  EXPECT_EQ(v.cause->kind, VnfKind::kAclFw);
}

TEST(Isolation, HamMailIsNotIsolatedUnderPermit) {
  auto g = vcpe::Make(1, AclConfig{});
  Policy p = Pol(PolicyKind::kIsolation, vcpe::kMailServerId,
                 vcpe::MailTraffic().WithSpamFlag(SpamFlag::kHam));
  EXPECT_FALSE(CheckIsolation(g, p).holds);
  EXPECT_THROW(RootCauseIsolation(g, p), NotIsolatedError);
}

TEST(Isolation, SpamDiesAtAntispam) {
  auto g = vcpe::Make(1, AclConfig{});
  Policy p = Pol(PolicyKind::kIsolation, vcpe::kMailServerId,
                 vcpe::MailTraffic().WithSpamFlag(SpamFlag::kSpam));
  Verdict v = RootCauseIsolation(g, p);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.cause->node_id, "antispam");
  EXPECT_EQ(v.cause->kind, VnfKind::kAntispam);
  // Probes: firewall input (empty), balancer input (empty), anti-spam input.
  EXPECT_EQ(v.cause->prefix_checks, 3);
}

TEST(Isolation, DisjointTrafficIsVacuouslyIsolated) {
  auto g = vcpe::Make(1, AclConfig{});
  Policy p = Pol(PolicyKind::kIsolation, vcpe::kMailServerId,
                 PacketClass::Full().WithApp(AppClass::kOther));
  EXPECT_TRUE(CheckIsolation(g, p).holds);
  Verdict v = RootCauseIsolation(g, p);
  EXPECT_EQ(v.cause->node_id, vcpe::kClient);
}

TEST(Isolation, ChainWithoutMiddleboxesBeforeFirewallNeedsOneProbe) {
  auto g = vcpe::Make(1, vcpe::DenyAcl());
  Verdict v = RootCauseIsolation(
      g,
      Pol(PolicyKind::kIsolation, vcpe::kOtherServerId, vcpe::OtherTraffic()));
  EXPECT_EQ(v.cause->node_id, "fw1");
  EXPECT_EQ(v.cause->prefix_checks, 1);
}

TEST(Batch, VcpeSixPolicies) {
  auto result =
      VerifyPolicySet(vcpe::Make(1, vcpe::PermitAcl()), vcpe::Policies());
  EXPECT_EQ(result.verdicts.size(), 6u);
  EXPECT_TRUE(result.AllHold());
  EXPECT_EQ(result.reachability.count, 3);
  EXPECT_EQ(result.isolation.count, 3);
  EXPECT_GE(result.reachability.max_ms, result.reachability.mean_ms);
  for (size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(result.verdicts[i].policy_id, vcpe::Policies()[i].id);
  }
}

TEST(Batch, EmptyPolicyList) {
  EXPECT_TRUE(VerifyPolicySet(Direct(), {}).verdicts.empty());
}

TEST(Batch, ErrorsAreRecordedNotThrown) {
  std::vector<Policy> ps = {
      {"bad", PolicyKind::kReachability, "c", "ghost", PacketClass::Full()},
      {"good", PolicyKind::kReachability, "c", "s", PacketClass::Full()}};
  auto result = VerifyPolicySet(Direct(), ps);
  ASSERT_EQ(result.verdicts.size(), 2u);
  EXPECT_FALSE(result.verdicts[0].holds);
  EXPECT_FALSE(result.verdicts[0].error.empty());
  EXPECT_TRUE(result.verdicts[1].holds);
}

TEST(Batch, Deterministic) {
  auto g = vcpe::Make(2, vcpe::PermitAcl());
  auto a = VerifyPolicySet(g, vcpe::Policies());
  auto b = VerifyPolicySet(g, vcpe::Policies());
  for (size_t i = 0; i < a.verdicts.size(); ++i) {
    EXPECT_TRUE(SameOutcome(a.verdicts[i], b.verdicts[i]));
  }
  EXPECT_EQ(VerdictsToJson(a.verdicts), VerdictsToJson(b.verdicts));
}

TEST(Batch, ScaleOutPreservesVerdicts) {
  auto one =
      VerifyPolicySet(vcpe::Make(1, vcpe::PermitAcl()), vcpe::Policies());
  for (int n : {2, 3, 7}) {
    auto many =
        VerifyPolicySet(vcpe::Make(n, vcpe::PermitAcl()), vcpe::Policies());
    for (size_t i = 0; i < one.verdicts.size(); ++i) {
      EXPECT_EQ(one.verdicts[i].holds, many.verdicts[i].holds);
    }
  }
}

TEST(PolicyFile, RoundTrip) {
  auto ps = vcpe::Policies();
  auto back = PoliciesFromJson(PoliciesToJson(ps));
  ASSERT_EQ(back.size(), ps.size());
  for (size_t i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(back[i].id, ps[i].id);
    EXPECT_EQ(back[i].traffic, ps[i].traffic);
    EXPECT_EQ(back[i].kind, ps[i].kind);
  }
  EXPECT_THROW(PoliciesFromJson(nlohmann::json::object()), ParseError);
  EXPECT_THROW(PoliciesFromJson(nlohmann::json::parse(R"([{"kind":"X"}])")),
               ParseError);
}

TEST(TimingCsv, HeaderAndRows) {
  auto result = VerifyPolicySet(Direct(), {{"a", PolicyKind::kReachability, "c",
                                            "s", PacketClass::Full()}});
  std::string csv = TimingCsv(result);
  EXPECT_EQ(
      csv.rfind("policy_id,kind,holds,elapsed_ms\na,REACHABILITY,true,", 0),
      0u);
}

// --- Oracle -----------------------------------------------------------------

TEST(Oracle, DomainLimit) {
  Policy p{"p", PolicyKind::kReachability, "c", "s", PacketClass::Full()};
  EXPECT_THROW(OracleReachability(Direct(), p, 9), DomainTooLarge);
  EXPECT_TRUE(OracleReachability(Direct(), p, 8));
  EXPECT_EQ(ReducedDomain(8).Cardinality(), 4u * 4 * 4 * 4 * 12);
}

TEST(Oracle, TwoPacketDomainByHand) {
  // One numeric bit: src_ip in {0, 1}. A firewall denying src 0 lets exactly
  // the src 1 packets through.
  Nffg g = Direct();
  g.nodes.push_back({"fw",
                     AclConfig{{{PacketClass::Full().With(
                                     Field::kSrcIp, IntervalSet::Single(0)),
                                 AclAction::kDeny}},
                               AclAction::kPermit},
                     {"in", "out"}});
  g.links = {{{"c", "out"}, {"fw", "in"}}, {{"fw", "out"}, {"s", "in"}}};
  g.rules.push_back({"fw", 1, PacketClass::Full(), "out"});
  ASSERT_TRUE(Validate(g).empty());
  Policy p{"p", PolicyKind::kReachability, "c", "s",
           PacketClass::Full().With(Field::kSrcIp, IntervalSet::Single(0))};
  EXPECT_FALSE(OracleReachability(g, p, 1));
  EXPECT_FALSE(CheckReachability(g, p).holds);
  p.traffic = PacketClass::Full();
  EXPECT_TRUE(OracleReachability(g, p, 1));
  EXPECT_TRUE(CheckReachability(g, p).holds);
}

TEST(Oracle, CacheHitIsNotArrival) {
  Nffg g = Direct();
  g.nodes.push_back({"cache", WebCacheConfig{}, {"in", "out"}});
  g.links = {{{"c", "out"}, {"cache", "in"}}, {{"cache", "out"}, {"s", "in"}}};
  g.rules.push_back({"cache", 1, PacketClass::Full(), "out"});
  Packet web;
  web.app = AppClass::kWeb;
  auto traces = TracePacket(g, "c", web);
  ASSERT_EQ(traces.size(), 2u);
  EXPECT_EQ(traces[0].fate, Fate::kAnsweredLocally);
  EXPECT_EQ(traces[1].fate, Fate::kArrived);
}

TEST(Oracle, RandomFixturesAgreeWithSymbolicEngine) {
  std::mt19937_64 rng(20260101);
  int reachable = 0;
  for (int i = 0; i < 500; ++i) {
    auto fx = testing::RandomFixture(rng, kBits);
    ASSERT_TRUE(Validate(fx.graph).empty()) << i;
    bool oracle = OracleReachability(fx.graph, fx.reach, kBits);
    bool reach = testing::SymbolicReach(fx.graph, fx.reach, kBits);
    bool isolated = testing::SymbolicIsolated(fx.graph, fx.isolate, kBits);
    ASSERT_EQ(reach, oracle) << "fixture " << i;
    ASSERT_EQ(isolated, !reach) << "fixture " << i;
    reachable += reach;
  }
  // Both outcomes are well represented.
  EXPECT_GT(reachable, 50);
  EXPECT_LT(reachable, 450);
}

TEST(Oracle, WitnessesReplay) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto fx = testing::RandomFixture(rng, kBits);
    Verdict v;
    try {
      v = CheckReachability(fx.graph, fx.reach);
    } catch (const NoChainError&) {
      continue;
    }
    if (!v.holds) continue;
    ASSERT_TRUE(fx.reach.traffic.Contains(v.witness->packet));
    EXPECT_TRUE(PacketArrives(fx.graph, "c", fx.reach.to, v.witness->packet))
        << i;
  }
}

}  // namespace
}  // namespace spdevops
