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

#include <gtest/gtest.h>

#include "json.hpp"
#include "spdevops/chains.h"
#include "spdevops/nffg_json.h"
#include "spdevops/oracle.h"
#include "spdevops/verifier.h"

namespace spdevops {
namespace {

TEST(Vcpe, FixtureIsValid) {
  EXPECT_TRUE(Validate(vcpe::Make(1, vcpe::PermitAcl())).empty());
  EXPECT_TRUE(Validate(vcpe::Make(4, vcpe::DenyAcl())).empty());
}

TEST(Vcpe, ThreeChains) {
  auto chains = ExtractChains(vcpe::Make(1, vcpe::PermitAcl()));
  ASSERT_EQ(chains.size(), 3u);
  using V = std::vector<std::string>;
  EXPECT_EQ(chains[0].Middle(), (V{"antispam", "lb", "fw1", "nat"}));
  EXPECT_EQ(chains[1].Middle(), (V{"cache", "lb", "fw1", "nat"}));
  EXPECT_EQ(chains[2].Middle(), (V{"lb", "fw1", "nat"}));
  EXPECT_EQ(chains[0].server, "serverA");
  EXPECT_EQ(chains[1].server, "serverB");
  EXPECT_EQ(chains[2].server, "serverC");
  EXPECT_TRUE(chains[0].traffic.SameAs(PacketSet(vcpe::MailTraffic())));
}

TEST(Vcpe, PermitPoliciesAllHold) {
  auto g = vcpe::Make(1, vcpe::PermitAcl());
  auto result = VerifyPolicySet(g, vcpe::Policies());
  ASSERT_EQ(result.verdicts.size(), 6u);
  for (const auto& v : result.verdicts) {
    EXPECT_TRUE(v.holds) << v.policy_id << " " << v.error;
    if (v.kind == PolicyKind::kIsolation) {
      ASSERT_TRUE(v.cause.has_value());
      EXPECT_EQ(v.cause->node_id, "fw1");
    } else {
      ASSERT_TRUE(v.witness.has_value());
      EXPECT_TRUE(PacketArrives(g, "client", v.witness->path.back(),
                                v.witness->packet));
    }
  }
}

TEST(Vcpe, DenyConfigBlamesTheFirewall) {
  auto g = vcpe::Make(1, vcpe::DenyAcl());
  for (const auto& p : vcpe::DenyPolicies()) {
    Verdict v = RootCauseIsolation(g, p);
    ASSERT_TRUE(v.cause.has_value());
    EXPECT_EQ(v.cause->node_id, "fw1") << p.id;
    EXPECT_EQ(v.cause->kind, VnfKind::kAclFw);
    EXPECT_EQ(v.cause->prefix_checks, 1);
  }
}

// The JSON files under fixtures/ are serialized from the builders above.
TEST(Vcpe, JsonFixturesAreCurrent) {
  const std::string dir = SPDEVOPS_FIXTURES_DIR;
  EXPECT_EQ(ReadFile(dir + "/vcpe.nffg.json"),
            SerializeNffg(vcpe::Make(1, vcpe::PermitAcl())));
  EXPECT_EQ(ReadFile(dir + "/vcpe_deny.nffg.json"),
            SerializeNffg(vcpe::Make(1, vcpe::DenyAcl())));
  EXPECT_EQ(ReadFile(dir + "/policies.json"),
            PoliciesToJson(vcpe::Policies()).dump(2) + "\n");
  EXPECT_EQ(ReadFile(dir + "/deny_policies.json"),
            PoliciesToJson(vcpe::DenyPolicies()).dump(2) + "\n");
}

}  // namespace
}  // namespace spdevops
