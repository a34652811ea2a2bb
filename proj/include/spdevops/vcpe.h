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

#ifndef SPDEVOPS_VCPE_H_
#define SPDEVOPS_VCPE_H_

#include <string>
#include <vector>

#include "spdevops/nffg.h"
#include "spdevops/verifier.h"

namespace spdevops {

// The vCPE service graph: private hosts behind one client endpoint reach a
// mail, a web and a generic server. Mail goes through the anti-spam filter,
// web through the cache, everything else straight to the elastic firewall
// (load balancer + N ACL firewalls), then through the NAT to the servers.

namespace vcpe {

inline constexpr Interval kClientHosts = {256, 511};
// Hosts that the isolation policies expect to be blocked.
inline constexpr Interval kBlockedHosts = {500, 511};
inline constexpr Interval kInternalPrefix = {0, 4095};
inline constexpr uint32_t kPublicIp = 40000;

inline constexpr Interval kMailServer = {50000, 50015};
inline constexpr Interval kWebServer = {50016, 50031};
inline constexpr Interval kOtherServer = {50032, 50047};
inline constexpr uint32_t kSmtpPort = 25;
inline constexpr uint32_t kHttpPort = 80;

inline constexpr char kClient[] = "client";
inline constexpr char kAntispam[] = "antispam";
inline constexpr char kCache[] = "cache";
inline constexpr char kBalancer[] = "lb";
inline constexpr char kNat[] = "nat";
inline constexpr char kMailServerId[] = "serverA";
inline constexpr char kWebServerId[] = "serverB";
inline constexpr char kOtherServerId[] = "serverC";

// "fw<i>", 1-based.
std::string FirewallId(int i);

// Permits everything except the blocked hosts.
AclConfig PermitAcl();
// Denies everything.
AclConfig DenyAcl();

// The vCPE graph with `firewalls` identical firewall instances.
Nffg Make(int firewalls, const AclConfig& acl);

// Traffic the client steers along each of the three chains.
PacketClass MailTraffic();
PacketClass WebTraffic();
PacketClass OtherTraffic();

// Reachability for allowed hosts and isolation for blocked hosts, one pair
// per chain. All six hold on Make(n, PermitAcl()).
std::vector<Policy> Policies();

// Isolation of all allowed traffic, one per chain. All three hold on
// Make(n, DenyAcl()), and each is caused by the firewall.
std::vector<Policy> DenyPolicies();

}  // namespace vcpe
}  // namespace spdevops

#endif  // SPDEVOPS_VCPE_H_
