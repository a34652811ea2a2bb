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

#ifndef SPDEVOPS_VNF_CONFIG_H_
#define SPDEVOPS_VNF_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spdevops/interval_set.h"
#include "spdevops/packet_class.h"

namespace spdevops {

// Order matches the alternatives of VnfConfig.
enum class VnfKind : uint8_t {
  kNat = 0,
  kAclFw,
  kWebCache,
  kAntispam,
  kVpnGw,
  kLoadBalancer,
  kEndpoint,
};

std::string_view VnfKindName(VnfKind kind);
std::optional<VnfKind> ParseVnfKind(std::string_view name);

enum class AclAction : uint8_t { kPermit, kDeny };

// Address-only source NAT.
struct NatConfig {
  uint32_t public_ip = 0;
  IntervalSet internal_prefix;

  friend bool operator==(const NatConfig&, const NatConfig&) = default;
};

struct AclRule {
  PacketClass match;
  AclAction action = AclAction::kPermit;

  friend bool operator==(const AclRule&, const AclRule&) = default;
};

// Rules are evaluated in list order; the first match decides.
struct AclConfig {
  std::vector<AclRule> rules;
  AclAction default_action = AclAction::kPermit;

  friend bool operator==(const AclConfig&, const AclConfig&) = default;
};

struct WebCacheConfig {
  friend bool operator==(const WebCacheConfig&,
                         const WebCacheConfig&) = default;
};

struct AntispamConfig {
  friend bool operator==(const AntispamConfig&,
                         const AntispamConfig&) = default;
};

// Tunnel encapsulation modeled on the outer addresses only.
struct VpnConfig {
  uint32_t tunnel_src = 0;
  uint32_t tunnel_dst = 0;
  IntervalSet inner_prefix;

  friend bool operator==(const VpnConfig&, const VpnConfig&) = default;
};

// Backends are node ids; a packet goes to backends[src_ip % backends.size()].
struct LoadBalancerConfig {
  std::vector<std::string> backends;

  friend bool operator==(const LoadBalancerConfig&,
                         const LoadBalancerConfig&) = default;
};

struct EndpointConfig {
  friend bool operator==(const EndpointConfig&,
                         const EndpointConfig&) = default;
};

using VnfConfig =
    std::variant<NatConfig, AclConfig, WebCacheConfig, AntispamConfig,
                 VpnConfig, LoadBalancerConfig, EndpointConfig>;

inline VnfKind KindOf(const VnfConfig& config) {
  return static_cast<VnfKind>(config.index());
}

// Default-constructed config for `kind`.
VnfConfig DefaultConfig(VnfKind kind);

}  // namespace spdevops

#endif  // SPDEVOPS_VNF_CONFIG_H_
