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

#ifndef SPDEVOPS_NFFG_H_
#define SPDEVOPS_NFFG_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "spdevops/errors.h"
#include "spdevops/packet_class.h"
#include "spdevops/vnf_config.h"

namespace spdevops {

struct VnfInstance {
  std::string id;
  VnfConfig config;
  std::vector<std::string> ports;

  VnfKind kind() const { return KindOf(config); }
  bool HasPort(const std::string& port) const;

  friend bool operator==(const VnfInstance&, const VnfInstance&) = default;
};

struct NodePort {
  std::string node;
  std::string port;

  friend bool operator==(const NodePort&, const NodePort&) = default;
  friend auto operator<=>(const NodePort&, const NodePort&) = default;
};

struct Link {
  NodePort from;
  NodePort to;

  friend bool operator==(const Link&, const Link&) = default;
};

enum class EndpointRole : uint8_t { kClient, kServer };

struct Endpoint {
  std::string id;
  EndpointRole role = EndpointRole::kClient;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

// Higher priority wins. Priorities are unique per node.
struct ForwardingRule {
  std::string node;
  int priority = 0;
  PacketClass match;
  std::string out_port;

  friend bool operator==(const ForwardingRule&,
                         const ForwardingRule&) = default;
};

// Network-function forwarding graph. A plain value: copies are independent
// and updates produce new graphs.
class Nffg {
 public:
  std::vector<VnfInstance> nodes;
  std::vector<Link> links;
  std::vector<Endpoint> endpoints;
  std::vector<ForwardingRule> rules;
  uint64_t version = 0;

  const VnfInstance* FindNode(const std::string& id) const;
  const Endpoint* FindEndpoint(const std::string& id) const;
  // Links leaving (node, port). A valid graph has at most one.
  std::vector<const Link*> LinksFrom(const std::string& node,
                                     const std::string& port) const;
  // Port of `node` whose outgoing link ends at `neighbor`, or empty.
  std::string PortToward(const std::string& node,
                         const std::string& neighbor) const;
  // Rules installed at `node`, highest priority first.
  std::vector<const ForwardingRule*> RulesAt(const std::string& node) const;
  std::vector<std::string> Clients() const;
  std::vector<std::string> Servers() const;
  bool IsServer(const std::string& id) const;

  friend bool operator==(const Nffg&, const Nffg&) = default;
};

enum class ViolationCode : uint8_t {
  kDuplicateNode,
  kUnknownLinkNode,
  kUnknownLinkPort,
  kDuplicateLinkSource,
  kBadEndpoint,
  kUnknownRuleNode,
  kUnknownRulePort,
  kDuplicateRulePriority,
  kBadConfig,
  kMissingEndpoints,
  kDisconnectedClient,
  // Raised only by ApplyUpdate.
  kNodeInUse,
  kUnknownUpdateTarget,
};

std::string_view ViolationCodeName(ViolationCode code);

struct Violation {
  ViolationCode code;
  // The node, link ("a:p->b:q"), or rule ("node#priority") at fault.
  std::string subject;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string ToString(const Violation& v);

// Returns every broken graph invariant; empty means the graph is valid.
std::vector<Violation> Validate(const Nffg& g);

// --- Updates ---------------------------------------------------------------

struct AddNode {
  VnfInstance node;
};
struct RemoveNode {
  std::string id;
};
struct AddLink {
  Link link;
};
struct RemoveLink {
  Link link;
};
// Replaces every rule at `node`.
struct SetRules {
  std::string node;
  std::vector<ForwardingRule> rules;
};
// Replaces a node's configuration and port list in place.
struct SetConfig {
  std::string node;
  VnfConfig config;
  std::vector<std::string> ports;
};

using UpdateStep =
    std::variant<AddNode, RemoveNode, AddLink, RemoveLink, SetRules, SetConfig>;

enum class UpdateOp : uint8_t {
  kAddNode,
  kRemoveNode,
  kAddLink,
  kRemoveLink,
  kSetRules,
  kSetConfig,
};

inline UpdateOp OpOf(const UpdateStep& s) {
  return static_cast<UpdateOp>(s.index());
}

// An ordered batch of steps applied atomically as one version increment.
struct GraphUpdate {
  std::vector<UpdateStep> steps;

  GraphUpdate() = default;
  GraphUpdate(std::initializer_list<UpdateStep> s) : steps(s) {}
};

class RejectedUpdate : public Error {
 public:
  explicit RejectedUpdate(std::vector<Violation> violations);
  const Violation& first() const { return violations_.front(); }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Returns `g` with `u` applied and version + 1, or throws RejectedUpdate.
// `g` itself is never modified.
Nffg ApplyUpdate(const Nffg& g, const GraphUpdate& u);

}  // namespace spdevops

#endif  // SPDEVOPS_NFFG_H_
