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

#ifndef SPDEVOPS_VERIFIER_H_
#define SPDEVOPS_VERIFIER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spdevops/chains.h"
#include "spdevops/nffg.h"
#include "spdevops/packet_class.h"

namespace spdevops {

enum class PolicyKind : uint8_t { kReachability, kIsolation };

std::string_view PolicyKindName(PolicyKind k);

struct Policy {
  std::string id;
  PolicyKind kind = PolicyKind::kReachability;
  std::string from;  // client endpoint
  std::string to;    // server endpoint
  PacketClass traffic;
};

class InvalidPolicy : public Error {
 public:
  using Error::Error;
};

// A concrete packet, as sent by the client, and the node path it takes to the
// target server.
struct Witness {
  Packet packet;
  std::vector<std::string> path;
};

// The node at which the policy's traffic stops, found by iterated prefix
// reachability. `prefix_checks` counts the prefix reachability probes run.
struct RootCause {
  std::string node_id;
  VnfKind kind = VnfKind::kAclFw;
  int prefix_checks = 0;
};

struct Verdict {
  std::string policy_id;
  PolicyKind kind = PolicyKind::kReachability;
  bool holds = false;
  std::optional<Witness> witness;
  std::optional<RootCause> cause;
  double elapsed_ms = 0.0;
  // Set when the policy could not be evaluated (holds is then false).
  std::string error;
};

// Verdict equality ignoring timing.
bool SameOutcome(const Verdict& a, const Verdict& b);

// Holds iff some packet of p.traffic, under some resolution of the MAY
// branches, arrives at p.to. Throws NoChainError if no chain links p.from to
// p.to, and InvalidPolicy for unknown endpoints or empty traffic.
Verdict CheckReachability(const Nffg& g, const Policy& p);

// Exact negation of CheckReachability on the same inputs.
Verdict CheckIsolation(const Nffg& g, const Policy& p);

// For an isolation policy that holds: names the first node at which the
// traffic dies. Throws NotIsolatedError otherwise.
Verdict RootCauseIsolation(const Nffg& g, const Policy& p);

struct KindTiming {
  int count = 0;
  double mean_ms = 0.0;
  double max_ms = 0.0;
};

struct BatchResult {
  std::vector<Verdict> verdicts;
  KindTiming reachability;
  KindTiming isolation;

  bool AllHold() const;
};

struct BatchOptions {
  // Attribute each holding isolation verdict to a node when its chain has a
  // firewall.
  bool root_cause = true;
};

// Evaluates every policy; errors are recorded per verdict, never thrown.
BatchResult VerifyPolicySet(const Nffg& g, const std::vector<Policy>& policies,
                            const BatchOptions& options = {});

// Symbolic propagation trace for one chain: entry i is the set of client
// packets (pre-rewrite) that arrive at the input of chain.nodes[i].
std::vector<PacketSet> PropagateAlongChain(const Nffg& g, const Chain& chain,
                                           const PacketSet& traffic,
                                           size_t stop_at = SIZE_MAX);

// Policy file: JSON array of {id?, kind, from, to, traffic}.
std::vector<Policy> PoliciesFromJson(const nlohmann::json& j);
nlohmann::json PoliciesToJson(const std::vector<Policy>& policies);
std::vector<Policy> LoadPolicyFile(const std::string& path);

// Verdict report: JSON array (timing excluded) and the CSV timing summary
// `policy_id,kind,holds,elapsed_ms`.
nlohmann::json VerdictsToJson(const std::vector<Verdict>& verdicts);
std::string TimingCsv(const BatchResult& result);

}  // namespace spdevops

#endif  // SPDEVOPS_VERIFIER_H_
