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

#ifndef SPDEVOPS_VNF_MODELS_H_
#define SPDEVOPS_VNF_MODELS_H_

#include <string>
#include <vector>

#include "spdevops/packet_class.h"
#include "spdevops/vnf_config.h"

namespace spdevops {

enum class Direction : uint8_t { kForwardPath, kReturnPath };
enum class Disposition : uint8_t { kForward, kDrop, kAnswerLocally };
enum class Branch : uint8_t { kMust, kMay };

std::string_view DispositionName(Disposition d);

// One behavior branch of a VNF for a sub-class of its input.
//
// `input` is the part of the transfer input this branch applies to; `klass`
// is that part after header rewrites. Fields in `rewritten` were overwritten
// by the VNF; all other fields of `klass` equal those of `input`.
struct Outcome {
  PacketClass input;
  PacketClass klass;
  Disposition disposition = Disposition::kForward;
  Branch branch = Branch::kMust;
  FieldMask rewritten = 0;
  // Set when the VNF itself picks the next hop (load balancer); otherwise the
  // node's forwarding rules decide.
  std::string next_node;
};

// Address bindings recorded by stateful rewrites (NAT, VPN) on the forward
// path and consulted on the return path. One table per VNF instance.
struct BindingEntry {
  PacketClass original;    // forward-path class before the rewrite
  PacketClass translated;  // the same class after the rewrite
  FieldMask rewritten = 0;

  friend bool operator==(const BindingEntry&, const BindingEntry&) = default;
};

class NatBindingTable {
 public:
  void Record(BindingEntry e);
  const std::vector<BindingEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const NatBindingTable&,
                         const NatBindingTable&) = default;

 private:
  std::vector<BindingEntry> entries_;
};

struct TransferResult {
  std::vector<Outcome> outcomes;
  NatBindingTable bindings;
};

// Behavioral model of one VNF. Pure: the returned table is `bindings` plus
// whatever this call recorded. In strict mode a return-path class without a
// binding throws UnknownBinding; otherwise it is dropped.
TransferResult Transfer(const VnfConfig& config, const PacketClass& in,
                        Direction direction, const NatBindingTable& bindings,
                        bool strict = false);

// Forward NAT of `in`, then return-path NAT of the reversed result, reversed
// back. Equals `in` whenever in.src_ip lies inside the internal prefix.
PacketClass NatRoundtrip(const NatConfig& config, const PacketClass& in);

}  // namespace spdevops

#endif  // SPDEVOPS_VNF_MODELS_H_
