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


#ifndef SPDEVOPS_SRC_PROPAGATION_H_
#define SPDEVOPS_SRC_PROPAGATION_H_

// Symbolic packet propagation shared by chain extraction and the verifier.

#include <string>
#include <vector>

#include "spdevops/nffg.h"
#include "spdevops/packet_class.h"

namespace spdevops::internal {

// A symbolic flow in flight. `current` is what the packets look like now;
// `origin` is the exact set of packets, as they left the client, that are
// now `current`. Fields not in `rewritten` are equal in both; rewritten
// fields hold a single value in `current`.
struct Flow {
  PacketClass origin;
  PacketClass current;
  FieldMask rewritten = 0;
};

enum class WalkMode {
  // Only behaviors that change the route: rewrites and load balancing.
  kRouting,
  // Full VNF semantics; drops and local answers end the flow.
  kBehavior,
};

struct Hop {
  std::string next_node;
  Flow flow;
};

// Runs `flow` through `node`: its VNF model, then its forwarding rules.
// Returns the flows that leave the node, tagged with their next node.
std::vector<Hop> StepNode(const Nffg& g, const VnfInstance& node,
                          const Flow& flow, WalkMode mode);

}  // namespace spdevops::internal

#endif  // SPDEVOPS_SRC_PROPAGATION_H_
