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

#ifndef SPDEVOPS_CHAINS_H_
#define SPDEVOPS_CHAINS_H_

#include <string>
#include <vector>

#include "spdevops/nffg.h"
#include "spdevops/packet_class.h"

namespace spdevops {

// An endpoint-to-endpoint VNF path and the traffic (as admitted at the
// client, before any rewrite) that forwarding steers along it.
struct Chain {
  std::string client;
  std::string server;
  PacketSet traffic;
  // Node ids, client first and server last.
  std::vector<std::string> nodes;

  // The nodes strictly between the two endpoints.
  std::vector<std::string> Middle() const;
};

// Decomposes `g` into chains: one per (client, server, distinct node path).
// Filtering VNFs are treated as pass-through here; rewrites and load-balancer
// steering are applied because they change the route. Chains come out in a
// deterministic order: clients in endpoint order, then depth-first along
// rules in priority order. Throws CyclicRouteError if a route revisits a
// node. Requires Validate(g) to be empty.
std::vector<Chain> ExtractChains(const Nffg& g);

// Union of the classes admitted by the forwarding rules at `client`.
PacketSet AdmittedTraffic(const Nffg& g, const std::string& client);

std::string ToString(const Chain& c);

}  // namespace spdevops

#endif  // SPDEVOPS_CHAINS_H_
