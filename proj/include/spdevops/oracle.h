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

#ifndef SPDEVOPS_ORACLE_H_
#define SPDEVOPS_ORACLE_H_

#include <string>
#include <vector>

#include "spdevops/nffg.h"
#include "spdevops/packet_class.h"
#include "spdevops/verifier.h"

namespace spdevops {

// Brute-force concrete simulator. It shares only the data types with the
// symbolic engine: rule matching, VNF behavior and routing are written out
// again here so the two can be checked against each other.

enum class Fate : uint8_t { kArrived, kDropped, kAnsweredLocally, kStranded };

std::string_view FateName(Fate f);

// One resolution of a packet's walk through the graph.
struct ConcreteTrace {
  std::vector<std::string> hops;  // starts at the client
  Fate fate = Fate::kDropped;
  Packet final_packet;  // as seen at the last hop
};

// Every walk of `packet` sent from client `from`, one per resolution of the
// cache hit/miss choices. A walk ends at an endpoint (kArrived), at a drop,
// at a cache answer, or where no rule or link continues it (kStranded).
// Throws CyclicRouteError if a walk revisits a node.
std::vector<ConcreteTrace> TracePacket(const Nffg& g, const std::string& from,
                                       const Packet& packet);

// True if some walk of `packet` from `from` arrives at `to`.
bool PacketArrives(const Nffg& g, const std::string& from,
                   const std::string& to, const Packet& packet);

// The reduced header domain used for enumeration. `domain_bits` numeric
// header bits are spread over the four numeric fields, first fields first;
// enum fields keep their full (tiny) domains. Throws DomainTooLarge above 8.
PacketClass ReducedDomain(int domain_bits);

// Enumerates every packet of p.traffic inside ReducedDomain(domain_bits)
// and reports whether any arrives at p.to. Throws DomainTooLarge.
bool OracleReachability(const Nffg& g, const Policy& p, int domain_bits);

}  // namespace spdevops

#endif  // SPDEVOPS_ORACLE_H_
