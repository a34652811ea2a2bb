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

#include "spdevops/chains.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "propagation.h"
#include "spdevops/vnf_models.h"

namespace spdevops {
namespace internal {
namespace {

// Narrows `f` to the packets that, at this point, look like `sub_input`, and
// then replaces `current` with `output`.
Flow Advance(const Flow& f, const PacketClass& sub_input,
             const PacketClass& output, FieldMask rewrote) {
  Flow out;
  out.origin = f.origin;
  for (int i = 0; i < kNumFields; ++i) {
    if (!(f.rewritten & (1u << i))) {
      out.origin = out.origin.WithFieldFrom(static_cast<Field>(i), sub_input);
    }
  }
  out.current = out.origin.IsEmpty() ? PacketClass() : output;
  out.rewritten = f.rewritten | rewrote;
  return out;
}

bool IsFilter(VnfKind kind) {
  return kind == VnfKind::kAclFw || kind == VnfKind::kAntispam ||
         kind == VnfKind::kWebCache;
}

}  // namespace

std::vector<Hop> StepNode(const Nffg& g, const VnfInstance& node,
                          const Flow& flow, WalkMode mode) {
  std::vector<Hop> hops;
  if (flow.current.IsEmpty()) return hops;

  std::vector<Outcome> outcomes;
  if (mode == WalkMode::kRouting && IsFilter(node.kind())) {
    Outcome pass;
    pass.input = pass.klass = flow.current;
    outcomes.push_back(pass);
  } else {
    outcomes = Transfer(node.config, flow.current, Direction::kForwardPath,
                        NatBindingTable{})
                   .outcomes;
  }

  const auto rules = g.RulesAt(node.id);
  for (const auto& o : outcomes) {
    if (o.disposition != Disposition::kForward) continue;
    Flow moved = Advance(flow, o.input, o.klass, o.rewritten);
    if (moved.current.IsEmpty()) continue;

    if (!o.next_node.empty()) {
      if (!g.PortToward(node.id, o.next_node).empty()) {
        hops.push_back({o.next_node, moved});
      }
      continue;
    }

    std::vector<PacketClass> remaining = {moved.current};
    for (const ForwardingRule* rule : rules) {
      std::vector<PacketClass> next;
      for (const auto& piece : remaining) {
        PacketClass hit = piece.Intersect(rule->match);
        if (!hit.IsEmpty()) {
          Flow routed = Advance(moved, hit, hit, 0);
          for (const Link* l : g.LinksFrom(node.id, rule->out_port)) {
            hops.push_back({l->to.node, routed});
          }
        }
        auto rest = piece.Subtract(rule->match);
        next.insert(next.end(), rest.begin(), rest.end());
      }
      remaining = std::move(next);
      if (remaining.empty()) break;
    }
  }
  return hops;
}

}  // namespace internal

namespace {

using internal::Flow;
using internal::Hop;
using internal::StepNode;
using internal::WalkMode;

struct Extractor {
  const Nffg& g;
  std::string client;
  // Keyed by (server, path); `order` keeps first-seen order.
  std::map<std::vector<std::string>, size_t> index;
  std::vector<Chain> chains;

  void Walk(const std::string& at, const Flow& flow,
            std::vector<std::string>& path) {
    const VnfInstance* node = g.FindNode(at);
    if (node == nullptr) return;
    for (Hop& hop : StepNode(g, *node, flow, WalkMode::kRouting)) {
      if (std::find(path.begin(), path.end(), hop.next_node) != path.end()) {
        throw CyclicRouteError("route from " + client + " revisits node " +
                               hop.next_node + " with class " +
                               hop.flow.origin.ToString());
      }
      path.push_back(hop.next_node);
      if (g.IsServer(hop.next_node)) {
        Record(path, hop.flow.origin);
      } else if (g.FindEndpoint(hop.next_node) == nullptr) {
        Walk(hop.next_node, hop.flow, path);
      }
      path.pop_back();
    }
  }

  void Record(const std::vector<std::string>& path, const PacketClass& origin) {
    auto [it, inserted] = index.try_emplace(path, chains.size());
    if (inserted) {
      chains.push_back(Chain{client, path.back(), PacketSet(), path});
    }
    chains[it->second].traffic.Add(origin);
  }
};

}  // namespace

std::vector<std::string> Chain::Middle() const {
  if (nodes.size() < 2) return {};
  return {nodes.begin() + 1, nodes.end() - 1};
}

std::vector<Chain> ExtractChains(const Nffg& g) {
  std::vector<Chain> out;
  for (const auto& client : g.Clients()) {
    Extractor ex{g, client, {}, {}};
    std::vector<std::string> path = {client};
    Flow start{PacketClass::Full(), PacketClass::Full(), 0};
    ex.Walk(client, start, path);
    for (auto& c : ex.chains) out.push_back(std::move(c));
  }
  return out;
}

PacketSet AdmittedTraffic(const Nffg& g, const std::string& client) {
  PacketSet out;
  for (const ForwardingRule* r : g.RulesAt(client)) out.Add(r->match);
  return out;
}

std::string ToString(const Chain& c) {
  std::ostringstream os;
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    if (i) os << " -> ";
    os << c.nodes[i];
  }
  os << "  traffic=" << c.traffic.ToString();
  return os.str();
}

}  // namespace spdevops
