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

#include "spdevops/verifier.h"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "propagation.h"
#include "spdevops/nffg_json.h"

namespace spdevops {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void CheckPolicy(const Nffg& g, const Policy& p) {
  const Endpoint* from = g.FindEndpoint(p.from);
  const Endpoint* to = g.FindEndpoint(p.to);
  if (from == nullptr || from->role != EndpointRole::kClient) {
    throw InvalidPolicy("policy " + p.id + ": " + p.from +
                        " is not a client endpoint");
  }
  if (to == nullptr || to->role != EndpointRole::kServer) {
    throw InvalidPolicy("policy " + p.id + ": " + p.to +
                        " is not a server endpoint");
  }
  if (p.traffic.IsEmpty()) {
    throw InvalidPolicy("policy " + p.id + ": traffic class is empty");
  }
}

// Chains from p.from to p.to; throws NoChainError if there are none.
std::vector<Chain> ChainsFor(const Nffg& g, const Policy& p) {
  CheckPolicy(g, p);
  std::vector<Chain> out;
  for (auto& c : ExtractChains(g)) {
    if (c.client == p.from && c.server == p.to) out.push_back(std::move(c));
  }
  if (out.empty()) {
    throw NoChainError("no chain connects " + p.from + " to " + p.to);
  }
  return out;
}

Verdict Reach(const Nffg& g, const Policy& p) {
  Verdict v;
  v.policy_id = p.id;
  v.kind = PolicyKind::kReachability;
  for (const Chain& chain : ChainsFor(g, p)) {
    PacketSet traffic = chain.traffic.Intersect(p.traffic);
    if (traffic.IsEmpty()) continue;
    PacketSet arrived = PropagateAlongChain(g, chain, traffic).back();
    if (!arrived.IsEmpty()) {
      v.holds = true;
      v.witness = Witness{*arrived.AnyPacket(), chain.nodes};
      break;
    }
  }
  return v;
}

struct ChainDeath {
  size_t index = 0;
  int checks = 0;
};

// Finds where `traffic` dies on `chain` by probing prefix reachability: first
// up to the firewall input, then backwards toward the client if the firewall
// is never reached.
std::optional<ChainDeath> LocateDeath(const Nffg& g, const Chain& chain,
                                      const PacketSet& traffic) {
  auto first_dead_from = [](const std::vector<PacketSet>& trace, size_t from) {
    for (size_t j = from; j + 1 < trace.size(); ++j) {
      if (!trace[j].IsEmpty() && trace[j + 1].IsEmpty()) return j;
    }
    return trace.size() - 1;
  };

  std::optional<size_t> fw;
  for (size_t i = 0; i < chain.nodes.size(); ++i) {
    const VnfInstance* n = g.FindNode(chain.nodes[i]);
    if (n != nullptr && n->kind() == VnfKind::kAclFw) {
      fw = i;
      break;
    }
  }

  ChainDeath death;
  if (!fw) {
    ++death.checks;
    auto trace = PropagateAlongChain(g, chain, traffic);
    death.index = first_dead_from(trace, 0);
  } else {
    ++death.checks;
    if (!PropagateAlongChain(g, chain, traffic, *fw).back().IsEmpty()) {
      auto trace = PropagateAlongChain(g, chain, traffic);
      death.index = first_dead_from(trace, *fw);
    } else {
      death.index = 0;
      for (size_t k = *fw; k-- > 0;) {
        ++death.checks;
        if (!PropagateAlongChain(g, chain, traffic, k).back().IsEmpty()) {
          death.index = k;
          break;
        }
      }
    }
  }
  if (death.index + 1 >= chain.nodes.size()) return std::nullopt;
  return death;
}

void AddTiming(KindTiming& t, double ms) {
  t.mean_ms = (t.mean_ms * t.count + ms) / (t.count + 1);
  t.max_ms = std::max(t.max_ms, ms);
  ++t.count;
}

}  // namespace

std::string_view PolicyKindName(PolicyKind k) {
  return k == PolicyKind::kReachability ? "REACHABILITY" : "ISOLATION";
}

bool SameOutcome(const Verdict& a, const Verdict& b) {
  auto witness_eq = [](const std::optional<Witness>& x,
                       const std::optional<Witness>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->packet == y->packet && x->path == y->path);
  };
  auto cause_eq = [](const std::optional<RootCause>& x,
                     const std::optional<RootCause>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->node_id == y->node_id && x->kind == y->kind &&
                  x->prefix_checks == y->prefix_checks);
  };
  return a.policy_id == b.policy_id && a.kind == b.kind && a.holds == b.holds &&
         a.error == b.error && witness_eq(a.witness, b.witness) &&
         cause_eq(a.cause, b.cause);
}

std::vector<PacketSet> PropagateAlongChain(const Nffg& g, const Chain& chain,
                                           const PacketSet& traffic,
                                           size_t stop_at) {
  using internal::Flow;
  std::vector<PacketSet> trace = {traffic};
  std::vector<Flow> flows;
  for (const auto& c : traffic.classes()) flows.push_back({c, c, 0});
  const size_t last = std::min(stop_at, chain.nodes.size() - 1);
  for (size_t i = 0; i < last; ++i) {
    const VnfInstance* node = g.FindNode(chain.nodes[i]);
    std::vector<Flow> next;
    PacketSet arrived;
    if (node != nullptr) {
      for (const Flow& f : flows) {
        for (auto& hop :
             internal::StepNode(g, *node, f, internal::WalkMode::kBehavior)) {
          if (hop.next_node != chain.nodes[i + 1]) continue;
          arrived.Add(hop.flow.origin);
          next.push_back(std::move(hop.flow));
        }
      }
    }
    flows = std::move(next);
    trace.push_back(std::move(arrived));
  }
  return trace;
}

Verdict CheckReachability(const Nffg& g, const Policy& p) {
  auto start = Clock::now();
  Verdict v = Reach(g, p);
  v.elapsed_ms = MillisSince(start);
  return v;
}

Verdict CheckIsolation(const Nffg& g, const Policy& p) {
  auto start = Clock::now();
  Verdict v = Reach(g, p);
  v.kind = PolicyKind::kIsolation;
  v.holds = !v.holds;
  v.elapsed_ms = MillisSince(start);
  return v;
}

Verdict RootCauseIsolation(const Nffg& g, const Policy& p) {
  auto start = Clock::now();
  Verdict v = Reach(g, p);
  if (v.holds) {
    throw NotIsolatedError("policy " + p.id + ": traffic reaches " + p.to);
  }
  v.kind = PolicyKind::kIsolation;
  v.holds = true;

  std::optional<std::pair<ChainDeath, const Chain*>> best;
  const std::vector<Chain> chains = ChainsFor(g, p);
  for (const Chain& chain : chains) {
    PacketSet traffic = chain.traffic.Intersect(p.traffic);
    if (traffic.IsEmpty()) continue;
    auto death = LocateDeath(g, chain, traffic);
    if (death && (!best || death->index < best->first.index)) {
      best = {*death, &chain};
    }
  }
  if (best) {
    const std::string& id = best->second->nodes[best->first.index];
    v.cause = RootCause{id, g.FindNode(id)->kind(), best->first.checks};
  } else {
    // The traffic matches no chain at all: it is stopped at the client.
    v.cause = RootCause{p.from, VnfKind::kEndpoint, 0};
  }
  v.elapsed_ms = MillisSince(start);
  return v;
}

bool BatchResult::AllHold() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.holds; });
}

BatchResult VerifyPolicySet(const Nffg& g, const std::vector<Policy>& policies,
                            const BatchOptions& options) {
  BatchResult out;
  for (const auto& p : policies) {
    Verdict v;
    v.policy_id = p.id;
    v.kind = p.kind;
    auto start = Clock::now();
    try {
      if (p.kind == PolicyKind::kReachability) {
        v = CheckReachability(g, p);
      } else {
        v = CheckIsolation(g, p);
        if (v.holds && options.root_cause) v = RootCauseIsolation(g, p);
      }
    } catch (const Error& e) {
      v.holds = false;
      v.error = e.what();
    }
    v.elapsed_ms = MillisSince(start);
    AddTiming(
        p.kind == PolicyKind::kReachability ? out.reachability : out.isolation,
        v.elapsed_ms);
    out.verdicts.push_back(std::move(v));
  }
  return out;
}

// --- Files -----------------------------------------------------------------

std::vector<Policy> PoliciesFromJson(const json& j) {
  if (!j.is_array()) throw ParseError("policy file must be a JSON array");
  std::vector<Policy> out;
  try {
    for (size_t i = 0; i < j.size(); ++i) {
      const json& e = j[i];
      Policy p;
      p.id = e.value("id", "p" + std::to_string(i));
      std::string kind = e.at("kind").get<std::string>();
      if (kind == "REACHABILITY") {
        p.kind = PolicyKind::kReachability;
      } else if (kind == "ISOLATION") {
        p.kind = PolicyKind::kIsolation;
      } else {
        throw ParseError("policy " + p.id + ": unknown kind " + kind);
      }
      p.from = e.at("from").get<std::string>();
      p.to = e.at("to").get<std::string>();
      p.traffic = e.contains("traffic") ? PacketClassFromJson(e["traffic"])
                                        : PacketClass::Full();
      out.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed policy: ") + e.what());
  }
  return out;
}

json PoliciesToJson(const std::vector<Policy>& policies) {
  json out = json::array();
  for (const auto& p : policies) {
    out.push_back({{"id", p.id},
                   {"kind", std::string(PolicyKindName(p.kind))},
                   {"from", p.from},
                   {"to", p.to},
                   {"traffic", PacketClassToJson(p.traffic)}});
  }
  return out;
}

std::vector<Policy> LoadPolicyFile(const std::string& path) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
  return PoliciesFromJson(j);
}

json VerdictsToJson(const std::vector<Verdict>& verdicts) {
  json out = json::array();
  for (const auto& v : verdicts) {
    json e = {{"policy_id", v.policy_id},
              {"kind", std::string(PolicyKindName(v.kind))},
              {"holds", v.holds}};
    if (v.witness) {
      e["witness"] = {{"packet", PacketToJson(v.witness->packet)},
                      {"path", v.witness->path}};
    }
    if (v.cause) {
      e["cause"] = {{"node", v.cause->node_id},
                    {"kind", std::string(VnfKindName(v.cause->kind))},
                    {"prefix_checks", v.cause->prefix_checks}};
    }
    if (!v.error.empty()) e["error"] = v.error;
    out.push_back(std::move(e));
  }
  return out;
}

std::string TimingCsv(const BatchResult& result) {
  std::ostringstream os;
  os << "policy_id,kind,holds,elapsed_ms\n";
  os << std::fixed << std::setprecision(3);
  for (const auto& v : result.verdicts) {
    os << v.policy_id << "," << PolicyKindName(v.kind) << ","
       << (v.holds ? "true" : "false") << "," << v.elapsed_ms << "\n";
  }
  return os.str();
}

}  // namespace spdevops
