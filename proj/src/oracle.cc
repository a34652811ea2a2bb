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

#include "spdevops/oracle.h"

#include <algorithm>
#include <array>

namespace spdevops {
namespace {

constexpr int kMaxDomainBits = 8;

bool InIntervals(const IntervalSet& s, uint32_t v) {
  for (const Interval& i : s.intervals()) {
    if (v >= i.lo && v <= i.hi) return true;
  }
  return false;
}

bool Matches(const PacketClass& c, const Packet& p) {
  return InIntervals(c.numeric(Field::kSrcIp), p.src_ip) &&
         InIntervals(c.numeric(Field::kDstIp), p.dst_ip) &&
         InIntervals(c.numeric(Field::kSrcPort), p.src_port) &&
         InIntervals(c.numeric(Field::kDstPort), p.dst_port) &&
         (c.proto_mask() >> static_cast<int>(p.proto) & 1) &&
         (c.app_mask() >> static_cast<int>(p.app) & 1) &&
         (c.spam_mask() >> static_cast<int>(p.spam) & 1);
}

// What a VNF does to one packet: zero or more continuations. An empty
// `next` means the node's forwarding rules pick the next hop.
struct Step {
  Packet packet;
  Fate fate = Fate::kArrived;  // kArrived here means "keeps going"
  std::string next;
};

Step Go(const Packet& p) { return Step{p, Fate::kArrived, ""}; }
Step Stop(const Packet& p, Fate f) { return Step{p, f, ""}; }

struct Behave {
  const Packet& in;
  std::vector<Step> operator()(const NatConfig& c) const {
    Packet out = in;
    if (InIntervals(c.internal_prefix, in.src_ip)) out.src_ip = c.public_ip;
    return {Go(out)};
  }
  std::vector<Step> operator()(const AclConfig& c) const {
    AclAction action = c.default_action;
    for (const AclRule& r : c.rules) {
      if (Matches(r.match, in)) {
        action = r.action;
        break;
      }
    }
    if (action == AclAction::kDeny) return {Stop(in, Fate::kDropped)};
    return {Go(in)};
  }
  std::vector<Step> operator()(const WebCacheConfig&) const {
    if (in.app == AppClass::kWeb) {
      return {Stop(in, Fate::kAnsweredLocally), Go(in)};
    }
    return {Go(in)};
  }
  std::vector<Step> operator()(const AntispamConfig&) const {
    if (in.spam == SpamFlag::kSpam) return {Stop(in, Fate::kDropped)};
    return {Go(in)};
  }
  std::vector<Step> operator()(const VpnConfig& c) const {
    Packet out = in;
    if (InIntervals(c.inner_prefix, in.src_ip)) {
      out.src_ip = c.tunnel_src;
      out.dst_ip = c.tunnel_dst;
    }
    return {Go(out)};
  }
  std::vector<Step> operator()(const LoadBalancerConfig& c) const {
    if (c.backends.empty()) return {Stop(in, Fate::kDropped)};
    return {
        Step{in, Fate::kArrived, c.backends[in.src_ip % c.backends.size()]}};
  }
  std::vector<Step> operator()(const EndpointConfig&) const { return {Go(in)}; }
};

class Walker {
 public:
  explicit Walker(const Nffg& g) : g_(g) {}

  void Walk(const std::string& at, const Packet& p,
            std::vector<std::string>& hops,
            std::vector<ConcreteTrace>& out) const {
    const VnfInstance* node = nullptr;
    for (const auto& n : g_.nodes) {
      if (n.id == at) node = &n;
    }
    if (node == nullptr) {
      out.push_back({hops, Fate::kStranded, p});
      return;
    }
    for (const Step& s : std::visit(Behave{p}, node->config)) {
      if (s.fate != Fate::kArrived) {
        out.push_back({hops, s.fate, s.packet});
        continue;
      }
      std::string next = s.next.empty() ? ByRules(at, s.packet)
                                        : (Linked(at, s.next) ? s.next : "");
      if (next.empty()) {
        out.push_back({hops, Fate::kStranded, s.packet});
        continue;
      }
      if (std::find(hops.begin(), hops.end(), next) != hops.end()) {
        throw CyclicRouteError("packet " + ToString(p) + " loops at " + next);
      }
      hops.push_back(next);
      if (IsEndpoint(next)) {
        out.push_back({hops, Fate::kArrived, s.packet});
      } else {
        Walk(next, s.packet, hops, out);
      }
      hops.pop_back();
    }
  }

 private:
  bool IsEndpoint(const std::string& id) const {
    for (const auto& e : g_.endpoints) {
      if (e.id == id) return true;
    }
    return false;
  }

  bool Linked(const std::string& from, const std::string& to) const {
    for (const auto& l : g_.links) {
      if (l.from.node == from && l.to.node == to) return true;
    }
    return false;
  }

  // Highest-priority matching rule at `at`, then the link out of its port.
  std::string ByRules(const std::string& at, const Packet& p) const {
    const ForwardingRule* best = nullptr;
    for (const auto& r : g_.rules) {
      if (r.node != at || !Matches(r.match, p)) continue;
      if (best == nullptr || r.priority > best->priority) best = &r;
    }
    if (best == nullptr) return "";
    for (const auto& l : g_.links) {
      if (l.from.node == at && l.from.port == best->out_port) {
        return l.to.node;
      }
    }
    return "";
  }

  const Nffg& g_;
};

int FieldBits(int domain_bits, int field) {
  return domain_bits / kNumNumericFields +
         (field < domain_bits % kNumNumericFields ? 1 : 0);
}

}  // namespace

std::string_view FateName(Fate f) {
  switch (f) {
    case Fate::kArrived:
      return "ARRIVED";
    case Fate::kDropped:
      return "DROPPED";
    case Fate::kAnsweredLocally:
      return "ANSWERED_LOCALLY";
    case Fate::kStranded:
      return "STRANDED";
  }
  return "?";
}

std::vector<ConcreteTrace> TracePacket(const Nffg& g, const std::string& from,
                                       const Packet& packet) {
  std::vector<ConcreteTrace> out;
  std::vector<std::string> hops = {from};
  Walker(g).Walk(from, packet, hops, out);
  return out;
}

bool PacketArrives(const Nffg& g, const std::string& from,
                   const std::string& to, const Packet& packet) {
  for (const auto& t : TracePacket(g, from, packet)) {
    if (t.fate == Fate::kArrived && t.hops.back() == to) return true;
  }
  return false;
}

PacketClass ReducedDomain(int domain_bits) {
  if (domain_bits < 0 || domain_bits > kMaxDomainBits) {
    throw DomainTooLarge("oracle domain of " + std::to_string(domain_bits) +
                         " bits; at most " + std::to_string(kMaxDomainBits));
  }
  PacketClass c = PacketClass::Full();
  for (int f = 0; f < kNumNumericFields; ++f) {
    uint32_t hi = (1u << FieldBits(domain_bits, f)) - 1;
    c = c.With(static_cast<Field>(f), IntervalSet::Range(0, hi));
  }
  return c;
}

bool OracleReachability(const Nffg& g, const Policy& p, int domain_bits) {
  ReducedDomain(domain_bits);  // range check
  std::array<uint32_t, kNumNumericFields> size;
  for (int f = 0; f < kNumNumericFields; ++f) {
    size[f] = 1u << FieldBits(domain_bits, f);
  }
  Packet pk;
  for (pk.src_ip = 0; pk.src_ip < size[0]; ++pk.src_ip) {
    for (pk.dst_ip = 0; pk.dst_ip < size[1]; ++pk.dst_ip) {
      for (pk.src_port = 0; pk.src_port < size[2]; ++pk.src_port) {
        for (pk.dst_port = 0; pk.dst_port < size[3]; ++pk.dst_port) {
          for (int pr = 0; pr < kNumProtos; ++pr) {
            for (int app = 0; app < kNumAppClasses; ++app) {
              for (int sp = 0; sp < kNumSpamFlags; ++sp) {
                pk.proto = static_cast<Proto>(pr);
                pk.app = static_cast<AppClass>(app);
                pk.spam = static_cast<SpamFlag>(sp);
                if (Matches(p.traffic, pk) &&
                    PacketArrives(g, p.from, p.to, pk)) {
                  return true;
                }
              }
            }
          }
        }
      }
    }
  }
  return false;
}

}  // namespace spdevops
