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

#include "spdevops/vnf_models.h"

#include "spdevops/errors.h"

namespace spdevops {
namespace {

constexpr FieldMask kSrcIpBit = MaskOf(Field::kSrcIp);
constexpr FieldMask kDstIpBit = MaskOf(Field::kDstIp);
constexpr FieldMask kSrcPortBit = MaskOf(Field::kSrcPort);
constexpr FieldMask kDstPortBit = MaskOf(Field::kDstPort);

// Maps a forward-direction field mask onto the reply direction.
FieldMask ReverseMask(FieldMask m) {
  FieldMask out = m & ~(kSrcIpBit | kDstIpBit | kSrcPortBit | kDstPortBit);
  if (m & kSrcIpBit) out |= kDstIpBit;
  if (m & kDstIpBit) out |= kSrcIpBit;
  if (m & kSrcPortBit) out |= kDstPortBit;
  if (m & kDstPortBit) out |= kSrcPortBit;
  return out;
}

Outcome Pass(const PacketClass& c) {
  return Outcome{c, c, Disposition::kForward, Branch::kMust, 0, {}};
}

Outcome Drop(const PacketClass& c) {
  return Outcome{c, c, Disposition::kDrop, Branch::kMust, 0, {}};
}

// Splits `in` on `field` into (inside prefix, outside prefix).
std::pair<PacketClass, PacketClass> SplitOn(const PacketClass& in, Field field,
                                            const IntervalSet& prefix) {
  const IntervalSet& values = in.numeric(field);
  return {in.With(field, values.Intersect(prefix)),
          in.With(field, values.Subtract(prefix))};
}

// Forward rewrite shared by NAT and VPN: the part of `in` whose source lies in
// `prefix` gets `rewrite` applied and a binding recorded.
template <typename RewriteFn>
void RewriteForward(const PacketClass& in, const IntervalSet& prefix,
                    FieldMask rewritten, RewriteFn rewrite,
                    TransferResult& out) {
  auto [inside, outside] = SplitOn(in, Field::kSrcIp, prefix);
  if (!inside.IsEmpty()) {
    PacketClass translated = rewrite(inside);
    out.outcomes.push_back(Outcome{inside,
                                   translated,
                                   Disposition::kForward,
                                   Branch::kMust,
                                   rewritten,
                                   {}});
    out.bindings.Record({inside, translated, rewritten});
  }
  if (!outside.IsEmpty()) out.outcomes.push_back(Pass(outside));
}

// Return-path translation through recorded bindings. `bound` is the part of
// the input addressed to the translated side; everything else passes.
void RewriteReturn(const PacketClass& bound,
                   const std::vector<PacketClass>& passthrough, bool strict,
                   TransferResult& out) {
  std::vector<PacketClass> remaining;
  if (!bound.IsEmpty()) remaining.push_back(bound);
  for (const auto& b : out.bindings.entries()) {
    PacketClass pattern = b.translated.Reversed();
    PacketClass original_reply = b.original.Reversed();
    FieldMask restore = ReverseMask(b.rewritten);
    std::vector<PacketClass> next;
    for (const auto& piece : remaining) {
      PacketClass hit = piece.Intersect(pattern);
      if (hit.IsEmpty()) {
        next.push_back(piece);
        continue;
      }
      PacketClass restored = hit;
      for (int f = 0; f < kNumFields; ++f) {
        if (restore & (1u << f)) {
          restored =
              restored.WithFieldFrom(static_cast<Field>(f), original_reply);
        }
      }
      out.outcomes.push_back(Outcome{
          hit, restored, Disposition::kForward, Branch::kMust, restore, {}});
      auto rest = piece.Subtract(pattern);
      next.insert(next.end(), rest.begin(), rest.end());
    }
    remaining = std::move(next);
  }
  for (const auto& piece : remaining) {
    if (strict) {
      throw UnknownBinding("no binding for return-path class " +
                           piece.ToString());
    }
    out.outcomes.push_back(Drop(piece));
  }
  for (const auto& c : passthrough) {
    if (!c.IsEmpty()) out.outcomes.push_back(Pass(c));
  }
}

void TransferNat(const NatConfig& nat, const PacketClass& in,
                 Direction direction, bool strict, TransferResult& out) {
  if (direction == Direction::kForwardPath) {
    RewriteForward(
        in, nat.internal_prefix, kSrcIpBit,
        [&](const PacketClass& c) {
          return c.With(Field::kSrcIp, IntervalSet::Single(nat.public_ip));
        },
        out);
    return;
  }
  auto [bound, other] =
      SplitOn(in, Field::kDstIp, IntervalSet::Single(nat.public_ip));
  RewriteReturn(bound, {other}, strict, out);
}

void TransferVpn(const VpnConfig& vpn, const PacketClass& in,
                 Direction direction, bool strict, TransferResult& out) {
  if (direction == Direction::kForwardPath) {
    RewriteForward(
        in, vpn.inner_prefix, kSrcIpBit | kDstIpBit,
        [&](const PacketClass& c) {
          return c.With(Field::kSrcIp, IntervalSet::Single(vpn.tunnel_src))
              .With(Field::kDstIp, IntervalSet::Single(vpn.tunnel_dst));
        },
        out);
    return;
  }
  PacketClass tunnel =
      PacketClass::Full()
          .With(Field::kSrcIp, IntervalSet::Single(vpn.tunnel_dst))
          .With(Field::kDstIp, IntervalSet::Single(vpn.tunnel_src));
  RewriteReturn(in.Intersect(tunnel), in.Subtract(tunnel), strict, out);
}

void TransferAcl(const AclConfig& acl, const PacketClass& in,
                 TransferResult& out) {
  std::vector<PacketClass> remaining = {in};
  auto emit = [&](const PacketClass& c, AclAction action) {
    out.outcomes.push_back(action == AclAction::kPermit ? Pass(c) : Drop(c));
  };
  for (const auto& rule : acl.rules) {
    std::vector<PacketClass> next;
    for (const auto& piece : remaining) {
      PacketClass hit = piece.Intersect(rule.match);
      if (!hit.IsEmpty()) emit(hit, rule.action);
      auto rest = piece.Subtract(rule.match);
      next.insert(next.end(), rest.begin(), rest.end());
    }
    remaining = std::move(next);
    if (remaining.empty()) return;
  }
  for (const auto& piece : remaining) emit(piece, acl.default_action);
}

void TransferCache(const PacketClass& in, TransferResult& out) {
  PacketClass web = in.WithApps(in.app_mask() & Bit(AppClass::kWeb));
  PacketClass other = in.WithApps(in.app_mask() & ~Bit(AppClass::kWeb));
  if (!web.IsEmpty()) {
    out.outcomes.push_back(
        Outcome{web, web, Disposition::kAnswerLocally, Branch::kMay, 0, {}});
    out.outcomes.push_back(
        Outcome{web, web, Disposition::kForward, Branch::kMay, 0, {}});
  }
  if (!other.IsEmpty()) out.outcomes.push_back(Pass(other));
}

void TransferAntispam(const PacketClass& in, TransferResult& out) {
  PacketClass spam = in.WithSpam(in.spam_mask() & Bit(SpamFlag::kSpam));
  PacketClass ham = in.WithSpam(in.spam_mask() & Bit(SpamFlag::kHam));
  if (!spam.IsEmpty()) out.outcomes.push_back(Drop(spam));
  if (!ham.IsEmpty()) out.outcomes.push_back(Pass(ham));
}

void TransferLoadBalancer(const LoadBalancerConfig& lb, const PacketClass& in,
                          TransferResult& out) {
  const uint32_t n = static_cast<uint32_t>(lb.backends.size());
  if (n == 0) {
    out.outcomes.push_back(Drop(in));
    return;
  }
  for (uint32_t i = 0; i < n; ++i) {
    PacketClass part = in.With(
        Field::kSrcIp, IntervalSet::Residue(in.numeric(Field::kSrcIp), n, i));
    if (part.IsEmpty()) continue;
    Outcome o = Pass(part);
    o.next_node = lb.backends[i];
    out.outcomes.push_back(std::move(o));
  }
}

}  // namespace

std::string_view DispositionName(Disposition d) {
  switch (d) {
    case Disposition::kForward:
      return "FORWARD";
    case Disposition::kDrop:
      return "DROP";
    case Disposition::kAnswerLocally:
      return "ANSWER_LOCALLY";
  }
  return "?";
}

void NatBindingTable::Record(BindingEntry e) {
  for (const auto& existing : entries_) {
    if (existing == e) return;
  }
  entries_.push_back(std::move(e));
}

TransferResult Transfer(const VnfConfig& config, const PacketClass& in,
                        Direction direction, const NatBindingTable& bindings,
                        bool strict) {
  TransferResult out{{}, bindings};
  if (in.IsEmpty()) return out;
  switch (KindOf(config)) {
    case VnfKind::kNat:
      TransferNat(std::get<NatConfig>(config), in, direction, strict, out);
      break;
    case VnfKind::kAclFw:
      TransferAcl(std::get<AclConfig>(config), in, out);
      break;
    case VnfKind::kWebCache:
      TransferCache(in, out);
      break;
    case VnfKind::kAntispam:
      TransferAntispam(in, out);
      break;
    case VnfKind::kVpnGw:
      TransferVpn(std::get<VpnConfig>(config), in, direction, strict, out);
      break;
    case VnfKind::kLoadBalancer:
      TransferLoadBalancer(std::get<LoadBalancerConfig>(config), in, out);
      break;
    case VnfKind::kEndpoint:
      out.outcomes.push_back(Pass(in));
      break;
  }
  return out;
}

PacketClass NatRoundtrip(const NatConfig& config, const PacketClass& in) {
  TransferResult fwd =
      Transfer(config, in, Direction::kForwardPath, NatBindingTable{});
  for (const auto& o : fwd.outcomes) {
    if (o.rewritten == 0) continue;
    TransferResult back = Transfer(config, o.klass.Reversed(),
                                   Direction::kReturnPath, fwd.bindings);
    for (const auto& r : back.outcomes) {
      if (r.disposition == Disposition::kForward && r.rewritten != 0) {
        return r.klass.Reversed();
      }
    }
  }
  return PacketClass::Empty();
}

}  // namespace spdevops
