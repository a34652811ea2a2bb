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

#include "spdevops/nffg_json.h"

#include <fstream>
#include <sstream>

namespace spdevops {

using nlohmann::json;

namespace {

constexpr std::array<Field, kNumNumericFields> kNumeric = {
    Field::kSrcIp, Field::kDstIp, Field::kSrcPort, Field::kDstPort};

const json& Require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(where + ": missing key '" + key + "'");
  }
  return j.at(key);
}

std::string RequireString(const json& j, const char* key,
                          const std::string& where) {
  const json& v = Require(j, key, where);
  if (!v.is_string()) {
    throw ParseError(where + ": key '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

uint32_t RequireAddress(const json& j, const char* key,
                        const std::string& where) {
  const json& v = Require(j, key, where);
  if (!v.is_number_unsigned() || v.get<uint64_t>() > IntervalSet::kMaxValue) {
    throw ParseError(where + ": key '" + key +
                     "' must be an integer in [0, 65535]");
  }
  return v.get<uint32_t>();
}

template <typename Enum, typename ParseFn>
uint8_t MaskFromJson(const json& j, ParseFn parse, const char* field) {
  if (!j.is_array()) {
    throw ParseError(std::string("match.") + field + " must be an array");
  }
  uint8_t mask = 0;
  for (const auto& v : j) {
    if (!v.is_string()) {
      throw ParseError(std::string("match.") + field + " entries are names");
    }
    std::optional<Enum> e = parse(v.template get<std::string>());
    if (!e) {
      throw ParseError(std::string("match.") + field + ": unknown value '" +
                       v.template get<std::string>() + "'");
    }
    mask |= Bit(*e);
  }
  return mask;
}

template <typename Enum, typename NameFn>
json MaskToJson(uint8_t mask, int n, NameFn name) {
  json out = json::array();
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i))
      out.push_back(std::string(name(static_cast<Enum>(i))));
  }
  return out;
}

std::vector<std::string> PortsFromJson(const json& j,
                                       const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": ports must be an array");
  std::vector<std::string> out;
  for (const auto& p : j) {
    if (!p.is_string()) throw ParseError(where + ": port ids are strings");
    out.push_back(p.get<std::string>());
  }
  return out;
}

NodePort NodePortFromJson(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() ||
      !j[1].is_string()) {
    throw ParseError(where + ": expected [node, port]");
  }
  return {j[0].get<std::string>(), j[1].get<std::string>()};
}

}  // namespace

json IntervalSetToJson(const IntervalSet& s) {
  json out = json::array();
  for (const auto& iv : s.intervals()) out.push_back({iv.lo, iv.hi});
  return out;
}

IntervalSet IntervalSetFromJson(const json& j) {
  if (!j.is_array()) throw ParseError("interval set must be an array");
  std::vector<Interval> ivs;
  for (const auto& e : j) {
    if (e.is_number_unsigned()) {
      uint64_t v = e.get<uint64_t>();
      if (v > IntervalSet::kMaxValue) throw ParseError("value out of range");
      ivs.push_back({static_cast<uint32_t>(v), static_cast<uint32_t>(v)});
    } else if (e.is_array() && e.size() == 2 && e[0].is_number_unsigned() &&
               e[1].is_number_unsigned()) {
      uint64_t lo = e[0].get<uint64_t>();
      uint64_t hi = e[1].get<uint64_t>();
      if (lo > hi || hi > IntervalSet::kMaxValue) {
        throw ParseError("bad interval [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
      }
      ivs.push_back({static_cast<uint32_t>(lo), static_cast<uint32_t>(hi)});
    } else {
      throw ParseError("interval entries are integers or [lo, hi] pairs");
    }
  }
  return IntervalSet::FromIntervals(std::move(ivs));
}

json PacketClassToJson(const PacketClass& c) {
  json out = json::object();
  if (c.IsEmpty()) {
    out["empty"] = true;
    return out;
  }
  for (Field f : kNumeric) {
    if (!c.numeric(f).IsFull()) {
      out[std::string(FieldName(f))] = IntervalSetToJson(c.numeric(f));
    }
  }
  if (c.proto_mask() != kAllProtos) {
    out["proto"] = MaskToJson<Proto>(c.proto_mask(), kNumProtos, ProtoName);
  }
  if (c.app_mask() != kAllApps) {
    out["app_class"] =
        MaskToJson<AppClass>(c.app_mask(), kNumAppClasses, AppClassName);
  }
  if (c.spam_mask() != kAllSpam) {
    out["spam_flag"] =
        MaskToJson<SpamFlag>(c.spam_mask(), kNumSpamFlags, SpamFlagName);
  }
  return out;
}

PacketClass PacketClassFromJson(const json& j) {
  if (!j.is_object()) throw ParseError("packet class must be an object");
  if (j.contains("empty") && j["empty"] == true) return PacketClass::Empty();
  PacketClass c = PacketClass::Full();
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    bool known = false;
    for (Field f : kNumeric) {
      if (key == FieldName(f)) {
        c = c.With(f, IntervalSetFromJson(it.value()));
        known = true;
      }
    }
    if (known) continue;
    if (key == "proto") {
      c = c.WithProtos(MaskFromJson<Proto>(it.value(), ParseProto, "proto"));
    } else if (key == "app_class") {
      c = c.WithApps(
          MaskFromJson<AppClass>(it.value(), ParseAppClass, "app_class"));
    } else if (key == "spam_flag") {
      c = c.WithSpam(
          MaskFromJson<SpamFlag>(it.value(), ParseSpamFlag, "spam_flag"));
    } else if (key != "empty") {
      throw ParseError("unknown match field '" + key + "'");
    }
  }
  return c;
}

json PacketToJson(const Packet& p) {
  return json{{"src_ip", p.src_ip},
              {"dst_ip", p.dst_ip},
              {"src_port", p.src_port},
              {"dst_port", p.dst_port},
              {"proto", std::string(ProtoName(p.proto))},
              {"app_class", std::string(AppClassName(p.app))},
              {"spam_flag", std::string(SpamFlagName(p.spam))}};
}

json VnfConfigToJson(const VnfConfig& config) {
  json out = json::object();
  if (const auto* nat = std::get_if<NatConfig>(&config)) {
    out["public_ip"] = nat->public_ip;
    out["internal_prefix"] = IntervalSetToJson(nat->internal_prefix);
  } else if (const auto* acl = std::get_if<AclConfig>(&config)) {
    json rules = json::array();
    for (const auto& r : acl->rules) {
      rules.push_back(
          {{"match", PacketClassToJson(r.match)},
           {"action", r.action == AclAction::kPermit ? "PERMIT" : "DENY"}});
    }
    out["rules"] = rules;
    out["default"] =
        acl->default_action == AclAction::kPermit ? "PERMIT" : "DENY";
  } else if (const auto* vpn = std::get_if<VpnConfig>(&config)) {
    out["tunnel_src"] = vpn->tunnel_src;
    out["tunnel_dst"] = vpn->tunnel_dst;
    out["inner_prefix"] = IntervalSetToJson(vpn->inner_prefix);
  } else if (const auto* lb = std::get_if<LoadBalancerConfig>(&config)) {
    out["backends"] = lb->backends;
  }
  return out;
}

VnfConfig VnfConfigFromJson(VnfKind kind, const json& j) {
  const std::string where = "config of " + std::string(VnfKindName(kind));
  if (!j.is_object()) throw ParseError(where + " must be an object");
  auto action = [&](const json& v) {
    if (v == "PERMIT") return AclAction::kPermit;
    if (v == "DENY") return AclAction::kDeny;
    throw ParseError(where + ": action must be PERMIT or DENY");
  };
  switch (kind) {
    case VnfKind::kNat:
      return NatConfig{
          RequireAddress(j, "public_ip", where),
          IntervalSetFromJson(Require(j, "internal_prefix", where))};
    case VnfKind::kAclFw: {
      AclConfig acl;
      if (j.contains("rules")) {
        if (!j["rules"].is_array()) {
          throw ParseError(where + ": rules must be an array");
        }
        for (const auto& r : j["rules"]) {
          acl.rules.push_back({PacketClassFromJson(Require(r, "match", where)),
                               action(Require(r, "action", where))});
        }
      }
      if (j.contains("default")) acl.default_action = action(j["default"]);
      return acl;
    }
    case VnfKind::kWebCache:
      return WebCacheConfig{};
    case VnfKind::kAntispam:
      return AntispamConfig{};
    case VnfKind::kVpnGw:
      return VpnConfig{RequireAddress(j, "tunnel_src", where),
                       RequireAddress(j, "tunnel_dst", where),
                       IntervalSetFromJson(Require(j, "inner_prefix", where))};
    case VnfKind::kLoadBalancer: {
      LoadBalancerConfig lb;
      if (j.contains("backends")) {
        lb.backends = PortsFromJson(j["backends"], where + ".backends");
      }
      return lb;
    }
    case VnfKind::kEndpoint:
      return EndpointConfig{};
  }
  throw ParseError(where + ": unsupported kind");
}

json NffgToJson(const Nffg& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    nodes.push_back({{"id", n.id},
                     {"kind", std::string(VnfKindName(n.kind()))},
                     {"config", VnfConfigToJson(n.config)},
                     {"ports", n.ports}});
  }
  json links = json::array();
  for (const auto& l : g.links) {
    links.push_back(
        {{"from", {l.from.node, l.from.port}}, {"to", {l.to.node, l.to.port}}});
  }
  json endpoints = json::array();
  for (const auto& e : g.endpoints) {
    endpoints.push_back(
        {{"id", e.id},
         {"role", e.role == EndpointRole::kClient ? "client" : "server"}});
  }
  json rules = json::array();
  for (const auto& r : g.rules) {
    rules.push_back({{"node", r.node},
                     {"priority", r.priority},
                     {"match", PacketClassToJson(r.match)},
                     {"out_port", r.out_port}});
  }
  return json{{"nodes", nodes},
              {"links", links},
              {"endpoints", endpoints},
              {"rules", rules},
              {"version", g.version}};
}

Nffg NffgFromJson(const json& j) {
  if (!j.is_object()) throw ParseError("NF-FG document must be an object");
  Nffg g;
  for (const auto& n : Require(j, "nodes", "NF-FG")) {
    std::string id = RequireString(n, "id", "node");
    std::string kind_name = RequireString(n, "kind", "node " + id);
    std::optional<VnfKind> kind = ParseVnfKind(kind_name);
    if (!kind) throw ParseError("node " + id + ": unknown kind " + kind_name);
    json config = n.contains("config") ? n["config"] : json::object();
    g.nodes.push_back(
        {id, VnfConfigFromJson(*kind, config),
         PortsFromJson(Require(n, "ports", "node " + id), "node " + id)});
  }
  if (j.contains("links")) {
    for (const auto& l : j["links"]) {
      g.links.push_back({NodePortFromJson(Require(l, "from", "link"), "link"),
                         NodePortFromJson(Require(l, "to", "link"), "link")});
    }
  }
  if (j.contains("endpoints")) {
    for (const auto& e : j["endpoints"]) {
      std::string role = RequireString(e, "role", "endpoint");
      if (role != "client" && role != "server") {
        throw ParseError("endpoint role must be client or server");
      }
      g.endpoints.push_back(
          {RequireString(e, "id", "endpoint"),
           role == "client" ? EndpointRole::kClient : EndpointRole::kServer});
    }
  }
  if (j.contains("rules")) {
    for (const auto& r : j["rules"]) {
      const json& prio = Require(r, "priority", "rule");
      if (!prio.is_number_integer()) {
        throw ParseError("rule priority must be an integer");
      }
      g.rules.push_back({RequireString(r, "node", "rule"), prio.get<int>(),
                         r.contains("match") ? PacketClassFromJson(r["match"])
                                             : PacketClass::Full(),
                         RequireString(r, "out_port", "rule")});
    }
  }
  if (j.contains("version")) {
    if (!j["version"].is_number_unsigned()) {
      throw ParseError("version must be a non-negative integer");
    }
    g.version = j["version"].get<uint64_t>();
  }
  return g;
}

std::string SerializeNffg(const Nffg& g) {
  return NffgToJson(g).dump(2) + "\n";
}

Nffg ParseNffg(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return NffgFromJson(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed NF-FG: ") + e.what());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Nffg LoadNffgFile(const std::string& path) { return ParseNffg(ReadFile(path)); }

}  // namespace spdevops
