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

#ifndef SPDEVOPS_NFFG_JSON_H_
#define SPDEVOPS_NFFG_JSON_H_

#include <string>

#include "json.hpp"
#include "spdevops/nffg.h"

namespace spdevops {

// JSON encodings of the NF-FG file format. Parsers throw ParseError.
//
// A PacketClass is an object with optional keys src_ip, dst_ip, src_port,
// dst_port (arrays of [lo, hi] pairs or bare integers) and proto, app_class,
// spam_flag (arrays of names). Omitted keys mean the full domain; the EMPTY
// class is {"empty": true}.

nlohmann::json IntervalSetToJson(const IntervalSet& s);
IntervalSet IntervalSetFromJson(const nlohmann::json& j);

nlohmann::json PacketClassToJson(const PacketClass& c);
PacketClass PacketClassFromJson(const nlohmann::json& j);

nlohmann::json PacketToJson(const Packet& p);

nlohmann::json VnfConfigToJson(const VnfConfig& config);
VnfConfig VnfConfigFromJson(VnfKind kind, const nlohmann::json& j);

nlohmann::json NffgToJson(const Nffg& g);
Nffg NffgFromJson(const nlohmann::json& j);

// Text helpers. ParseNffg also reports JSON syntax errors as ParseError.
std::string SerializeNffg(const Nffg& g);
Nffg ParseNffg(const std::string& text);
Nffg LoadNffgFile(const std::string& path);

// Reads a whole file or throws ParseError.
std::string ReadFile(const std::string& path);

}  // namespace spdevops

#endif  // SPDEVOPS_NFFG_JSON_H_
