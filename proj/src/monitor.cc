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

#include "spdevops/monitor.h"

#include <algorithm>

namespace spdevops {

std::string MonitorTopic(const std::string& node_id) {
  return "mf.rate." + node_id;
}

std::string PortLinkId(const std::string& node_id, const std::string& port) {
  return node_id + ":" + port;
}

MonitorHandle MonitorRegistry::Deploy(const Nffg& g,
                                      const std::string& node_id) {
  if (auto it = handles_.find(node_id); it != handles_.end()) {
    return it->second;
  }
  const VnfInstance* node = g.FindNode(node_id);
  if (node == nullptr || node->kind() == VnfKind::kEndpoint) {
    throw UnknownNode("no monitorable node " + node_id);
  }
  MonitorHandle h;
  h.id = ++next_id_;
  h.node_id = node_id;
  h.topic = MonitorTopic(node_id);
  for (const auto& port : node->ports) {
    std::string link = PortLinkId(node_id, port);
    h.links.push_back(link);
    mons_.emplace(link, RateMon(link, capacity_, window_size_));
  }
  handles_[node_id] = h;
  return h;
}

bool MonitorRegistry::Retire(const std::string& node_id) {
  auto it = handles_.find(node_id);
  if (it == handles_.end()) return false;
  for (const auto& link : it->second.links) mons_.erase(link);
  handles_.erase(it);
  return true;
}

const MonitorHandle* MonitorRegistry::Find(const std::string& node_id) const {
  auto it = handles_.find(node_id);
  return it == handles_.end() ? nullptr : &it->second;
}

RateMon* MonitorRegistry::MonFor(const std::string& link_id) {
  auto it = mons_.find(link_id);
  return it == mons_.end() ? nullptr : &it->second;
}

std::vector<MonitorHandle> MonitorRegistry::Handles() const {
  std::vector<MonitorHandle> out;
  for (const auto& [id, h] : handles_) out.push_back(h);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace spdevops
