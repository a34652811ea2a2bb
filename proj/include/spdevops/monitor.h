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

#ifndef SPDEVOPS_MONITOR_H_
#define SPDEVOPS_MONITOR_H_

#include <map>
#include <string>
#include <vector>

#include "spdevops/nffg.h"
#include "spdevops/ratemon.h"

namespace spdevops {

// A node's monitoring function: one RateMon per port, publishing on
// `mf.rate.<node_id>` at node scope.
struct MonitorHandle {
  int id = 0;
  std::string node_id;
  std::vector<std::string> links;  // "<node>:<port>", one per port
  std::string topic;

  friend bool operator==(const MonitorHandle&, const MonitorHandle&) = default;
};

std::string MonitorTopic(const std::string& node_id);
std::string PortLinkId(const std::string& node_id, const std::string& port);

class MonitorRegistry {
 public:
  MonitorRegistry(double capacity, int window_size = kDefaultWindow)
      : capacity_(capacity), window_size_(window_size) {}

  // Attaches a RateMon to every port of `node_id`. Idempotent: a second
  // call returns the existing handle. Throws UnknownNode if the node is
  // missing from `g` or is an endpoint.
  MonitorHandle Deploy(const Nffg& g, const std::string& node_id);
  // Retires the node's monitors; false if it had none.
  bool Retire(const std::string& node_id);

  const MonitorHandle* Find(const std::string& node_id) const;
  RateMon* MonFor(const std::string& link_id);
  // Handles in deployment order.
  std::vector<MonitorHandle> Handles() const;
  int ActiveRateMons() const { return static_cast<int>(mons_.size()); }
  int deployments() const { return next_id_; }

 private:
  double capacity_;
  int window_size_;
  int next_id_ = 0;
  std::map<std::string, MonitorHandle> handles_;
  std::map<std::string, RateMon> mons_;
};

}  // namespace spdevops

#endif  // SPDEVOPS_MONITOR_H_
