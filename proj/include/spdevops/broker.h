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

#ifndef SPDEVOPS_BROKER_H_
#define SPDEVOPS_BROKER_H_

#include <map>
#include <string>
#include <vector>

#include "spdevops/errors.h"

namespace spdevops {

// Hierarchical multi-tenant pub/sub: node-level leaf brokers under regional
// brokers under one root. A message climbs only as high as the lowest
// broker that covers every recipient, then descends.

enum class Scope : uint8_t { kNode, kRegion, kGlobal };
enum class EnvelopeKind : uint8_t { kPublish, kNotify };

std::string_view ScopeName(Scope s);

struct Envelope {
  std::string tenant;
  std::string topic;
  Scope scope = Scope::kNode;
  EnvelopeKind kind = EnvelopeKind::kPublish;
  std::string sender;  // client id
  std::string target;  // kNotify only
  std::string payload;
  std::vector<std::string> hop_trace;  // broker ids, in order
};

struct Delivery {
  std::string client;
  Envelope envelope;  // with this copy's hop_trace
};

// Hops in a trace that cross a parent link (one fewer than the brokers).
int ParentLinkTraversals(const Envelope& e);

// Dot-separated topics; a `*` segment in a subscription matches any one
// segment.
bool TopicMatches(const std::string& pattern, const std::string& topic);

class BrokerTree {
 public:
  // `parent` is empty for the root. Parents must be added first.
  void AddBroker(const std::string& id, const std::string& parent);
  void Register(const std::string& client, const std::string& tenant,
                const std::string& broker);
  void Unregister(const std::string& client);
  void Subscribe(const std::string& client, const std::string& pattern);
  void Unsubscribe(const std::string& client, const std::string& pattern);

  // Routes one envelope. Throws UnknownClient for an unregistered sender.
  // A NOTIFY to an unknown target is counted as a dead letter and dropped.
  std::vector<Delivery> Route(const Envelope& env);

  bool IsRegistered(const std::string& client) const;
  const std::string& BrokerOf(const std::string& client) const;
  // Path from `from` to `to` through their lowest common ancestor.
  std::vector<std::string> Path(const std::string& from,
                                const std::string& to) const;
  std::string LowestCommonAncestor(const std::string& a,
                                   const std::string& b) const;

  int64_t dead_letters() const { return dead_letters_; }
  int64_t routed() const { return routed_; }
  int64_t delivered() const { return delivered_; }

 private:
  struct Client {
    std::string tenant;
    std::string broker;
    std::vector<std::string> patterns;
  };

  std::vector<std::string> Ancestors(const std::string& broker) const;
  // The broker that bounds delivery for `scope` around `broker`.
  std::string ScopeRoot(const std::string& broker, Scope scope) const;
  bool Under(const std::string& broker, const std::string& root) const;

  std::map<std::string, std::string> parent_;
  std::map<std::string, Client> clients_;
  int64_t dead_letters_ = 0;
  int64_t routed_ = 0;
  int64_t delivered_ = 0;
};

}  // namespace spdevops

#endif  // SPDEVOPS_BROKER_H_
