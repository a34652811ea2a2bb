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

#include "spdevops/broker.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace spdevops {
namespace {

std::vector<std::string> Split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) out.push_back(part);
  return out;
}

}  // namespace

std::string_view ScopeName(Scope s) {
  switch (s) {
    case Scope::kNode:
      return "NODE";
    case Scope::kRegion:
      return "REGION";
    case Scope::kGlobal:
      return "GLOBAL";
  }
  return "?";
}

int ParentLinkTraversals(const Envelope& e) {
  return e.hop_trace.empty() ? 0 : static_cast<int>(e.hop_trace.size()) - 1;
}

bool TopicMatches(const std::string& pattern, const std::string& topic) {
  auto p = Split(pattern), t = Split(topic);
  if (p.size() != t.size()) return false;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] != "*" && p[i] != t[i]) return false;
  }
  return true;
}

void BrokerTree::AddBroker(const std::string& id, const std::string& parent) {
  if (parent_.count(id)) throw std::invalid_argument("duplicate broker " + id);
  if (parent.empty()) {
    for (const auto& [b, p] : parent_) {
      if (p.empty()) throw std::invalid_argument("second root broker " + id);
    }
  } else if (!parent_.count(parent)) {
    throw std::invalid_argument("unknown parent broker " + parent);
  }
  parent_[id] = parent;
}

void BrokerTree::Register(const std::string& client, const std::string& tenant,
                          const std::string& broker) {
  if (!parent_.count(broker)) {
    throw std::invalid_argument("unknown broker " + broker);
  }
  if (clients_.count(client)) {
    throw std::invalid_argument("client already registered: " + client);
  }
  clients_[client] = Client{tenant, broker, {}};
}

void BrokerTree::Unregister(const std::string& client) {
  clients_.erase(client);
}

void BrokerTree::Subscribe(const std::string& client,
                           const std::string& pattern) {
  auto it = clients_.find(client);
  if (it == clients_.end()) throw UnknownClient("unknown client " + client);
  auto& pats = it->second.patterns;
  if (std::find(pats.begin(), pats.end(), pattern) == pats.end()) {
    pats.push_back(pattern);
  }
}

void BrokerTree::Unsubscribe(const std::string& client,
                             const std::string& pattern) {
  auto it = clients_.find(client);
  if (it == clients_.end()) return;
  auto& pats = it->second.patterns;
  pats.erase(std::remove(pats.begin(), pats.end(), pattern), pats.end());
}

bool BrokerTree::IsRegistered(const std::string& client) const {
  return clients_.count(client) > 0;
}

const std::string& BrokerTree::BrokerOf(const std::string& client) const {
  auto it = clients_.find(client);
  if (it == clients_.end()) throw UnknownClient("unknown client " + client);
  return it->second.broker;
}

std::vector<std::string> BrokerTree::Ancestors(const std::string& b) const {
  std::vector<std::string> out;
  for (std::string at = b; !at.empty(); at = parent_.at(at)) out.push_back(at);
  return out;  // b first, root last
}

std::string BrokerTree::LowestCommonAncestor(const std::string& a,
                                             const std::string& b) const {
  auto up = Ancestors(b);
  for (const auto& x : Ancestors(a)) {
    if (std::find(up.begin(), up.end(), x) != up.end()) return x;
  }
  return "";
}

std::vector<std::string> BrokerTree::Path(const std::string& from,
                                          const std::string& to) const {
  std::string lca = LowestCommonAncestor(from, to);
  std::vector<std::string> path;
  for (const auto& x : Ancestors(from)) {
    path.push_back(x);
    if (x == lca) break;
  }
  std::vector<std::string> down;
  for (const auto& x : Ancestors(to)) {
    if (x == lca) break;
    down.push_back(x);
  }
  path.insert(path.end(), down.rbegin(), down.rend());
  return path;
}

std::string BrokerTree::ScopeRoot(const std::string& broker,
                                  Scope scope) const {
  auto up = Ancestors(broker);
  switch (scope) {
    case Scope::kNode:
      return up.front();
    case Scope::kRegion:
      return up.size() >= 2 ? up[1] : up.front();
    case Scope::kGlobal:
      return up.back();
  }
  return up.back();
}

bool BrokerTree::Under(const std::string& broker,
                       const std::string& root) const {
  auto up = Ancestors(broker);
  return std::find(up.begin(), up.end(), root) != up.end();
}

std::vector<Delivery> BrokerTree::Route(const Envelope& env) {
  auto sender = clients_.find(env.sender);
  if (sender == clients_.end()) {
    throw UnknownClient("unregistered sender " + env.sender);
  }
  ++routed_;
  const std::string& from = sender->second.broker;
  std::vector<Delivery> out;

  if (env.kind == EnvelopeKind::kNotify) {
    auto target = clients_.find(env.target);
    if (target == clients_.end() ||
        target->second.tenant != sender->second.tenant) {
      ++dead_letters_;
      return out;
    }
    Envelope copy = env;
    copy.tenant = sender->second.tenant;
    copy.hop_trace = Path(from, target->second.broker);
    out.push_back({env.target, std::move(copy)});
    delivered_ += 1;
    return out;
  }

  const std::string bound = ScopeRoot(from, env.scope);
  for (const auto& [id, c] : clients_) {
    if (c.tenant != sender->second.tenant) continue;
    if (!Under(c.broker, bound)) continue;
    bool wanted = std::any_of(
        c.patterns.begin(), c.patterns.end(),
        [&](const std::string& p) { return TopicMatches(p, env.topic); });
    if (!wanted) continue;
    Envelope copy = env;
    copy.tenant = c.tenant;
    copy.hop_trace = Path(from, c.broker);
    out.push_back({id, std::move(copy)});
  }
  delivered_ += static_cast<int64_t>(out.size());
  return out;
}

}  // namespace spdevops
