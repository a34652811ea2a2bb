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

#ifndef SPDEVOPS_TSG_H_
#define SPDEVOPS_TSG_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spdevops/errors.h"
#include "spdevops/expr.h"

namespace spdevops {

class Scenario;

// Troubleshooting graphs. The text format has one statement per line:
//
//   node <id> = tool <name>(<key>=<value>, ...)
//   node <id> = decision {<label>: <expr>, ..., else}
//   node <id> = sink "<verdict>"
//   edge <from>[:<label>] -> <to>
//   entry <id>
//
// `#` starts a comment. A decision may continue over several lines until
// its closing brace. The entry defaults to the first node declared.

class CycleError : public Error {
 public:
  using Error::Error;
};

class UnlabeledBranchError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownTool : public Error {
 public:
  using Error::Error;
};

class UnknownTarget : public Error {
 public:
  using Error::Error;
};

// A symbolic name with no counterpart in the current graph.
class UnresolvedReference : public Error {
 public:
  using Error::Error;
};

class InvalidToolArgs : public Error {
 public:
  using Error::Error;
};

// A run that reaches no sink or more than one.
class TsgRunError : public Error {
 public:
  using Error::Error;
};

enum class TsgNodeKind : uint8_t { kTool, kDecision, kSink };

std::string_view TsgNodeKindName(TsgNodeKind k);

struct TsgNode {
  std::string id;
  TsgNodeKind kind = TsgNodeKind::kTool;
  std::string tool;
  std::vector<std::pair<std::string, std::string>> args;  // in given order
  std::vector<DecisionBranch> branches;
  std::string verdict;
  int line = 0;
};

struct TsgEdge {
  std::string from;
  std::string label;  // decision branch, empty otherwise
  std::string to;
};

struct Tsg {
  std::vector<TsgNode> nodes;
  std::vector<TsgEdge> edges;
  std::string entry;

  const TsgNode* Find(const std::string& id) const;
  std::vector<const TsgEdge*> OutEdges(const std::string& id) const;
  // Node ids in topological order; declaration order breaks ties.
  std::vector<std::string> TopologicalOrder() const;
};

// Besides syntax, checks that the graph is acyclic, that every node is
// reachable from the entry and every non-sink has a way out, that decision
// edges carry distinct branch labels, and that no combination of decision
// outcomes reaches two sinks. Throws ParseError, UnlabeledBranchError or
// CycleError. Tool names and targets are checked only when run.
Tsg ParseTsg(const std::string& text);
Tsg LoadTsgFile(const std::string& path);

struct ToolResult {
  std::string tool;
  std::map<std::string, Value> values;
  std::string raw;

  friend bool operator==(const ToolResult&, const ToolResult&) = default;
};

// Executes tool nodes. Arguments arrive as written in the TSG.
class ToolBox {
 public:
  virtual ~ToolBox() = default;
  virtual ToolResult Run(
      const std::string& tool,
      const std::vector<std::pair<std::string, std::string>>& args) = 0;
};

// Tools over a live simulation. Symbolic targets are resolved against the
// simulation's current graph at each call:
//
//   firewall_group     the firewalls behind the load balancer
//   load_balancer      that load balancer
//   client             the first client endpoint
//   web_server, mail_server, other_server
//                      the server of the chain carrying that application
//   webcache_nat_link  the link leaving the web cache towards the NAT
//
// Concrete node ids work as well; a link may be given as `<from>-><to>`.
class SimulationTools : public ToolBox {
 public:
  explicit SimulationTools(Scenario& sim) : sim_(sim) {}

  ToolResult Run(
      const std::string& tool,
      const std::vector<std::pair<std::string, std::string>>& args) override;

 private:
  Scenario& sim_;
};

struct DiagnosisStep {
  std::string node;
  TsgNodeKind kind = TsgNodeKind::kTool;
  ToolResult result;   // tools
  std::string branch;  // decisions
  friend bool operator==(const DiagnosisStep&, const DiagnosisStep&) = default;
};

struct Diagnosis {
  std::vector<DiagnosisStep> steps;  // in execution order
  std::string verdict;

  std::vector<std::string> Path() const;
  friend bool operator==(const Diagnosis&, const Diagnosis&) = default;
};

// Runs `t` from its entry. Tools fan out to every successor; a decision
// forwards down exactly one branch. Throws ExprTypeError, the tool errors,
// or TsgRunError.
Diagnosis RunTsg(const Tsg& t, ToolBox& tools);
// Runs against `sim`, which the traffic generator advances.
Diagnosis RunTsg(const Tsg& t, Scenario& sim);

std::string DiagnosisToJson(const Diagnosis& d);
std::string DiagnosisToText(const Diagnosis& d);

}  // namespace spdevops

#endif  // SPDEVOPS_TSG_H_
