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

#include "spdevops/tsg.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "spdevops/nffg_json.h"
#include "spdevops/scenario.h"

namespace spdevops {

using nlohmann::json;

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool IsIdent(const std::string& s) {
  if (s.empty() ||
      !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string StripComment(const std::string& s) {
  bool quoted = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

struct Statement {
  std::string text;
  int line = 0;
};

// Joins a decision's continuation lines into one statement.
std::vector<Statement> Statements(const std::string& text) {
  std::vector<Statement> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  int depth = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = Trim(StripComment(raw));
    if (s.empty()) continue;
    if (depth > 0) {
      out.back().text += " " + s;
    } else {
      out.push_back({s, line});
    }
    for (char c : s) {
      if (c == '{') ++depth;
      if (c == '}') --depth;
    }
    if (depth < 0) throw ParseError("unbalanced '}'", line);
  }
  if (depth > 0) throw ParseError("unterminated '{'", out.back().line);
  return out;
}

std::vector<std::pair<std::string, std::string>> ParseArgs(const std::string& s,
                                                           int line) {
  std::vector<std::pair<std::string, std::string>> out;
  if (Trim(s).empty()) return out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw ParseError("tool argument '" + Trim(item) + "' is not key=value",
                       line);
    }
    std::string key = Trim(item.substr(0, eq));
    std::string value = Trim(item.substr(eq + 1));
    if (!IsIdent(key))
      throw ParseError("bad argument name '" + key + "'", line);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (value.empty()) throw ParseError("empty value for " + key, line);
    for (const auto& [k, v] : out) {
      if (k == key) throw ParseError("duplicate argument " + key, line);
    }
    out.emplace_back(key, value);
  }
  return out;
}

void ParseTool(TsgNode& n, const std::string& rest, int line) {
  n.kind = TsgNodeKind::kTool;
  size_t open = rest.find('(');
  n.tool = Trim(rest.substr(0, open));
  if (!IsIdent(n.tool))
    throw ParseError("bad tool name '" + n.tool + "'", line);
  if (open == std::string::npos) return;
  if (rest.back() != ')')
    throw ParseError("expected ')' after arguments", line);
  n.args = ParseArgs(rest.substr(open + 1, rest.size() - open - 2), line);
}

void ParseDecision(TsgNode& n, const std::string& rest, int line) {
  n.kind = TsgNodeKind::kDecision;
  if (rest.empty() || rest.front() != '{' || rest.back() != '}') {
    throw ParseError("decision needs {label: expr, ...}", line);
  }
  const std::string body = rest.substr(1, rest.size() - 2);
  size_t pos = 0;
  auto skip = [&] {
    while (pos < body.size() &&
           std::isspace(static_cast<unsigned char>(body[pos])))
      ++pos;
  };
  while (true) {
    skip();
    if (pos >= body.size()) break;
    size_t start = pos;
    while (pos < body.size() &&
           (std::isalnum(static_cast<unsigned char>(body[pos])) ||
            body[pos] == '_')) {
      ++pos;
    }
    std::string label = body.substr(start, pos - start);
    if (!IsIdent(label)) throw ParseError("expected a branch label", line);
    if (!n.branches.empty() && !n.branches.back().guard) {
      throw ParseError("'else' must be the last branch", line);
    }
    skip();
    DecisionBranch br;
    br.label = label;
    if (label == "else" && (pos >= body.size() || body[pos] == ',')) {
      // No guard.
    } else {
      if (pos >= body.size() || body[pos] != ':') {
        throw ParseError("expected ':' after branch " + label, line);
      }
      ++pos;
      try {
        br.guard = Expr::ParsePrefix(body, pos);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
      }
    }
    for (const auto& b : n.branches) {
      if (b.label == label) {
        throw UnlabeledBranchError("duplicate branch label " + label, line);
      }
    }
    n.branches.push_back(std::move(br));
    skip();
    if (pos >= body.size()) break;
    if (body[pos] != ',') {
      throw ParseError(
          "expected ',' between branches, got '" + body.substr(pos) + "'",
          line);
    }
    ++pos;
  }
  if (n.branches.empty()) throw ParseError("decision without branches", line);
}

void ParseSink(TsgNode& n, const std::string& rest, int line) {
  n.kind = TsgNodeKind::kSink;
  if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"') {
    throw ParseError("sink needs a quoted verdict", line);
  }
  n.verdict = rest.substr(1, rest.size() - 2);
}

// Splits `word rest` at the first run of blanks.
std::pair<std::string, std::string> Head(const std::string& s) {
  size_t sp = s.find_first_of(" \t");
  if (sp == std::string::npos) return {s, ""};
  return {s.substr(0, sp), Trim(s.substr(sp))};
}

json ValueToJson(const Value& v) {
  if (const double* d = std::get_if<double>(&v)) return *d;
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::vector<double>>(v);
}

// Walks every combination of decision choices and fails if one of them
// activates two sinks. Tools fan out to all successors, so two sinks are
// reachable whenever a fan-out never reconverges.
void CheckSingleSink(const Tsg& t, const std::vector<std::string>& order) {
  constexpr int kMaxRuns = 1 << 16;
  int runs = 0;
  std::function<void(size_t, std::set<std::string>, int)> walk =
      [&](size_t i, std::set<std::string> active, int sinks) {
        for (; i < order.size(); ++i) {
          if (!active.count(order[i])) continue;
          const TsgNode& n = *t.Find(order[i]);
          if (n.kind == TsgNodeKind::kSink) {
            if (++sinks > 1) {
              throw ParseError(
                  "a run can reach two sinks, the second being " + n.id,
                  n.line);
            }
          } else if (n.kind == TsgNodeKind::kTool) {
            for (const TsgEdge* e : t.OutEdges(n.id)) active.insert(e->to);
          } else {
            for (const TsgEdge* e : t.OutEdges(n.id)) {
              auto next = active;
              next.insert(e->to);
              walk(i + 1, std::move(next), sinks);
            }
            return;
          }
        }
        if (++runs > kMaxRuns) {
          throw ParseError("too many decision paths to check");
        }
      };
  walk(0, {t.entry}, 0);
}

}  // namespace

std::string_view TsgNodeKindName(TsgNodeKind k) {
  switch (k) {
    case TsgNodeKind::kTool:
      return "tool";
    case TsgNodeKind::kDecision:
      return "decision";
    case TsgNodeKind::kSink:
      return "sink";
  }
  return "?";
}

const TsgNode* Tsg::Find(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<const TsgEdge*> Tsg::OutEdges(const std::string& id) const {
  std::vector<const TsgEdge*> out;
  for (const auto& e : edges) {
    if (e.from == id) out.push_back(&e);
  }
  return out;
}

std::vector<std::string> Tsg::TopologicalOrder() const {
  std::map<std::string, int> indegree;
  for (const auto& n : nodes) indegree[n.id] = 0;
  for (const auto& e : edges) ++indegree[e.to];
  std::vector<std::string> order;
  std::set<std::string> done;
  while (order.size() < nodes.size()) {
    const TsgNode* next = nullptr;
    for (const auto& n : nodes) {
      if (!done.count(n.id) && indegree[n.id] == 0) {
        next = &n;
        break;
      }
    }
    if (next == nullptr) {
      std::string rest;
      for (const auto& n : nodes) {
        if (!done.count(n.id)) rest += (rest.empty() ? "" : ", ") + n.id;
      }
      throw CycleError("troubleshooting graph has a cycle through " + rest);
    }
    done.insert(next->id);
    order.push_back(next->id);
    for (const auto& e : edges) {
      if (e.from == next->id) --indegree[e.to];
    }
  }
  return order;
}

Tsg ParseTsg(const std::string& text) {
  Tsg t;
  std::vector<int> edge_lines;
  int entry_line = 0;
  for (const auto& st : Statements(text)) {
    auto [word, rest] = Head(st.text);
    if (word == "node") {
      size_t eq = rest.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected node <id> = ...", st.line);
      TsgNode n;
      n.id = Trim(rest.substr(0, eq));
      n.line = st.line;
      if (!IsIdent(n.id))
        throw ParseError("bad node id '" + n.id + "'", st.line);
      if (t.Find(n.id) != nullptr) {
        throw ParseError("duplicate node " + n.id, st.line);
      }
      auto [kind, body] = Head(Trim(rest.substr(eq + 1)));
      if (kind == "tool") {
        ParseTool(n, body, st.line);
      } else if (kind.rfind("decision", 0) == 0) {
        // `decision{` without a blank is fine too.
        ParseDecision(n, Trim(kind.substr(8) + " " + body), st.line);
      } else if (kind == "sink") {
        ParseSink(n, body, st.line);
      } else {
        throw ParseError("unknown node kind '" + kind + "'", st.line);
      }
      t.nodes.push_back(std::move(n));
    } else if (word == "edge") {
      size_t arrow = rest.find("->");
      if (arrow == std::string::npos)
        throw ParseError("expected edge a -> b", st.line);
      std::string from = Trim(rest.substr(0, arrow));
      TsgEdge e;
      e.to = Trim(rest.substr(arrow + 2));
      size_t colon = from.find(':');
      if (colon != std::string::npos) {
        e.label = Trim(from.substr(colon + 1));
        from = Trim(from.substr(0, colon));
        if (!IsIdent(e.label)) throw ParseError("bad branch label", st.line);
      }
      e.from = from;
      t.edges.push_back(e);
      edge_lines.push_back(st.line);
    } else if (word == "entry") {
      if (!t.entry.empty()) throw ParseError("entry given twice", st.line);
      t.entry = rest;
      entry_line = st.line;
    } else {
      throw ParseError("unknown statement '" + word + "'", st.line);
    }
  }
  if (t.nodes.empty()) throw ParseError("troubleshooting graph has no nodes");
  if (t.entry.empty()) t.entry = t.nodes.front().id;
  if (t.Find(t.entry) == nullptr) {
    throw ParseError("unknown entry node " + t.entry, entry_line);
  }

  for (size_t i = 0; i < t.edges.size(); ++i) {
    const TsgEdge& e = t.edges[i];
    const int line = edge_lines[i];
    const TsgNode* from = t.Find(e.from);
    if (from == nullptr) throw ParseError("unknown node " + e.from, line);
    if (t.Find(e.to) == nullptr) throw ParseError("unknown node " + e.to, line);
    if (from->kind == TsgNodeKind::kSink) {
      throw ParseError("sink " + e.from + " cannot have out-edges", line);
    }
    if (from->kind == TsgNodeKind::kDecision) {
      if (e.label.empty()) {
        throw UnlabeledBranchError(
            "edge from decision " + e.from + " needs a branch label", line);
      }
      bool known = std::any_of(
          from->branches.begin(), from->branches.end(),
          [&](const DecisionBranch& b) { return b.label == e.label; });
      if (!known) {
        throw ParseError("decision " + e.from + " has no branch " + e.label,
                         line);
      }
    } else if (!e.label.empty()) {
      throw ParseError("only decision edges carry labels", line);
    }
    for (size_t j = 0; j < i; ++j) {
      const TsgEdge& p = t.edges[j];
      if (p.from != e.from) continue;
      if (!e.label.empty() && p.label == e.label) {
        throw UnlabeledBranchError(
            "branch " + e.label + " of " + e.from + " has two edges", line);
      }
      if (e.label.empty() && p.to == e.to) {
        throw ParseError("duplicate edge " + e.from + " -> " + e.to, line);
      }
    }
  }

  for (const auto& n : t.nodes) {
    auto out = t.OutEdges(n.id);
    if (n.kind != TsgNodeKind::kSink && out.empty()) {
      throw ParseError("node " + n.id + " leads nowhere", n.line);
    }
    for (const auto& b : n.branches) {
      bool wired = std::any_of(out.begin(), out.end(), [&](const TsgEdge* e) {
        return e->label == b.label;
      });
      if (!wired) {
        throw ParseError("branch " + b.label + " of " + n.id + " has no edge",
                         n.line);
      }
    }
  }

  const auto order = t.TopologicalOrder();  // throws CycleError

  std::set<std::string> seen = {t.entry};
  std::vector<std::string> stack = {t.entry};
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    for (const TsgEdge* e : t.OutEdges(id)) {
      if (seen.insert(e->to).second) stack.push_back(e->to);
    }
  }
  for (const auto& n : t.nodes) {
    if (!seen.count(n.id)) {
      throw ParseError("node " + n.id + " is unreachable from " + t.entry,
                       n.line);
    }
  }
  CheckSingleSink(t, order);
  return t;
}

Tsg LoadTsgFile(const std::string& path) { return ParseTsg(ReadFile(path)); }

std::vector<std::string> Diagnosis::Path() const {
  std::vector<std::string> out;
  for (const auto& s : steps) out.push_back(s.node);
  return out;
}

Diagnosis RunTsg(const Tsg& t, ToolBox& tools) {
  Diagnosis d;
  Bindings bindings;
  std::set<std::string> active = {t.entry};
  for (const std::string& id : t.TopologicalOrder()) {
    if (!active.count(id)) continue;
    const TsgNode& n = *t.Find(id);
    DiagnosisStep step;
    step.node = id;
    step.kind = n.kind;
    switch (n.kind) {
      case TsgNodeKind::kTool: {
        step.result = tools.Run(n.tool, n.args);
        for (const auto& [metric, value] : step.result.values) {
          bindings[id + "." + metric] = value;
        }
        for (const TsgEdge* e : t.OutEdges(id)) active.insert(e->to);
        break;
      }
      case TsgNodeKind::kDecision: {
        step.branch = DecisionEval(n.branches, bindings);
        for (const TsgEdge* e : t.OutEdges(id)) {
          if (e->label == step.branch) active.insert(e->to);
        }
        break;
      }
      case TsgNodeKind::kSink:
        if (!d.verdict.empty()) {
          throw TsgRunError("run reached a second sink " + id + " after '" +
                            d.verdict + "'");
        }
        d.verdict = n.verdict;
        break;
    }
    d.steps.push_back(std::move(step));
  }
  if (d.verdict.empty()) throw TsgRunError("run reached no sink");
  return d;
}

Diagnosis RunTsg(const Tsg& t, Scenario& sim) {
  SimulationTools tools(sim);
  return RunTsg(t, tools);
}

std::string DiagnosisToJson(const Diagnosis& d) {
  json steps = json::array();
  for (const auto& s : d.steps) {
    json j = {{"node", s.node}, {"kind", std::string(TsgNodeKindName(s.kind))}};
    if (s.kind == TsgNodeKind::kTool) {
      json values = json::object();
      for (const auto& [k, v] : s.result.values) values[k] = ValueToJson(v);
      j["tool"] = s.result.tool;
      j["values"] = values;
      j["raw"] = s.result.raw;
    } else if (s.kind == TsgNodeKind::kDecision) {
      j["branch"] = s.branch;
    }
    steps.push_back(j);
  }
  json out = {{"verdict", d.verdict}, {"path", d.Path()}, {"steps", steps}};
  return out.dump(2) + "\n";
}

std::string DiagnosisToText(const Diagnosis& d) {
  std::ostringstream os;
  int i = 0;
  for (const auto& s : d.steps) {
    os << ++i << ". " << s.node << " [" << TsgNodeKindName(s.kind) << "]";
    if (s.kind == TsgNodeKind::kTool) {
      os << " " << s.result.tool;
      for (const auto& [k, v] : s.result.values)
        os << " " << k << "=" << ToString(v);
      if (!s.result.raw.empty()) os << "\n     " << s.result.raw;
    } else if (s.kind == TsgNodeKind::kDecision) {
      os << " -> " << s.branch;
    }
    os << "\n";
  }
  os << "verdict: " << d.verdict << "\n";
  return os.str();
}

}  // namespace spdevops
