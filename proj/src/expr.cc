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

#include "spdevops/expr.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace spdevops {

struct Expr::Node {
  enum class Kind { kNumber, kBool, kVar, kCall, kList, kUnary, kBinary };
  Kind kind;
  double number = 0.0;
  bool boolean = false;
  std::string name;  // variable, function or operator
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

std::string TypeName(const Value& v) {
  switch (v.index()) {
    case 0:
      return "number";
    case 1:
      return "bool";
    default:
      return "list";
  }
}

NodePtr Make(Kind k, std::string name = "", std::vector<NodePtr> args = {}) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->name = std::move(name);
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, size_t pos) : s_(text), pos_(pos) {}

  NodePtr Parse() { return Or(); }
  size_t pos() {
    Skip();
    return pos_;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) {
    throw ParseError("expression: " + what + " at offset " +
                     std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void Skip() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  // Consumes `tok` if it comes next. Words only match whole words.
  bool Eat(std::string_view tok) {
    Skip();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
      size_t end = pos_ + tok.size();
      if (end < s_.size() &&
          (std::isalnum(static_cast<unsigned char>(s_[end])) ||
           s_[end] == '_' || s_[end] == '.')) {
        return false;
      }
    }
    pos_ += tok.size();
    return true;
  }

  NodePtr Or() {
    NodePtr l = And();
    while (Eat("or")) l = Make(Kind::kBinary, "or", {l, And()});
    return l;
  }

  NodePtr And() {
    NodePtr l = Not();
    while (Eat("and")) l = Make(Kind::kBinary, "and", {l, Not()});
    return l;
  }

  NodePtr Not() {
    if (Eat("not")) return Make(Kind::kUnary, "not", {Not()});
    return Cmp();
  }

  NodePtr Cmp() {
    NodePtr l = Sum();
    for (const char* op : {"<=", ">=", "==", "!=", "<", ">"}) {
      if (Eat(op)) return Make(Kind::kBinary, op, {l, Sum()});
    }
    return l;
  }

  NodePtr Sum() {
    NodePtr l = Prod();
    while (true) {
      if (Eat("+")) {
        l = Make(Kind::kBinary, "+", {l, Prod()});
      } else if (Eat("-")) {
        l = Make(Kind::kBinary, "-", {l, Prod()});
      } else {
        return l;
      }
    }
  }

  NodePtr Prod() {
    NodePtr l = Unary();
    while (true) {
      if (Eat("*")) {
        l = Make(Kind::kBinary, "*", {l, Unary()});
      } else if (Eat("/")) {
        l = Make(Kind::kBinary, "/", {l, Unary()});
      } else {
        return l;
      }
    }
  }

  NodePtr Unary() {
    if (Eat("-")) return Make(Kind::kUnary, "-", {Unary()});
    return Primary();
  }

  std::vector<NodePtr> Args(std::string_view close) {
    std::vector<NodePtr> out;
    if (Eat(close)) return out;
    do {
      out.push_back(Or());
    } while (Eat(","));
    if (!Eat(close)) Fail("expected '" + std::string(close) + "'");
    return out;
  }

  NodePtr Primary() {
    Skip();
    if (pos_ >= s_.size()) Fail("unexpected end");
    char c = s_[pos_];
    if (Eat("(")) {
      NodePtr e = Or();
      if (!Eat(")")) Fail("expected ')'");
      return e;
    }
    if (Eat("[")) return Make(Kind::kList, "", Args("]"));
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string rest(s_.substr(pos_));
      char* end = nullptr;
      double v = std::strtod(rest.c_str(), &end);
      size_t used = end - rest.c_str();
      if (used == 0) Fail("bad number");
      pos_ += used;
      auto n = std::make_shared<Expr::Node>();
      n->kind = Kind::kNumber;
      n->number = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_' || s_[pos_] == '.')) {
        ++pos_;
      }
      std::string name(s_.substr(start, pos_ - start));
      if (name == "true" || name == "false") {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Kind::kBool;
        n->boolean = name == "true";
        return n;
      }
      if (name == "and" || name == "or" || name == "not") {
        pos_ = start;
        Fail("unexpected '" + name + "'");
      }
      if (Eat("(")) return Make(Kind::kCall, name, Args(")"));
      return Make(Kind::kVar, name);
    }
    Fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  size_t pos_;
};

double Num(const Value& v, const std::string& ctx) {
  if (const double* d = std::get_if<double>(&v)) return *d;
  throw ExprTypeError(ctx + ": expected a number, got " + TypeName(v));
}

bool Bool(const Value& v, const std::string& ctx) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  throw ExprTypeError(ctx + ": expected a bool, got " + TypeName(v));
}

// Function arguments as one list: a single list argument, or scalars.
std::vector<double> Flatten(const std::vector<Value>& args,
                            const std::string& fn) {
  if (args.size() == 1) {
    if (const auto* l = std::get_if<std::vector<double>>(&args[0])) return *l;
  }
  std::vector<double> out;
  for (const auto& a : args) out.push_back(Num(a, fn));
  return out;
}

Value Call(const std::string& fn, const std::vector<Value>& args) {
  if (fn == "abs") {
    if (args.size() != 1) throw ExprTypeError("abs takes one argument");
    return std::fabs(Num(args[0], fn));
  }
  std::vector<double> xs = Flatten(args, fn);
  if (fn == "len") return static_cast<double>(xs.size());
  if (fn == "sum") return std::accumulate(xs.begin(), xs.end(), 0.0);
  if (xs.empty()) throw ExprTypeError(fn + " of an empty list");
  if (fn == "min") return *std::min_element(xs.begin(), xs.end());
  if (fn == "max") return *std::max_element(xs.begin(), xs.end());
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  if (fn == "mean") return mean;
  if (fn == "stdev") {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / xs.size());
  }
  throw ExprTypeError("unknown function " + fn);
}

Value Eval(const Expr::Node& n, const Bindings& b) {
  switch (n.kind) {
    case Kind::kNumber:
      return n.number;
    case Kind::kBool:
      return n.boolean;
    case Kind::kVar: {
      auto it = b.find(n.name);
      if (it == b.end()) throw ExprTypeError("unbound variable " + n.name);
      return it->second;
    }
    case Kind::kList: {
      std::vector<double> out;
      for (const auto& a : n.args) out.push_back(Num(Eval(*a, b), "list"));
      return out;
    }
    case Kind::kCall: {
      std::vector<Value> args;
      for (const auto& a : n.args) args.push_back(Eval(*a, b));
      return Call(n.name, args);
    }
    case Kind::kUnary: {
      Value v = Eval(*n.args[0], b);
      if (n.name == "not") return !Bool(v, "not");
      return -Num(v, "-");
    }
    case Kind::kBinary:
      break;
  }
  const std::string& op = n.name;
  if (op == "and") {
    // Short-circuit, so guards can test a variable's presence first.
    return Bool(Eval(*n.args[0], b), op) && Bool(Eval(*n.args[1], b), op);
  }
  if (op == "or") {
    return Bool(Eval(*n.args[0], b), op) || Bool(Eval(*n.args[1], b), op);
  }
  Value lv = Eval(*n.args[0], b);
  Value rv = Eval(*n.args[1], b);
  if (op == "==" || op == "!=") {
    if (lv.index() != rv.index()) {
      throw ExprTypeError("cannot compare " + TypeName(lv) + " with " +
                          TypeName(rv));
    }
    return (lv == rv) == (op == "==");
  }
  double l = Num(lv, op);
  double r = Num(rv, op);
  if (op == "+") return l + r;
  if (op == "-") return l - r;
  if (op == "*") return l * r;
  if (op == "/") {
    if (r == 0.0) throw ExprTypeError("division by zero");
    return l / r;
  }
  if (op == "<") return l < r;
  if (op == "<=") return l <= r;
  if (op == ">") return l > r;
  return l >= r;
}

void Collect(const Expr::Node& n, std::set<std::string>& out) {
  if (n.kind == Kind::kVar) out.insert(n.name);
  for (const auto& a : n.args) Collect(*a, out);
}

}  // namespace

std::string ToString(const Value& v) {
  std::ostringstream os;
  if (const double* d = std::get_if<double>(&v)) {
    os << *d;
  } else if (const bool* b = std::get_if<bool>(&v)) {
    os << (*b ? "true" : "false");
  } else {
    os << "[";
    const auto& l = std::get<std::vector<double>>(v);
    for (size_t i = 0; i < l.size(); ++i) os << (i ? ", " : "") << l[i];
    os << "]";
  }
  return os.str();
}

Expr Expr::ParsePrefix(std::string_view text, size_t& pos) {
  Parser p(text, pos);
  size_t start = p.pos();
  Expr e;
  e.root_ = p.Parse();
  pos = p.pos();
  std::string t(text.substr(start, pos - start));
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) {
    t.pop_back();
  }
  e.text_ = t;
  return e;
}

Expr Expr::Parse(std::string_view text) {
  size_t pos = 0;
  Expr e = ParsePrefix(text, pos);
  if (pos != text.size()) {
    throw ParseError("expression: trailing text '" +
                     std::string(text.substr(pos)) + "'");
  }
  return e;
}

Value Expr::Eval(const Bindings& b) const { return spdevops::Eval(*root_, b); }

bool Expr::Test(const Bindings& b) const {
  return Bool(Eval(b), "guard '" + text_ + "'");
}

std::vector<std::string> Expr::Variables() const {
  std::set<std::string> out;
  Collect(*root_, out);
  return {out.begin(), out.end()};
}

std::string DecisionEval(const std::vector<DecisionBranch>& branches,
                         const Bindings& b) {
  for (const auto& br : branches) {
    if (!br.guard || br.guard->Test(b)) return br.label;
  }
  throw ExprTypeError("no branch guard holds and there is no else branch");
}

}  // namespace spdevops
