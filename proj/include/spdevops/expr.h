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

#ifndef SPDEVOPS_EXPR_H_
#define SPDEVOPS_EXPR_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spdevops/errors.h"

namespace spdevops {

// Decision-node expressions.
//
//   expr    := and ('or' and)*
//   and     := not ('and' not)*
//   not     := 'not' not | cmp
//   cmp     := sum [('<' | '<=' | '>' | '>=' | '==' | '!=') sum]
//   sum     := prod (('+' | '-') prod)*
//   prod    := unary (('*' | '/') unary)*
//   unary   := '-' unary | primary
//   primary := number | 'true' | 'false' | name | name '(' args ')'
//            | '(' expr ')' | '[' [expr (',' expr)*] ']'
//
// Names may contain dots (`cpu.cpu`). Functions: min, max, mean, stdev
// (population), sum, len, abs.

using Value = std::variant<double, bool, std::vector<double>>;
using Bindings = std::map<std::string, Value>;

std::string ToString(const Value& v);

// A missing variable, a wrong operand type, or an undefined result.
class ExprTypeError : public Error {
 public:
  using Error::Error;
};

class Expr {
 public:
  struct Node;

  // Parses all of `text`; throws ParseError.
  static Expr Parse(std::string_view text);
  // Parses the longest expression starting at `pos` and advances `pos` past
  // it. Used by the TSG parser to read a guard inside `{...}`.
  static Expr ParsePrefix(std::string_view text, size_t& pos);

  Value Eval(const Bindings& b) const;
  // Eval that insists on a boolean.
  bool Test(const Bindings& b) const;
  const std::string& text() const { return text_; }
  // Variable names, sorted and unique.
  std::vector<std::string> Variables() const;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

struct DecisionBranch {
  std::string label;
  std::optional<Expr> guard;  // none: `else`
};

// Label of the first branch whose guard holds. Throws ExprTypeError if no
// guard holds and there is no `else`.
std::string DecisionEval(const std::vector<DecisionBranch>& branches,
                         const Bindings& b);

}  // namespace spdevops

#endif  // SPDEVOPS_EXPR_H_
