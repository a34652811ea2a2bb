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

#ifndef SPDEVOPS_ERRORS_H_
#define SPDEVOPS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace spdevops {

// Base for every error the library reports. Each subclass maps to one
// documented failure category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (NF-FG, policy, TSG, scenario config, snapshot).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class CyclicRouteError : public Error {
 public:
  using Error::Error;
};

class UnknownBinding : public Error {
 public:
  using Error::Error;
};

class NoChainError : public Error {
 public:
  using Error::Error;
};

class NotIsolatedError : public Error {
 public:
  using Error::Error;
};

class DomainTooLarge : public Error {
 public:
  using Error::Error;
};

class ShortWindow : public Error {
 public:
  using Error::Error;
};

class UnknownClient : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  using Error::Error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

}  // namespace spdevops

#endif  // SPDEVOPS_ERRORS_H_
