// Copyright 2026 The hgpd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hgpd {

// Malformed or axiom-violating groupoid data.
class GroupoidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An analytic operation was called outside its precondition (a function is
// not positive definite, a map is not A-bilinear, a graphing is not a
// treeing, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input files that do not parse or do not match the expected schema.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hgpd
