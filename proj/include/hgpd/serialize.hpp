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

// JSON readers and writers. Every reader throws ParseError on malformed input
// or unknown ids; group and action generator forms may also throw
// GroupoidError when the described structure violates an axiom.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hgpd/amenability.hpp"
#include "hgpd/groupoid.hpp"
#include "hgpd/vnalg.hpp"

namespace hgpd {

using Json = nlohmann::ordered_json;

Json load_json(const std::filesystem::path& path);

// Explicit form only: returns raw tables for validate() to inspect.
GroupoidData parse_gspec_data(const Json& j);
// Any form. Explicit input is validated (GroupoidError on failure).
FiniteGroupoid parse_gspec(const Json& j);
bool is_explicit_gspec(const Json& j);
// Writes the explicit form.
Json to_gspec(const FiniteGroupoid& g);

GroupTable parse_group_table(const Json& j);

ArrowFunction parse_function(const Json& j, const GroupoidPtr& g);
Json to_json(const ArrowFunction& f);

std::vector<Index> parse_treeing(const Json& j, const FiniteGroupoid& g);
Json treeing_to_json(const FiniteGroupoid& g, std::span<const Index> Q);

CpMap parse_cpmap(const Json& j, const GroupoidPtr& g, bool unital = true);
Json to_json(const CpMap& phi);

}  // namespace hgpd
