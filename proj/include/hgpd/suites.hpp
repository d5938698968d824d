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

// Named check suites behind the command line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hgpd/amenability.hpp"
#include "hgpd/report.hpp"
#include "hgpd/treeing.hpp"

namespace hgpd {

struct SuiteOptions {
  std::uint64_t seed = 0;
  Tolerances tol;
  int instances = 200;  // randomized instances per suite
  int stages = 5;
};

CheckReport validate_report(const GroupoidData& data, const std::string& target);

CheckReport check_pd(const ArrowFunction& F, const SuiteOptions& opts, const std::string& target);
CheckReport check_cnd(const ArrowFunction& psi, const SuiteOptions& opts,
                      const std::string& target);
CheckReport check_treeing(const GroupoidPtr& g, std::span<const Index> Q,
                          const SuiteOptions& opts, const std::string& target);
CheckReport check_vn(const GroupoidPtr& g, const SuiteOptions& opts, const std::string& target);
// With F, checks that one function; otherwise random instances and controls.
CheckReport check_amen(const GroupoidPtr& g, const std::optional<ArrowFunction>& F,
                       const SuiteOptions& opts, const std::string& target);
CheckReport check_haagerup(const GroupoidPtr& g, std::span<const Index> Q,
                           const SuiteOptions& opts, const std::string& target);

// Witness construction for the command line: the stages and their report.
struct TreeingWitness {
  std::vector<HaagerupStage> stages;
  CheckReport report;
};
TreeingWitness treeing_witness(const GroupoidPtr& g, std::span<const Index> Q, int m,
                               const SuiteOptions& opts, const std::string& target);

struct AmenWitness {
  std::vector<UnitField> sequence;
  CheckReport report;
};
AmenWitness amen_witness(const GroupoidPtr& g, int m, const SuiteOptions& opts,
                         const std::string& target);

}  // namespace hgpd
