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

// Standard small groupoids and seeded random test data.

#include <random>
#include <string>
#include <vector>

#include "hgpd/convolution.hpp"

namespace hgpd::fixtures {

// Elements e, g, g2, ..., g{n-1}.
GroupTable cyclic_group(int n);
// Elements e, a, b, ab.
GroupTable klein_group();
// Elements e, r, r2, s, rs, r2s with r a 3-cycle and s a transposition.
GroupTable symmetric_group_s3();

GroupoidPtr r2();      // pair groupoid on {a, b}, mu = (1/2, 1/2)
GroupoidPtr r2w();     // pair groupoid on {a, b}, mu = (2/3, 1/3)
GroupoidPtr r3();      // pair groupoid on {a, b, c}, uniform
GroupoidPtr z2();
GroupoidPtr z3();
GroupoidPtr s3();
GroupoidPtr z2_swap();  // Z2 swapping {a, b}, uniform
GroupoidPtr z2xz2();

struct Named {
  std::string name;
  GroupoidPtr groupoid;
};

std::vector<Named> all();
// Throws std::invalid_argument for an unknown name.
GroupoidPtr by_name(const std::string& name);

using Rng = std::mt19937_64;

// Independent standard complex Gaussian values.
ArrowFunction random_function(const GroupoidPtr& g, Rng& rng);
// Real Gaussian values.
ArrowFunction random_real_function(const GroupoidPtr& g, Rng& rng);
// Gaussian values normalized on every range fibre.
ArrowFunction random_unit_vector_field(const GroupoidPtr& g, Rng& rng);
// A positive definite function with F = 1 on units: a random convex
// combination of regular coefficients, sometimes multiplied pointwise by
// another one.
ArrowFunction random_pd(const GroupoidPtr& g, Rng& rng);
// F = 1 except F(h) = F(h^-1) = 2 at the first non-unit arrow h. Not
// positive definite unless G has only unit arrows.
ArrowFunction non_pd_control(const GroupoidPtr& g);
// A random wide subgroupoid: the closure of a random set of arrows.
std::vector<bool> random_subgroupoid(const GroupoidPtr& g, Rng& rng);

}  // namespace hgpd::fixtures
