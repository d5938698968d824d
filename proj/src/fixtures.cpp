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

#include "hgpd/fixtures.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace hgpd::fixtures {
namespace {

using Perm = std::array<int, 3>;

Perm compose_perm(const Perm& p, const Perm& q) {  // (p q)(i) = p(q(i))
  return {p[q[0]], p[q[1]], p[q[2]]};
}

std::vector<WeightedUnit> units(std::initializer_list<std::pair<const char*, Rational>> u) {
  std::vector<WeightedUnit> out;
  for (const auto& [id, m] : u) out.push_back({id, m});
  return out;
}

// sum_{dst h = dst g} conj(xi(h)) xi(g^-1 h)
ArrowFunction regular_coefficient(const ArrowFunction& xi) {
  const FiniteGroupoid& G = xi.groupoid();
  ArrowFunction F(xi.groupoid_ptr());
  for (Index g = 0; g < static_cast<Index>(G.num_arrows()); ++g)
    for (Index h : G.range_fibre(G.dst(g)))
      F[g] += std::conj(xi[h]) * xi[G.compose(G.inverse(g), h)];
  return F;
}

}  // namespace

GroupTable cyclic_group(int n) {
  GroupTable t;
  for (int i = 0; i < n; ++i) t.elements.push_back(i == 0 ? "e" : i == 1 ? "g" : "g" + std::to_string(i));
  t.product.assign(n, std::vector<Index>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.product[i][j] = (i + j) % n;
  t.identity = 0;
  return t;
}

GroupTable klein_group() {
  GroupTable t;
  t.elements = {"e", "a", "b", "ab"};
  t.product.assign(4, std::vector<Index>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t.product[i][j] = i ^ j;
  t.identity = 0;
  return t;
}

GroupTable symmetric_group_s3() {
  const Perm e{0, 1, 2}, r{1, 2, 0}, s{0, 2, 1};
  const Perm r2 = compose_perm(r, r);
  const std::vector<Perm> perms{e, r, r2, s, compose_perm(r, s), compose_perm(r2, s)};
  GroupTable t;
  t.elements = {"e", "r", "r2", "s", "rs", "r2s"};
  t.product.assign(6, std::vector<Index>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const Perm p = compose_perm(perms[i], perms[j]);
      for (int k = 0; k < 6; ++k)
        if (perms[k] == p) t.product[i][j] = k;
    }
  t.identity = 0;
  return t;
}

GroupoidPtr r2() {
  return share(build_equivalence(units({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}), {{"a", "b"}}));
}

GroupoidPtr r2w() {
  return share(build_equivalence(units({{"a", Rational(2, 3)}, {"b", Rational(1, 3)}}), {{"a", "b"}}));
}

GroupoidPtr r3() {
  const Rational t(1, 3);
  return share(build_equivalence(units({{"a", t}, {"b", t}, {"c", t}}), {{"a", "b", "c"}}));
}

GroupoidPtr z2() { return share(build_group(cyclic_group(2))); }
GroupoidPtr z3() { return share(build_group(cyclic_group(3))); }
GroupoidPtr s3() { return share(build_group(symmetric_group_s3())); }

GroupoidPtr z2_swap() {
  return share(build_action_groupoid(cyclic_group(2),
                                     units({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}),
                                     {{0, 1}, {1, 0}}));
}

GroupoidPtr z2xz2() { return share(build_group(klein_group())); }

std::vector<Named> all() {
  return {{"R2", r2()},   {"R2w", r2w()},       {"R3", r3()},       {"Z2", z2()},
          {"Z3", z3()},   {"S3", s3()},         {"Z2swap", z2_swap()}, {"Z2xZ2", z2xz2()}};
}

GroupoidPtr by_name(const std::string& name) {
  for (auto& f : all())
    if (f.name == name) return f.groupoid;
  throw std::invalid_argument("unknown fixture " + name);
}

ArrowFunction random_function(const GroupoidPtr& g, Rng& rng) {
  std::normal_distribution<double> n;
  ArrowFunction f(g);
  for (std::size_t a = 0; a < f.size(); ++a) {
    const double re = n(rng);
    f[static_cast<Index>(a)] = Complex(re, n(rng));
  }
  return f;
}

ArrowFunction random_real_function(const GroupoidPtr& g, Rng& rng) {
  std::normal_distribution<double> n;
  ArrowFunction f(g);
  for (std::size_t a = 0; a < f.size(); ++a) f[static_cast<Index>(a)] = n(rng);
  return f;
}

ArrowFunction random_unit_vector_field(const GroupoidPtr& g, Rng& rng) {
  ArrowFunction xi = random_function(g, rng);
  for (Index x = 0; x < static_cast<Index>(g->num_units()); ++x) {
    double s = 0.0;
    for (Index a : g->range_fibre(x)) s += std::norm(xi[a]);
    for (Index a : g->range_fibre(x)) xi[a] /= std::sqrt(s);
  }
  return xi;
}

ArrowFunction random_pd(const GroupoidPtr& g, Rng& rng) {
  std::uniform_int_distribution<int> terms(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int k = terms(rng);
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& v : w) total += (v = unit(rng) + 0.05);
  ArrowFunction F(g);
  for (int i = 0; i < k; ++i)
    F += Complex(w[i] / total) * regular_coefficient(random_unit_vector_field(g, rng));
  if (unit(rng) < 0.5) F = pointwise(F, regular_coefficient(random_unit_vector_field(g, rng)));
  return F;
}

ArrowFunction non_pd_control(const GroupoidPtr& g) {
  ArrowFunction F = ArrowFunction::constant(g, 1.0);
  for (Index a = 0; a < static_cast<Index>(g->num_arrows()); ++a)
    if (!g->is_unit_arrow(a)) {
      F[a] = F[g->inverse(a)] = 2.0;
      break;
    }
  return F;
}

std::vector<bool> random_subgroupoid(const GroupoidPtr& g, Rng& rng) {
  std::bernoulli_distribution pick(0.25);
  std::vector<bool> gens(g->num_arrows(), false);
  for (std::size_t a = 0; a < gens.size(); ++a) gens[a] = pick(rng);
  return generated_subgroupoid(*g, gens);
}

}  // namespace hgpd::fixtures
