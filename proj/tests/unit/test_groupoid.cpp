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


#include "hgpd/groupoid.hpp"

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "hgpd/error.hpp"
#include "hgpd/fixtures.hpp"

using namespace hgpd;
namespace fx = hgpd::fixtures;

namespace {

std::vector<WeightedUnit> units(std::vector<std::pair<std::string, Rational>> u) {
  std::vector<WeightedUnit> out;
  for (auto& [id, m] : u) out.push_back({id, m});
  return out;
}

Index arrow(const FiniteGroupoid& g, const char* id) { return g.arrow_index(id); }

// Independent axiom sweep over every triple.
bool brute_force_axioms(const FiniteGroupoid& g) {
  const Index n = static_cast<Index>(g.num_arrows());
  for (Index a = 0; a < n; ++a) {
    if (g.compose(g.unit_arrow(g.dst(a)), a) != a) return false;
    if (g.compose(a, g.unit_arrow(g.src(a))) != a) return false;
    if (g.compose(a, g.inverse(a)) != g.unit_arrow(g.dst(a))) return false;
    for (Index b = 0; b < n; ++b) {
      if ((g.src(a) == g.dst(b)) != (g.compose(a, b) != kNone)) return false;
      for (Index c = 0; c < n; ++c) {
        const Index ab = g.compose(a, b), bc = g.compose(b, c);
        if (ab == kNone || bc == kNone) continue;
        if (g.compose(ab, c) != g.compose(a, bc)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST(Groupoid, FixturesSatisfyAxioms) {
  for (const auto& [name, g] : fx::all()) {
    EXPECT_TRUE(validate(g->data()).empty()) << name;
    EXPECT_TRUE(brute_force_axioms(*g)) << name;
  }
}

TEST(Groupoid, GroupCase) {
  const auto z2 = fx::z2();
  EXPECT_EQ(z2->num_units(), 1u);
  EXPECT_EQ(z2->num_arrows(), 2u);
  EXPECT_EQ(z2->compose(arrow(*z2, "g"), arrow(*z2, "g")), arrow(*z2, "e"));

  GroupTable trivial{{"e"}, {{0}}, 0, {}};
  const FiniteGroupoid t = build_group(trivial);
  EXPECT_EQ(t.num_arrows(), 1u);
  EXPECT_TRUE(t.is_unit_arrow(0));

  const auto s3 = fx::s3();
  EXPECT_EQ(s3->num_arrows(), 6u);
  EXPECT_TRUE(brute_force_axioms(*s3));
}

TEST(Groupoid, NonAssociativeTableRejected) {
  GroupTable t;
  t.elements = {"e", "a", "b"};
  t.product = {{0, 1, 2}, {1, 0, 1}, {2, 2, 0}};
  t.identity = 0;
  EXPECT_THROW(build_group(t), GroupoidError);
}

TEST(Groupoid, EquivalenceRelations) {
  const auto r2 = fx::r2();
  EXPECT_EQ(r2->num_arrows(), 4u);
  const Index ab = arrow(*r2, "ab");
  EXPECT_EQ(r2->unit_id(r2->dst(ab)), "a");
  EXPECT_EQ(r2->unit_id(r2->src(ab)), "b");

  const FiniteGroupoid diag = build_equivalence(units({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}),
                                                {{"a"}, {"b"}});
  EXPECT_EQ(diag.num_arrows(), 2u);
  for (Index g = 0; g < 2; ++g) EXPECT_TRUE(diag.is_unit_arrow(g));

  const auto r3 = fx::r3();
  EXPECT_EQ(r3->num_arrows(), 9u);

  const FiniteGroupoid long_ids =
      build_equivalence(units({{"p1", Rational(1, 2)}, {"p2", Rational(1, 2)}}), {{"p1", "p2"}});
  EXPECT_TRUE(long_ids.find_arrow("p1:p2").has_value());
}

TEST(Groupoid, ActionGroupoids) {
  const FiniteGroupoid fixed = build_action_groupoid(fx::cyclic_group(2),
                                                     units({{"a", Rational(1)}}), {{0, 0}});
  EXPECT_EQ(fixed.num_arrows(), 2u);
  EXPECT_EQ(orbit_and_isotropy(fixed).isotropy[0].arrows.size(), 2u);

  const auto swap = fx::z2_swap();
  EXPECT_EQ(swap->num_arrows(), 4u);
  EXPECT_TRUE(structurally_equal(orbit_relation(*swap), *fx::r2()));
  for (const auto& iso : orbit_and_isotropy(*swap).isotropy) EXPECT_EQ(iso.arrows.size(), 1u);

  const FiniteGroupoid weighted = build_action_groupoid(
      fx::cyclic_group(2), units({{"a", Rational(2, 3)}, {"b", Rational(1, 3)}}), {{0, 1}, {1, 0}});
  EXPECT_EQ(measures(weighted).delta[weighted.arrow_index("a.g")], Rational(2));

  EXPECT_THROW(build_action_groupoid(fx::cyclic_group(2), units({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}),
                                     {{0, 1}, {1, 1}}),
               GroupoidError);
}

TEST(Groupoid, Measures) {
  const auto r2 = fx::r2();
  const ArrowMeasure m = measures(*r2);
  EXPECT_EQ(m.total_mass, Rational(2));
  for (const auto& d : m.delta) EXPECT_EQ(d, Rational(1));

  const auto r2w = fx::r2w();
  const ArrowMeasure w = measures(*r2w);
  EXPECT_EQ(w.delta[arrow(*r2w, "ab")], Rational(2));
  EXPECT_EQ(w.delta[arrow(*r2w, "ba")], Rational(1, 2));
  for (const auto& [name, g] : fx::all()) {
    const ArrowMeasure mm = measures(*g);
    for (Index a = 0; a < static_cast<Index>(g->num_arrows()); ++a) {
      if (g->is_unit_arrow(a)) EXPECT_EQ(mm.delta[a], Rational(1)) << name;
      EXPECT_EQ(mm.nu_inv[a], mm.nu[g->inverse(a)]) << name;
    }
  }
}

TEST(Groupoid, ValidateReportsViolations) {
  GroupoidData d = fx::r2()->data();
  d.mass = {Rational(1), Rational(0)};
  auto v = validate(d);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, "full-support");
  EXPECT_NE(v[0].message.find("full support required"), std::string::npos);

  d = fx::r2()->data();
  d.mass = {Rational(1, 2), Rational(1, 3)};
  v = validate(d);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, "normalization");

  d = fx::z3()->data();
  std::swap(d.compose[1 * 3 + 1], d.compose[1 * 3 + 2]);  // g*g <-> g*g2
  v = validate(d);
  ASSERT_FALSE(v.empty());

  d = fx::r2()->data();
  d.compose[0] = 1;  // aa*aa = ab: wrong endpoints
  v = validate(d);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, "compose");

  d = fx::r2()->data();
  d.compose.pop_back();
  v = validate(d);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, "shape");
  EXPECT_THROW(FiniteGroupoid{d}, GroupoidError);
}

TEST(Groupoid, BisectionPartitions) {
  for (const auto& [name, g] : fx::all()) {
    const auto parts = bisection_partition(*g);
    std::vector<int> seen(g->num_arrows(), 0);
    for (const auto& p : parts) {
      EXPECT_TRUE(is_bisection(*g, p)) << name;
      for (Index a : p) ++seen[a];
    }
    for (int c : seen) EXPECT_EQ(c, 1) << name;
  }
  EXPECT_EQ(bisection_partition(*fx::r2()).size(), 2u);
  EXPECT_EQ(bisection_partition(*fx::z2()).size(), 2u);

  // First-fit in arrow order needs four pieces on R3; ordering the arrows
  // by translation class gives the optimal three.
  const auto r3 = fx::r3();
  EXPECT_EQ(bisection_partition(*r3).size(), 4u);
  std::vector<Index> order;
  for (int shift = 0; shift < 3; ++shift)
    for (Index a = 0; a < 9; ++a)
      if ((r3->dst(a) - r3->src(a) + 3) % 3 == shift) order.push_back(a);
  const auto three = bisection_partition(*r3, order);
  EXPECT_EQ(three.size(), 3u);
  for (const auto& p : three) EXPECT_EQ(p.size(), 3u);
}

TEST(Groupoid, OrbitsAndIsotropy) {
  const OrbitStructure r2 = orbit_and_isotropy(*fx::r2());
  EXPECT_EQ(r2.orbits.size(), 1u);
  for (const auto& iso : r2.isotropy) EXPECT_EQ(iso.arrows.size(), 1u);
  EXPECT_TRUE(structurally_equal(orbit_relation(*fx::r2()), *fx::r2()));

  const OrbitStructure z2 = orbit_and_isotropy(*fx::z2());
  EXPECT_EQ(z2.orbits.size(), 1u);
  EXPECT_EQ(z2.isotropy[0].arrows.size(), 2u);

  const FiniteGroupoid trivial_action = build_action_groupoid(
      fx::cyclic_group(2), units({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}), {{0, 0}, {1, 1}});
  const OrbitStructure t = orbit_and_isotropy(trivial_action);
  EXPECT_EQ(t.orbits.size(), 2u);
  for (const auto& iso : t.isotropy) EXPECT_EQ(iso.arrows.size(), 2u);
  const FiniteGroupoid rel = orbit_relation(trivial_action);
  EXPECT_EQ(rel.num_arrows(), 2u);
}

TEST(Groupoid, Reductions) {
  const auto r3 = fx::r3();
  const std::vector<Index> ab{0, 1};
  const FiniteGroupoid red = reduction(*r3, ab);
  EXPECT_TRUE(structurally_equal(red, *fx::r2()));

  std::vector<Index> all{0, 1, 2};
  EXPECT_TRUE(structurally_equal(reduction(*r3, all), *r3));

  const std::vector<Index> a{0};
  const FiniteGroupoid one = reduction(*fx::r2(), a);
  EXPECT_EQ(one.num_arrows(), 1u);
  EXPECT_EQ(one.mass(0), Rational(1));
  EXPECT_THROW(reduction(*r3, std::vector<Index>{}), GroupoidError);
}

TEST(Groupoid, Subgroupoids) {
  const auto r3 = fx::r3();
  std::vector<bool> gens(9, false);
  gens[arrow(*r3, "ab")] = true;
  const auto h = generated_subgroupoid(*r3, gens);
  EXPECT_TRUE(is_wide_subgroupoid(*r3, h));
  std::set<std::string> ids;
  for (Index a = 0; a < 9; ++a)
    if (h[a]) ids.insert(r3->arrow_id(a));
  EXPECT_EQ(ids, (std::set<std::string>{"aa", "ab", "ba", "bb", "cc"}));
  EXPECT_FALSE(is_wide_subgroupoid(*r3, gens));

  fx::Rng rng(11);
  for (const auto& [name, g] : fx::all())
    for (int i = 0; i < 20; ++i) EXPECT_TRUE(is_wide_subgroupoid(*g, fx::random_subgroupoid(g, rng)));
}

TEST(Groupoid, FibresAndFactorizations) {
  for (const auto& [name, g] : fx::all()) {
    const Index n = static_cast<Index>(g->num_arrows());
    for (Index c = 0; c < n; ++c) {
      const auto L = g->factor_left(c), R = g->factor_right(c);
      ASSERT_EQ(L.size(), R.size());
      std::size_t count = 0;
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) count += g->compose(a, b) == c;
      EXPECT_EQ(L.size(), count) << name;
      for (std::size_t i = 0; i < L.size(); ++i) EXPECT_EQ(g->compose(L[i], R[i]), c);
      EXPECT_EQ(g->range_fibre(g->dst(c))[g->range_pos(c)], c);
      EXPECT_EQ(g->source_fibre(g->src(c))[g->source_pos(c)], c);
    }
  }
}
