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


#include "hgpd/funkit.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "hgpd/error.hpp"
#include "hgpd/fixtures.hpp"
#include "hgpd/treeing.hpp"
#include "oracles.hpp"

using namespace hgpd;
namespace fx = hgpd::fixtures;

namespace {

ArrowFunction r2_tree_psi() {
  const auto r2 = fx::r2();
  ArrowFunction psi(r2);
  psi[r2->arrow_index("ab")] = psi[r2->arrow_index("ba")] = 1.0;
  return psi;
}

ArrowFunction z2_with(double c) {
  const auto z2 = fx::z2();
  ArrowFunction F(z2);
  F[z2->arrow_index("e")] = 1.0;
  F[z2->arrow_index("g")] = c;
  return F;
}

}  // namespace

TEST(PositiveDefinite, Examples) {
  const auto r2 = fx::r2();
  EXPECT_TRUE(is_positive_definite(ArrowFunction::constant(r2, 1.0)).positive_definite);
  for (const auto& [name, g] : fx::all())
    EXPECT_TRUE(is_positive_definite(ArrowFunction::units(g)).positive_definite) << name;

  const PdReport rep = is_positive_definite(schoenberg(r2_tree_psi(), 1.0));
  EXPECT_TRUE(rep.positive_definite);
  for (const auto& f : rep.fibres) EXPECT_NEAR(f.min_eig, 1.0 - std::exp(-1.0), 1e-14);

  const PdReport bad = is_positive_definite(fx::non_pd_control(r2));
  EXPECT_FALSE(bad.positive_definite);
  EXPECT_NEAR(bad.fibres[0].min_eig, -1.0, 1e-14);
  EXPECT_EQ(bad.fibres[0].witness.size(), 2);
}

TEST(PositiveDefinite, MatchesOracle) {
  fx::Rng rng(21);
  for (const auto& [name, g] : fx::all())
    for (int i = 0; i < 20; ++i) {
      const ArrowFunction pd = fx::random_pd(g, rng);
      EXPECT_TRUE(is_positive_definite(pd).positive_definite) << name;
      EXPECT_TRUE(oracle::positive_definite(*g, oracle::values(pd), 1e-10)) << name;
      const ArrowFunction f = fx::random_function(g, rng);
      ArrowFunction h = convolve(involute(f), f);  // not PD in general
      h += involute(h);
      EXPECT_EQ(is_positive_definite(h).positive_definite,
                oracle::positive_definite(*g, oracle::values(h), 1e-10))
          << name;
    }
}

TEST(PositiveDefinite, ClosedUnderProductsAndSums) {
  fx::Rng rng(22);
  for (const auto& [name, g] : fx::all())
    for (int i = 0; i < 10; ++i) {
      const ArrowFunction a = fx::random_pd(g, rng), b = fx::random_pd(g, rng);
      EXPECT_TRUE(is_positive_definite(pointwise(a, b)).positive_definite) << name;
      EXPECT_TRUE(is_positive_definite(a + b).positive_definite) << name;
      EXPECT_TRUE(is_positive_definite(involute(a)).positive_definite) << name;
      // F(g^-1) = conj F(g) and |F| <= F(unit)
      for (Index x = 0; x < static_cast<Index>(g->num_arrows()); ++x) {
        EXPECT_LT(std::abs(a[g->inverse(x)] - std::conj(a[x])), 1e-12);
        EXPECT_LE(std::abs(a[x]), 1.0 + 1e-12);
      }
    }
}

TEST(Cnd, Examples) {
  const auto r2 = fx::r2();
  EXPECT_TRUE(is_cnd(ArrowFunction(r2)).cnd);
  const CndReport tree = is_cnd(r2_tree_psi());
  EXPECT_TRUE(tree.cnd);
  EXPECT_TRUE(tree.nonnegative);

  fx::Rng rng(23);
  for (const auto& [name, g] : fx::all())
    for (int i = 0; i < 10; ++i) {
      ArrowFunction psi = ArrowFunction::constant(g, 1.0) - fx::random_pd(g, rng);
      for (auto& v : psi.values()) v = v.real();
      EXPECT_TRUE(is_cnd(psi).cnd) << name;
    }

  ArrowFunction neg = r2_tree_psi();
  neg *= -1.0;
  EXPECT_FALSE(is_cnd(neg).cnd);
  ArrowFunction cplx = r2_tree_psi();
  cplx[1] = Complex(1, 1);
  EXPECT_THROW(is_cnd(cplx), PreconditionError);
}

TEST(Cnd, Schoenberg) {
  const auto r2 = fx::r2();
  EXPECT_EQ(max_abs_diff(schoenberg(ArrowFunction(r2), 3.0), ArrowFunction::constant(r2, 1.0)), 0.0);
  const ArrowFunction F = schoenberg(r2_tree_psi(), 1.0);
  EXPECT_NEAR(F[r2->arrow_index("ab")].real(), std::exp(-1.0), 1e-15);

  const auto r3 = fx::r3();
  const std::vector<Index> path{r3->arrow_index("ab"), r3->arrow_index("ba"),
                                r3->arrow_index("bc"), r3->arrow_index("cb")};
  const ArrowFunction psi = tree_metric(r3, path).psi;
  const ArrowFunction half = schoenberg(psi, 0.5);
  EXPECT_NEAR(half[r3->arrow_index("ac")].real(), std::exp(-1.0), 1e-15);
  EXPECT_TRUE(oracle::positive_definite(*r3, oracle::values(half), 1e-12));
  for (double t : {0.25, 0.5, 1.0, 2.0})
    EXPECT_TRUE(is_positive_definite(schoenberg(psi, t)).positive_definite);

  EXPECT_THROW(schoenberg(psi, 0.0), PreconditionError);
  ArrowFunction neg = psi;
  neg *= -1.0;
  EXPECT_THROW(schoenberg(neg, 1.0), PreconditionError);
}

TEST(ExtendByZero, Examples) {
  for (const auto& [name, g] : fx::all()) {
    std::vector<bool> units(g->num_arrows(), false);
    for (Index x = 0; x < static_cast<Index>(g->num_units()); ++x) units[g->unit_arrow(x)] = true;
    const ArrowFunction F = extend_by_zero(ArrowFunction::units(g), units);
    EXPECT_EQ(max_abs_diff(F, ArrowFunction::units(g)), 0.0) << name;
  }

  const auto r3 = fx::r3();
  std::vector<bool> h(9, false);
  for (const char* id : {"aa", "ab", "ba", "bb", "cc"}) h[r3->arrow_index(id)] = true;
  const ArrowFunction E = extend_by_zero(ArrowFunction::constant(r3, 1.0), h);
  EXPECT_TRUE(oracle::positive_definite(*r3, oracle::values(E), 1e-12));
  EXPECT_EQ(E[r3->arrow_index("ac")], Complex(0));

  // Klein group, H = {e, a}, F the sign character of H.
  const auto k = fx::z2xz2();
  std::vector<bool> diag(4, false);
  diag[k->arrow_index("e")] = diag[k->arrow_index("a")] = true;
  ArrowFunction chi = ArrowFunction::constant(k, 1.0);
  chi[k->arrow_index("a")] = -1.0;
  const ArrowFunction X = extend_by_zero(chi, diag);
  EXPECT_TRUE(oracle::positive_definite(*k, oracle::values(X), 1e-12));
  EXPECT_EQ(X[k->arrow_index("b")], Complex(0));

  // Given on the reduction and mapped by id.
  const GroupoidPtr r2 = share(reduction(*r3, std::vector<Index>{0, 1}));
  EXPECT_THROW(extend_by_zero(ArrowFunction::constant(r2, 1.0), r3), PreconditionError);

  std::vector<bool> not_sub(9, false);
  not_sub[r3->arrow_index("ab")] = true;
  EXPECT_THROW(extend_by_zero(ArrowFunction::constant(r3, 1.0), not_sub), PreconditionError);
}

TEST(ExtendByZero, RandomSubgroupoids) {
  fx::Rng rng(24);
  for (const auto& [name, g] : fx::all())
    for (int i = 0; i < 20; ++i) {
      const auto H = fx::random_subgroupoid(g, rng);
      const ArrowFunction F = fx::random_pd(g, rng);
      const ArrowFunction E = extend_by_zero(F, H);
      EXPECT_TRUE(oracle::positive_definite(*g, oracle::values(E), 1e-10)) << name;
    }
}

TEST(Representations, Coefficients) {
  const auto r2 = fx::r2();
  const Representation triv = Representation::trivial(r2);
  Section one;
  for (int x = 0; x < 2; ++x) one.xi.push_back(CVector::Ones(1));
  EXPECT_EQ(max_abs_diff(coefficient(triv, one), ArrowFunction::constant(r2, 1.0)), 0.0);

  const auto z2 = fx::z2();
  Representation reg{z2, {2}, {CMatrix::Identity(2, 2), CMatrix(2, 2)}};
  reg.pi[1] << 0, 1, 1, 0;
  EXPECT_EQ(check_representation(reg).max(), 0.0);
  Section e0{{CVector::Unit(2, 0)}};
  const ArrowFunction F = coefficient(reg, e0);
  EXPECT_EQ(F[z2->arrow_index("e")], Complex(1));
  EXPECT_EQ(F[z2->arrow_index("g")], Complex(0));

  Representation broken = reg;
  broken.pi[1] *= 2.0;
  EXPECT_GT(check_representation(broken).unitarity, 0.5);
  Section wrong{{CVector::Ones(3)}};
  EXPECT_THROW(coefficient(reg, wrong), PreconditionError);
}

TEST(Representations, Gns) {
  const auto r2 = fx::r2();
  GnsResult one = gns(ArrowFunction::constant(r2, 1.0));
  for (auto d : one.rep.dims) EXPECT_EQ(d, 1);

  const auto z2 = fx::z2();
  GnsResult reg = gns(ArrowFunction::units(z2));
  EXPECT_EQ(reg.rep.dims[0], 2);
  EXPECT_LT(max_abs_diff(coefficient(reg.rep, reg.xi), ArrowFunction::units(z2)), 1e-12);

  const ArrowFunction c = z2_with(0.3);
  GnsResult r = gns(c);
  EXPECT_EQ(r.rep.dims[0], 2);
  EXPECT_LT(max_abs_diff(coefficient(r.rep, r.xi), c), 1e-10);

  fx::Rng rng(25);
  for (const auto& [name, g] : fx::all())
    for (int i = 0; i < 10; ++i) {
      const ArrowFunction F = fx::random_pd(g, rng);
      const GnsResult res = gns(F);
      EXPECT_LT(max_abs_diff(coefficient(res.rep, res.xi), F), 1e-8) << name;
      EXPECT_LT(check_representation(res.rep).max(), 1e-10) << name;
    }

  EXPECT_THROW(gns(fx::non_pd_control(r2)), PreconditionError);
  ArrowFunction half = ArrowFunction::constant(r2, 0.5);
  EXPECT_THROW(gns(half), PreconditionError);
}

TEST(Cocycles, Examples) {
  const auto r2 = fx::r2();
  Cocycle zero{Representation::trivial(r2), std::vector<CVector>(4, CVector::Zero(1))};
  EXPECT_EQ(max_abs_diff(cocycle_to_cnd(zero), ArrowFunction(r2)), 0.0);

  const auto z2 = fx::z2();
  Cocycle forced{Representation::trivial(z2), std::vector<CVector>(2, CVector::Zero(1))};
  forced.b[z2->arrow_index("g")] = CVector::Ones(1);
  EXPECT_GT(cocycle_defect(forced), 0.5);
  EXPECT_THROW(cocycle_to_cnd(forced), PreconditionError);

  Cocycle tree{Representation::trivial(r2), std::vector<CVector>(4, CVector::Zero(1))};
  tree.b[r2->arrow_index("ab")] = CVector::Constant(1, 1.0);
  tree.b[r2->arrow_index("ba")] = CVector::Constant(1, -1.0);
  EXPECT_EQ(cocycle_defect(tree), 0.0);
  const ArrowFunction psi = cocycle_to_cnd(tree);
  EXPECT_EQ(max_abs_diff(psi, r2_tree_psi()), 0.0);
  EXPECT_TRUE(is_cnd(psi).cnd);
}

TEST(Cocycles, FromPdSequence) {
  const auto r2 = fx::r2();
  const std::vector<ArrowFunction> ones{ArrowFunction::constant(r2, 1.0)};
  EXPECT_EQ(max_abs_diff(cnd_from_pd_sequence(ones), ArrowFunction(r2)), 0.0);

  const std::vector<ArrowFunction> s{schoenberg(r2_tree_psi(), 1.0)};
  const std::vector<double> alpha{1.0};
  const ArrowFunction psi = cnd_from_pd_sequence(s, alpha);
  EXPECT_NEAR(psi[r2->arrow_index("ab")].real(), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_TRUE(is_cnd(psi).cnd);

  fx::Rng rng(26);
  const auto r3 = fx::r3();
  const std::vector<ArrowFunction> pair{fx::random_pd(r3, rng), fx::random_pd(r3, rng)};
  const std::vector<double> w{1.0, 2.0};
  EXPECT_TRUE(is_cnd(cnd_from_pd_sequence(pair, w)).cnd);

  const std::vector<double> bad{-1.0};
  EXPECT_THROW(cnd_from_pd_sequence(s, bad), PreconditionError);
  const std::vector<ArrowFunction> notpd{fx::non_pd_control(r2)};
  EXPECT_THROW(cnd_from_pd_sequence(notpd), PreconditionError);
}

TEST(Profiles, MassesAndBallBounds) {
  const auto r2 = fx::r2();
  const std::vector<double> half{0.5};
  EXPECT_EQ(mass_above(ArrowFunction::constant(r2, 1.0), half)[0].mass, Rational(2));
  const std::vector<double> zero{0.0};
  EXPECT_EQ(mass_at_most(r2_tree_psi(), zero)[0].mass, Rational(1));

  const std::vector<double> radii{0.0, 1.0};
  const auto b = tree_ball_bounds(r2_tree_psi(), 1, radii);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[1].mass, Rational(2));
  EXPECT_EQ(b[1].ball_bound, 2);
  EXPECT_TRUE(b[1].ball_holds);
  EXPECT_EQ(b[1].power_bound, 1);
  EXPECT_FALSE(b[1].power_holds);
}
