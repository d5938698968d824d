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


#include "hgpd/amenability.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "hgpd/error.hpp"
#include "hgpd/fixtures.hpp"
#include "hgpd/funkit.hpp"
#include "oracles.hpp"

using namespace hgpd;
namespace fx = hgpd::fixtures;

namespace {

bool psd_blocks(const FibreOperator& op) {
  for (const auto& b : op.blocks())
    if (!oracle::psd(b, 1e-10)) return false;
  return true;
}

ArrowFunction z2_with(double c) {
  const auto z2 = fx::z2();
  ArrowFunction F(z2);
  F[0] = 1.0;
  F[1] = c;
  return F;
}

}  // namespace

TEST(Amenability, RegularCoefficients) {
  const auto r2 = fx::r2();
  const UnitField flat(ArrowFunction::constant(r2, 1.0 / std::sqrt(2.0)));
  EXPECT_LT(max_abs_diff(coefficient_of_regular(flat), ArrowFunction::constant(r2, 1.0)), 1e-15);
  for (const auto& [name, g] : fx::all())
    EXPECT_LT(max_abs_diff(coefficient_of_regular(UnitField(ArrowFunction::units(g))),
                           ArrowFunction::units(g)),
              1e-15)
        << name;
  const UnitField z(ArrowFunction::constant(fx::z2(), 1.0 / std::sqrt(2.0)));
  EXPECT_NEAR(coefficient_of_regular(z)[1].real(), 1.0, 1e-15);

  fx::Rng rng(41);
  for (const auto& [name, g] : fx::all()) {
    const UnitField xi(fx::random_unit_vector_field(g, rng));
    const ArrowFunction F = coefficient_of_regular(xi);
    EXPECT_LT(oracle::max_diff(oracle::values(F),
                               oracle::regular_coefficient(*g, oracle::values(xi.values()))),
              1e-12)
        << name;
    EXPECT_TRUE(is_positive_definite(F).positive_definite) << name;
  }

  EXPECT_THROW(UnitField(ArrowFunction::constant(r2, 1.0)), PreconditionError);
  EXPECT_THROW(normalize_fibres(ArrowFunction(r2)), PreconditionError);
}

TEST(Amenability, Rho) {
  const auto r2 = fx::r2();
  const FibreOperator one = rho_operator(ArrowFunction::constant(r2, 1.0));
  for (const auto& b : one.blocks()) {
    const auto e = hermitian_eigen(b);
    EXPECT_NEAR(e.values[0], 0.0, 1e-15);
    EXPECT_NEAR(e.values[1], 2.0, 1e-15);
  }
  const FibreOperator id = rho_operator(ArrowFunction::units(r2));
  for (const auto& b : id.blocks())
    EXPECT_EQ(max_entry_diff(b, CMatrix::Identity(2, 2)), 0.0);

  fx::Rng rng(42);
  for (const auto& [name, g] : fx::all())
    for (int i = 0; i < 10; ++i) {
      const ArrowFunction F = fx::random_pd(g, rng);
      EXPECT_TRUE(psd_blocks(rho_operator(F))) << name;
      EXPECT_LT(rho_equivariance_defect(F), 1e-15) << name;
      const ArrowFunction h = fx::random_function(g, rng);
      EXPECT_EQ(psd_blocks(rho_operator(h)), is_positive_definite(h).positive_definite) << name;
    }
  EXPECT_FALSE(psd_blocks(rho_operator(fx::non_pd_control(r2))));
}

TEST(Amenability, XiFromPd) {
  const auto r2 = fx::r2();
  const UnitField xi = xi_from_pd(ArrowFunction::constant(r2, 1.0));
  EXPECT_LT(max_abs_diff(xi.values(), ArrowFunction::constant(r2, 1.0 / std::sqrt(2.0))), 1e-15);
  for (const auto& [name, g] : fx::all())
    EXPECT_LT(max_abs_diff(xi_from_pd(ArrowFunction::units(g)).values(), ArrowFunction::units(g)),
              1e-15);

  const double c = 0.6;
  const UnitField z = xi_from_pd(z2_with(c));
  // sqrt([[1,c],[c,1]]) e_0 = ((sqrt(1+c) + sqrt(1-c)) / 2, (sqrt(1+c) - sqrt(1-c)) / 2)
  EXPECT_NEAR(z.values()[0].real(), (std::sqrt(1 + c) + std::sqrt(1 - c)) / 2, 1e-15);
  EXPECT_NEAR(z.values()[1].real(), (std::sqrt(1 + c) - std::sqrt(1 - c)) / 2, 1e-15);
  EXPECT_LT(max_abs_diff(coefficient_of_regular(z), z2_with(c)), 1e-10);

  fx::Rng rng(43);
  for (const auto& [name, g] : fx::all())
    for (int i = 0; i < 20; ++i) {
      const ArrowFunction F = fx::random_pd(g, rng);
      EXPECT_LT(max_abs_diff(coefficient_of_regular(xi_from_pd(F)), F), 1e-8) << name;
    }
  EXPECT_THROW(xi_from_pd(fx::non_pd_control(r2)), PreconditionError);

  XiOptions abs;
  abs.absolute = true;
  const UnitField a = xi_from_pd(fx::random_pd(fx::r3(), rng), abs);
  for (const auto& v : a.values().values()) EXPECT_GE(v.real(), 0.0);
}

TEST(Amenability, WitnessSequences) {
  const auto r2 = fx::r2();
  const UnitField flat(ArrowFunction::constant(r2, 1.0 / std::sqrt(2.0)));
  const std::vector<UnitField> constant{flat, flat, flat};
  const AmenabilityReport c = amenability_witness_check(constant);
  for (const auto& s : c.stages) EXPECT_LT(s.deviation, 1e-15);

  const UnitField units(ArrowFunction::units(r2));
  const std::vector<UnitField> none{units, units};
  EXPECT_NEAR(amenability_witness_check(none).final_deviation, 1.0, 1e-15);

  const auto seq = interpolating_witness(r2, 6);
  ASSERT_EQ(seq.size(), 6u);
  const AmenabilityReport m = amenability_witness_check(seq);
  EXPECT_TRUE(m.monotone);
  EXPECT_LT(m.final_deviation, 1e-15);
  EXPECT_THROW(interpolating_witness(r2, 0), PreconditionError);
}

TEST(Amenability, NuInverseToNu) {
  EXPECT_LT(v_unitarity_defect(*fx::r2w()), 1e-15);
  fx::Rng rng(44);
  const auto r2w = fx::r2w();
  const ArrowFunction xi = fx::random_function(r2w, rng);
  const ArrowFunction v = nu_inverse_to_nu(xi);
  double inv_norm = 0.0;
  for (Index h = 0; h < 4; ++h) inv_norm += std::norm(xi[h]) * r2w->nu_inv_weights()[h];
  EXPECT_NEAR(l2_norm(v), std::sqrt(inv_norm), 1e-14);
}
