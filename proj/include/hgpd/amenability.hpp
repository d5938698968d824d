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

// Amenability witnesses and coefficients of the regular representation on
// the range fibres.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hgpd/convolution.hpp"

namespace hgpd {

// A function with sum_{dst(g) = x} |xi(g)|^2 = 1 for every unit x.
class UnitField {
 public:
  // Throws PreconditionError naming the first unit whose fibre norm is off.
  explicit UnitField(ArrowFunction xi, double tol = 1e-10);

  const ArrowFunction& values() const { return xi_; }
  const GroupoidPtr& groupoid_ptr() const { return xi_.groupoid_ptr(); }

 private:
  ArrowFunction xi_;
};

// Normalizes each range fibre of xi. Throws PreconditionError if some fibre
// vanishes.
UnitField normalize_fibres(const ArrowFunction& xi);

// F(g) = sum_{dst(h) = dst(g)} conj(xi(h)) xi(g^-1 h)
ArrowFunction coefficient_of_regular(const UnitField& xi);

// rho(F) on l^2(G^x): M[g, h] = F(g^-1 h).
FibreOperator rho_operator(const ArrowFunction& F);

// max over arrows g of |rho_r lambda(g) - lambda(g) rho_s|, where lambda(g)
// maps l^2(G^{src g}) to l^2(G^{dst g}) by left translation.
double rho_equivariance_defect(const ArrowFunction& F);

struct XiOptions {
  // Replace xi_F by |xi_F|. Keeps the unit-field property but changes the
  // coefficient in general.
  bool absolute = false;
  double clamp_tol = 1e-10;
};

// xi_F = rho(F)^{1/2} 1_X. Throws PreconditionError unless F is positive
// definite with F = 1 on units.
UnitField xi_from_pd(const ArrowFunction& F, const XiOptions& opts = {});

struct AmenabilityStage {
  double deviation = 0.0;            // max_g |1 - F_n(g)|
  std::int64_t max_fibre_support = 0;  // max_x #(supp xi_n cap G^x)
};

struct AmenabilityReport {
  std::vector<AmenabilityStage> stages;
  bool monotone = true;  // deviation non-increasing
  double final_deviation = 0.0;
  std::string note;
};

AmenabilityReport amenability_witness_check(std::span<const UnitField> sequence,
                                            double tol = 1e-10);

// xi_n = normalize((1 - n/m) 1_X + (n/m) u), u fibre-uniform, n = 1..m.
std::vector<UnitField> interpolating_witness(const GroupoidPtr& g, int m);

// V xi = delta^{1/2} xi, from L^2(G, nu^-1) to L^2(G, nu).
ArrowFunction nu_inverse_to_nu(const ArrowFunction& xi);
// max over arrows of |delta nu - nu^-1|; zero exactly when V is unitary.
double v_unitarity_defect(const FiniteGroupoid& g);

}  // namespace hgpd
