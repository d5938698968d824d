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

// The inclusion A = L^inf(X) in M = L(G): state, conditional expectation,
// modular theory, the A-valued inner product, the trace on the basic
// construction, and A-bilinear maps.
//
// M is represented by coefficient functions: L(f) 1_X = f, so f determines
// L(f). Operators on L^2(G, nu) that are not of the form L(f) are dense
// |G| x |G| matrices in the point-mass basis.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hgpd/convolution.hpp"
#include "hgpd/funkit.hpp"

namespace hgpd {

class VnElement {
 public:
  explicit VnElement(ArrowFunction f);

  const ArrowFunction& coefficient() const { return f_; }
  const FibreOperator& op() const { return op_; }
  const GroupoidPtr& groupoid_ptr() const { return f_.groupoid_ptr(); }

  VnElement adjoint() const;

 private:
  ArrowFunction f_;
  FibreOperator op_;
};

VnElement operator*(const VnElement& a, const VnElement& b);
VnElement operator+(const VnElement& a, const VnElement& b);

// phi(L(f)) = sum_x f(x) mu(x)
Complex state_phi(const VnElement& m);
// Restriction of the coefficient to unit arrows.
VnElement cond_expectation(const VnElement& m);
// (J xi)(g) = delta(g)^{1/2} conj(xi(g^-1))
ArrowFunction modular_conjugation(const ArrowFunction& xi);
// J L(f) J xi, evaluated through J on both sides.
ArrowFunction conjugated_left_apply(const ArrowFunction& f, const ArrowFunction& xi);
// f -> delta^{it} f
VnElement modular_flow(const VnElement& m, double t);

// ---------------------------------------------------------------------------
// A-valued inner product on L^2(M, phi) = L^2(G, nu)

// <xi, eta>_A(x) = sum_{src(g) = x} conj(xi(g)) eta(g), one value per unit.
std::vector<Complex> a_inner(const ArrowFunction& xi, const ArrowFunction& eta);
// (xi . a)(g) = xi(g) a(src(g))
ArrowFunction right_act(const ArrowFunction& xi, std::span<const Complex> a);
// tau_mu(a) = sum_x a(x) mu(x)
Complex tau_mu(const FiniteGroupoid& g, std::span<const Complex> a);

struct GramSchmidtResult {
  std::vector<ArrowFunction> basis;
  std::vector<std::vector<double>> projections;  // p_j(x) in {0, 1}
};

// Unit-by-unit Gram-Schmidt on the source fibres. Vectors whose residual at
// x has norm at most tol * max(1, ||v restricted to G_x||) are zeroed there.
GramSchmidtResult module_gram_schmidt(std::span<const ArrowFunction> vectors,
                                      double tol = 1e-10);

// ---------------------------------------------------------------------------
// Operators on L^2(G, nu) and the trace Tr_mu

class DenseOperator {
 public:
  DenseOperator(GroupoidPtr g, CMatrix m);

  static DenseOperator from_fibres(const FibreOperator& op);
  // Pointwise multiplication by f.
  static DenseOperator multiplication(const ArrowFunction& f);
  // e_A: multiplication by 1_X.
  static DenseOperator unit_projection(GroupoidPtr g);
  // L_xi L_eta^*: zeta -> xi . <eta, zeta>_A
  static DenseOperator rank_one(const ArrowFunction& xi, const ArrowFunction& eta);

  const FiniteGroupoid& groupoid() const { return *g_; }
  const GroupoidPtr& groupoid_ptr() const { return g_; }
  const CMatrix& matrix() const { return m_; }

  ArrowFunction apply(const ArrowFunction& xi) const;

 private:
  GroupoidPtr g_;
  CMatrix m_;
};

// Largest entry coupling arrows with different sources; zero exactly when
// the operator commutes with the right action of A.
double right_a_linearity_defect(const DenseOperator& x);

// Tr_mu(x) = sum_n <1_{S_n}, x 1_{S_n}>_{L^2(nu)} over a bisection
// partition. Throws PreconditionError if x is not right A-linear.
Complex trace(const DenseOperator& x, double tol = 1e-10);
Complex trace(const DenseOperator& x, std::span<const Bisection> partition, double tol = 1e-10);
Complex trace(const FibreOperator& x, double tol = 1e-10);

// ---------------------------------------------------------------------------
// A-bilinear maps on M

// A linear map on coefficient functions, stored in the point-mass basis:
// column g holds the coefficients of Phi(delta_g). Construction checks
// A-bilinearity (Phi(delta_g) supported on arrows with the same source and
// range as g) and, when flagged, unitality.
class CpMap {
 public:
  CpMap(GroupoidPtr g, CMatrix m, bool unital = true, double tol = 1e-10);

  static CpMap identity(GroupoidPtr g);
  static CpMap expectation(GroupoidPtr g);  // E_A
  // f -> F f, without any positivity check.
  static CpMap multiplier(const ArrowFunction& F, bool unital = true);

  const FiniteGroupoid& groupoid() const { return *g_; }
  const GroupoidPtr& groupoid_ptr() const { return g_; }
  const CMatrix& matrix() const { return m_; }
  bool unital() const { return unital_; }

  ArrowFunction apply(const ArrowFunction& f) const;
  VnElement apply(const VnElement& m) const;

 private:
  GroupoidPtr g_;
  CMatrix m_;
  bool unital_;
};

double a_bilinearity_defect(const FiniteGroupoid& g, const CMatrix& m);

// Phi(L(f)) = L(F f). Throws PreconditionError unless F is positive definite
// with F = 1 on units.
CpMap cp_from_pd(const ArrowFunction& F, double tol = 1e-10);

struct StinespringReport {
  double residual = 0.0;          // max entry of S^*(L(f) (x) I)S - L(F f)
  double isometry_defect = 0.0;   // max entry of S^* S - I
  std::vector<std::string> warnings;
};

// Builds S per source fibre from gns(F) and compares both sides for every
// point mass f.
StinespringReport verify_stinespring(const ArrowFunction& F, double tol = 1e-10);

// F_Phi(g) = E_A(Phi(1_S) * 1_S^*)(dst g), S the piece containing g.
ArrowFunction pd_from_cp(const CpMap& phi);
ArrowFunction pd_from_cp(const CpMap& phi, std::span<const Bisection> partition);

struct ProbeResult {
  bool positive = true;
  double min_eig = 0.0;
  double scale = 1.0;
  int failing_sample = -1;
};

// Randomized complete positivity check at matrix size k (1 <= k <= 4) on 50
// samples x = y^* y in M_k(M). Sample 0 is the Gram element of the first k
// bisection indicators.
ProbeResult complete_positivity_probe(const CpMap& phi, int k, std::uint64_t seed = 0,
                                      int samples = 50, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Relative Haagerup witnesses

struct HaagerupWitnessStage {
  double expectation_defect = 0.0;  // max |E_A(Phi(delta_g)) - E_A(delta_g)|
  double displacement = 0.0;        // max_g ||Phi(delta_g) - delta_g||_2
  std::vector<MassAtThreshold> profile;  // nu({|F_Phi| > eps})
};

struct HaagerupWitnessReport {
  std::vector<HaagerupWitnessStage> stages;
  bool expectation_preserved = true;
  bool displacement_decreasing = true;
  bool ok() const { return expectation_preserved && displacement_decreasing; }
};

HaagerupWitnessReport validate_haagerup_witness(std::span<const CpMap> maps,
                                                std::span<const double> eps,
                                                double tol = 1e-10);

}  // namespace hgpd
