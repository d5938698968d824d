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

// Positive definite and conditionally negative definite functions on a
// finite groupoid, their representations and cocycles.
//
// F is positive definite when for every unit x the Gram matrix
//   M_x[i, j] = F(g_i^-1 g_j),  g_i, g_j in G^x,
// is positive semidefinite. The check is a Hermitian eigenvalue test with
// tolerance -tol * max(1, ||M_x||_inf), so a failing fibre comes with its
// minimal eigenvalue and eigenvector as a witness.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgpd/convolution.hpp"

namespace hgpd {

struct Tolerances {
  double algebraic = 1e-10;
  double spectral = 1e-8;
};

// The r-fibre Gram matrix [F(g_i^-1 g_j)] over range_fibre(x).
CMatrix fibre_gram(const ArrowFunction& F, Index x);

struct FibreSpectrum {
  Index unit = kNone;
  std::size_t dim = 0;
  double min_eig = 0.0;  // for CND: the largest eigenvalue of the compressed matrix
  double max_eig = 0.0;
  double scale = 1.0;    // max(1, ||M_x||_inf)
  double hermitian_defect = 0.0;
  bool ok = true;
  CVector witness;       // eigenvector attaining min_eig (PD) or max_eig (CND)
};

struct PdReport {
  bool positive_definite = true;
  std::vector<FibreSpectrum> fibres;
};

PdReport is_positive_definite(const ArrowFunction& F, double tol = 1e-10);

struct CndReport {
  bool cnd = true;
  double unit_defect = 0.0;      // max |psi(x)| over unit arrows
  double symmetry_defect = 0.0;  // max |psi(g) - psi(g^-1)|
  std::vector<FibreSpectrum> fibres;
  // Consequence of the definition: psi >= 0. Reported separately.
  bool nonnegative = true;
  double min_value = 0.0;
};

// Throws PreconditionError if psi has an imaginary part above tol.
CndReport is_cnd(const ArrowFunction& psi, double tol = 1e-10);

// exp(-t psi). Throws PreconditionError unless t > 0 and psi is CND.
ArrowFunction schoenberg(const ArrowFunction& psi, double t, double tol = 1e-10);

// Extension by zero of F restricted to the wide subgroupoid H (a membership
// mask over the arrows of F's groupoid). Throws PreconditionError if H is
// not a wide subgroupoid or F is not positive definite on H.
ArrowFunction extend_by_zero(const ArrowFunction& F, const std::vector<bool>& subgroupoid,
                             double tol = 1e-10);
// Same, with F given on a separate groupoid H whose arrows are identified
// with arrows of G by id.
ArrowFunction extend_by_zero(const ArrowFunction& F_on_H, const GroupoidPtr& G,
                             double tol = 1e-10);
// Positive definiteness of F restricted to the subgroupoid mask.
PdReport is_positive_definite_on(const ArrowFunction& F, const std::vector<bool>& subgroupoid,
                                 double tol = 1e-10);

// ---------------------------------------------------------------------------
// Representations

// pi[g] maps H(src(g)) to H(dst(g)) and has shape dims[dst(g)] x dims[src(g)].
struct Representation {
  GroupoidPtr groupoid;
  std::vector<Eigen::Index> dims;
  std::vector<CMatrix> pi;

  static Representation trivial(GroupoidPtr g);
};

struct RepresentationDefects {
  double shape = 0.0;  // 1 if any matrix has the wrong shape
  double identity = 0.0;
  double multiplicativity = 0.0;
  double inverse = 0.0;
  double unitarity = 0.0;

  double max() const;
};

RepresentationDefects check_representation(const Representation& rep);

// One vector per unit, xi[x] in H(x).
struct Section {
  std::vector<CVector> xi;
};

// F(g) = <xi(dst g), pi(g) xi(src g)>. Throws PreconditionError on shape
// mismatch.
ArrowFunction coefficient(const Representation& rep, const Section& xi);

struct GnsResult {
  Representation rep;
  Section xi;
  std::vector<std::string> warnings;  // ambiguous rank decisions
};

// GNS construction. H(x) is the range of the Gram matrix M_x truncated at
// rank_tol * (largest eigenvalue); the section is the image of the unit
// arrow. Throws PreconditionError unless F is positive definite with F = 1
// on units.
GnsResult gns(const ArrowFunction& F, double rank_tol = 1e-10, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Cocycles and conditionally negative definite functions

// b[g] lies in H(dst(g)).
struct Cocycle {
  Representation rep;
  std::vector<CVector> b;
};

// max over composable pairs of |b(g1 g2) - b(g1) - pi(g1) b(g2)|.
double cocycle_defect(const Cocycle& c);

// psi(g) = ||b(g)||^2. Throws PreconditionError if the cocycle law or the
// representation axioms fail beyond tol.
ArrowFunction cocycle_to_cnd(const Cocycle& c, double tol = 1e-10);

// psi = sum_k alpha_k Re(1 - F_k). Throws PreconditionError if some F_k is
// not positive definite with F_k = 1 on units, or an alpha is not positive.
ArrowFunction cnd_from_pd_sequence(std::span<const ArrowFunction> F,
                                   std::span<const double> alpha, double tol = 1e-10);
// Default weights alpha_k = k (1-based).
ArrowFunction cnd_from_pd_sequence(std::span<const ArrowFunction> F, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Properness profiles

struct MassAtThreshold {
  double threshold = 0.0;
  Rational mass = 0;  // exact nu-mass
};

// nu({|F| > eps}) for each eps.
std::vector<MassAtThreshold> mass_above(const ArrowFunction& F, std::span<const double> eps);
// nu({psi <= c}) for each c.
std::vector<MassAtThreshold> mass_at_most(const ArrowFunction& psi, std::span<const double> c);

struct BallBoundCheck {
  double radius = 0.0;
  Rational mass = 0;            // nu({psi <= c})
  std::int64_t ball_bound = 0;  // 1 + k + ... + k^floor(c)
  std::int64_t power_bound = 0; // k^floor(c), the textbook form
  bool ball_holds = true;
  bool power_holds = true;      // reported, not asserted
};

// Ball-size bound for a tree length function whose generating set meets
// every r-fibre in at most `degree` arrows.
std::vector<BallBoundCheck> tree_ball_bounds(const ArrowFunction& psi, std::int64_t degree,
                                             std::span<const double> radii);

}  // namespace hgpd
