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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hgpd/error.hpp"
#include "hgpd/funkit.hpp"

namespace hgpd {

UnitField::UnitField(ArrowFunction xi, double tol) : xi_(std::move(xi)) {
  const FiniteGroupoid& G = xi_.groupoid();
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    double s = 0.0;
    for (Index a : G.range_fibre(x)) s += std::norm(xi_[a]);
    if (std::abs(s - 1.0) > tol) {
      std::ostringstream msg;
      msg << "unit field has fibre norm^2 " << s << " over " << G.unit_id(x);
      throw PreconditionError(msg.str());
    }
  }
}

UnitField normalize_fibres(const ArrowFunction& xi) {
  const FiniteGroupoid& G = xi.groupoid();
  ArrowFunction out = xi;
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    double s = 0.0;
    for (Index a : G.range_fibre(x)) s += std::norm(xi[a]);
    if (s == 0.0) throw PreconditionError("cannot normalize: fibre over " + G.unit_id(x) + " is zero");
    for (Index a : G.range_fibre(x)) out[a] /= std::sqrt(s);
  }
  return UnitField(std::move(out));
}

ArrowFunction coefficient_of_regular(const UnitField& field) {
  const ArrowFunction& xi = field.values();
  const FiniteGroupoid& G = xi.groupoid();
  ArrowFunction F(xi.groupoid_ptr());
  for (Index g = 0; g < static_cast<Index>(G.num_arrows()); ++g) {
    const Index ginv = G.inverse(g);
    Complex s = 0.0;
    for (Index h : G.range_fibre(G.dst(g))) s += std::conj(xi[h]) * xi[G.compose(ginv, h)];
    F[g] = s;
  }
  return F;
}

FibreOperator rho_operator(const ArrowFunction& F) {
  const FiniteGroupoid& G = F.groupoid();
  FibreOperator op(F.groupoid_ptr(), Fibres::Range);
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    const auto fib = G.range_fibre(x);
    CMatrix& m = op.block(x);
    for (std::size_t i = 0; i < fib.size(); ++i)
      for (std::size_t j = 0; j < fib.size(); ++j)
        m(i, j) = F[G.compose(G.inverse(fib[i]), fib[j])];
  }
  return op;
}

double rho_equivariance_defect(const ArrowFunction& F) {
  const FiniteGroupoid& G = F.groupoid();
  const FibreOperator rho = rho_operator(F);
  double worst = 0.0;
  for (Index g = 0; g < static_cast<Index>(G.num_arrows()); ++g) {
    const Index r = G.dst(g), s = G.src(g);
    const auto from = G.range_fibre(s);
    CMatrix lambda = CMatrix::Zero(static_cast<Eigen::Index>(G.range_fibre(r).size()),
                                   static_cast<Eigen::Index>(from.size()));
    for (std::size_t j = 0; j < from.size(); ++j)
      lambda(G.range_pos(G.compose(g, from[j])), static_cast<Eigen::Index>(j)) = 1.0;
    worst = std::max(worst, max_entry_diff(rho.block(r) * lambda, lambda * rho.block(s)));
  }
  return worst;
}

UnitField xi_from_pd(const ArrowFunction& F, const XiOptions& opts) {
  const FiniteGroupoid& G = F.groupoid();
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x)
    if (std::abs(F[G.unit_arrow(x)] - 1.0) > 1e-10)
      throw PreconditionError("xi_from_pd: F is not 1 on unit " + G.unit_id(x));
  if (!is_positive_definite(F).positive_definite)
    throw PreconditionError("xi_from_pd: F is not positive definite");
  const FibreOperator rho = rho_operator(F);
  ArrowFunction xi(F.groupoid_ptr());
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    const CMatrix root = psd_sqrt(rho.block(x), opts.clamp_tol);
    const auto fib = G.range_fibre(x);
    const Index u = G.range_pos(G.unit_arrow(x));
    for (std::size_t i = 0; i < fib.size(); ++i) {
      const Complex v = root(static_cast<Eigen::Index>(i), u);
      xi[fib[i]] = opts.absolute ? Complex(std::abs(v)) : v;
    }
  }
  return UnitField(std::move(xi), 1e-8);
}

AmenabilityReport amenability_witness_check(std::span<const UnitField> sequence, double tol) {
  AmenabilityReport rep;
  rep.note = "weak-* convergence measured as sup-norm deviation on the finite arrow set";
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& xi : sequence) {
    const ArrowFunction F = coefficient_of_regular(xi);
    const FiniteGroupoid& G = F.groupoid();
    AmenabilityStage st;
    for (Complex v : F.values()) st.deviation = std::max(st.deviation, std::abs(1.0 - v));
    for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
      std::int64_t c = 0;
      for (Index a : G.range_fibre(x))
        if (std::abs(xi.values()[a]) > tol) ++c;
      st.max_fibre_support = std::max(st.max_fibre_support, c);
    }
    rep.monotone = rep.monotone && st.deviation <= previous + tol;
    previous = st.deviation;
    rep.final_deviation = st.deviation;
    rep.stages.push_back(st);
  }
  return rep;
}

std::vector<UnitField> interpolating_witness(const GroupoidPtr& gp, int m) {
  if (m < 1) throw PreconditionError("witness needs at least one stage");
  const FiniteGroupoid& G = *gp;
  const ArrowFunction one = ArrowFunction::units(gp);
  ArrowFunction uniform(gp);
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a)
    uniform[a] = 1.0 / std::sqrt(static_cast<double>(G.range_fibre(G.dst(a)).size()));
  std::vector<UnitField> out;
  for (int n = 1; n <= m; ++n) {
    const double t = static_cast<double>(n) / m;
    out.push_back(normalize_fibres(Complex(1.0 - t) * one + Complex(t) * uniform));
  }
  return out;
}

ArrowFunction nu_inverse_to_nu(const ArrowFunction& xi) {
  return pointwise(delta_power(xi.groupoid_ptr(), 0.5), xi);
}

double v_unitarity_defect(const FiniteGroupoid& g) {
  const auto nu = g.nu_weights();
  const auto nu_inv = g.nu_inv_weights();
  double worst = 0.0;
  for (std::size_t a = 0; a < nu.size(); ++a) {
    const double delta = nu_inv[a] / nu[a];
    worst = std::max(worst, std::abs(delta * nu[a] - nu_inv[a]));
  }
  return worst;
}

}  // namespace hgpd
