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

#include "hgpd/convolution.hpp"

#include <algorithm>
#include <cmath>

#include "hgpd/error.hpp"
#include "hgpd/kernels.hpp"

namespace hgpd {

ArrowFunction::ArrowFunction(GroupoidPtr g) : g_(std::move(g)), v_(g_->num_arrows()) {}

ArrowFunction::ArrowFunction(GroupoidPtr g, std::vector<Complex> values)
    : g_(std::move(g)), v_(std::move(values)) {
  if (v_.size() != g_->num_arrows())
    throw PreconditionError("arrow function has " + std::to_string(v_.size()) +
                            " values for " + std::to_string(g_->num_arrows()) + " arrows");
}

ArrowFunction ArrowFunction::constant(GroupoidPtr g, Complex c) {
  const std::size_t n = g->num_arrows();
  return ArrowFunction(std::move(g), std::vector<Complex>(n, c));
}

ArrowFunction ArrowFunction::indicator(GroupoidPtr g, std::span<const Index> arrows) {
  ArrowFunction f(std::move(g));
  for (Index a : arrows) f[a] = 1.0;
  return f;
}

ArrowFunction ArrowFunction::point_mass(GroupoidPtr g, Index arrow) {
  ArrowFunction f(std::move(g));
  f[arrow] = 1.0;
  return f;
}

ArrowFunction ArrowFunction::units(GroupoidPtr g) {
  ArrowFunction f(g);
  for (Index x = 0; x < static_cast<Index>(g->num_units()); ++x) f[g->unit_arrow(x)] = 1.0;
  return f;
}

ArrowFunction& ArrowFunction::operator+=(const ArrowFunction& o) {
  require_same_groupoid(*this, o);
  kernels::axpy(1.0, o.v_, v_);
  return *this;
}

ArrowFunction& ArrowFunction::operator-=(const ArrowFunction& o) {
  require_same_groupoid(*this, o);
  kernels::axpy(-1.0, o.v_, v_);
  return *this;
}

ArrowFunction& ArrowFunction::operator*=(Complex c) {
  for (auto& z : v_) z *= c;
  return *this;
}

bool ArrowFunction::is_real(double tol) const {
  return std::all_of(v_.begin(), v_.end(), [tol](Complex z) { return std::abs(z.imag()) <= tol; });
}

ArrowFunction operator+(ArrowFunction a, const ArrowFunction& b) { return a += b; }
ArrowFunction operator-(ArrowFunction a, const ArrowFunction& b) { return a -= b; }
ArrowFunction operator*(Complex c, ArrowFunction a) { return a *= c; }

ArrowFunction pointwise(const ArrowFunction& a, const ArrowFunction& b) {
  require_same_groupoid(a, b);
  ArrowFunction out(a.groupoid_ptr());
  kernels::pointwise_mul(a.values(), b.values(), out.values());
  return out;
}

bool same_groupoid(const ArrowFunction& a, const ArrowFunction& b) {
  return a.groupoid_ptr() == b.groupoid_ptr() ||
         structurally_equal(a.groupoid(), b.groupoid());
}

void require_same_groupoid(const ArrowFunction& a, const ArrowFunction& b) {
  if (!same_groupoid(a, b)) throw PreconditionError("groupoid mismatch");
}

ArrowFunction convolve(const ArrowFunction& f, const ArrowFunction& g) {
  require_same_groupoid(f, g);
  const FiniteGroupoid& G = f.groupoid();
  ArrowFunction out(f.groupoid_ptr());
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a)
    out[a] = kernels::gather_mul_sum(f.values().data(), G.factor_left(a), g.values().data(),
                                     G.factor_right(a));
  return out;
}

ArrowFunction involute(const ArrowFunction& f) {
  const FiniteGroupoid& G = f.groupoid();
  ArrowFunction out(f.groupoid_ptr());
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a)
    out[a] = std::conj(f[G.inverse(a)]);
  return out;
}

double i_norm(const ArrowFunction& f) {
  const FiniteGroupoid& G = f.groupoid();
  double best = 0.0;
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    double r = 0.0, s = 0.0;
    for (Index a : G.range_fibre(x)) r += std::abs(f[a]);
    for (Index a : G.source_fibre(x)) s += std::abs(f[a]);
    best = std::max({best, r, s});
  }
  return best;
}

Complex l2_inner(const ArrowFunction& f, const ArrowFunction& g) {
  require_same_groupoid(f, g);
  return kernels::weighted_dot(f.values(), g.values(), f.groupoid().nu_weights());
}

double l2_norm(const ArrowFunction& f) {
  return std::sqrt(kernels::weighted_sq_norm(f.values(), f.groupoid().nu_weights()));
}

double max_abs_diff(const ArrowFunction& a, const ArrowFunction& b) {
  require_same_groupoid(a, b);
  return kernels::max_abs_diff(a.values(), b.values());
}

double sup_norm(const ArrowFunction& f) {
  double m = 0.0;
  for (Complex z : f.values()) m = std::max(m, std::abs(z));
  return m;
}

ArrowFunction delta_power(GroupoidPtr g, double p) {
  ArrowFunction out(g);
  const auto nu = g->nu_weights();
  const auto nu_inv = g->nu_inv_weights();
  for (std::size_t a = 0; a < g->num_arrows(); ++a) out[a] = std::pow(nu_inv[a] / nu[a], p);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::span<const Index> fibre(const FiniteGroupoid& g, Fibres kind, Index x) {
  return kind == Fibres::Source ? g.source_fibre(x) : g.range_fibre(x);
}

void require_same(const FibreOperator& a, const FibreOperator& b) {
  if (a.kind() != b.kind()) throw PreconditionError("fibre operators on different fibrations");
  if (a.groupoid_ptr() != b.groupoid_ptr() &&
      !structurally_equal(a.groupoid(), b.groupoid()))
    throw PreconditionError("groupoid mismatch");
}

}  // namespace

FibreOperator::FibreOperator(GroupoidPtr g, Fibres kind) : g_(std::move(g)), kind_(kind) {
  for (Index x = 0; x < static_cast<Index>(g_->num_units()); ++x) {
    const auto n = static_cast<Eigen::Index>(fibre(*g_, kind_, x).size());
    blocks_.push_back(CMatrix::Zero(n, n));
  }
}

FibreOperator::FibreOperator(GroupoidPtr g, Fibres kind, std::vector<CMatrix> blocks)
    : g_(std::move(g)), kind_(kind), blocks_(std::move(blocks)) {
  if (blocks_.size() != g_->num_units())
    throw PreconditionError("fibre operator needs one block per unit");
  for (Index x = 0; x < static_cast<Index>(g_->num_units()); ++x) {
    const auto n = static_cast<Eigen::Index>(fibre(*g_, kind_, x).size());
    if (blocks_[x].rows() != n || blocks_[x].cols() != n)
      throw PreconditionError("block size does not match fibre cardinality at unit " +
                              g_->unit_id(x));
  }
}

FibreOperator FibreOperator::identity(GroupoidPtr g, Fibres kind) {
  FibreOperator op(std::move(g), kind);
  for (auto& b : op.blocks_) b.setIdentity();
  return op;
}

ArrowFunction FibreOperator::apply(const ArrowFunction& xi) const {
  if (xi.groupoid_ptr() != g_ && !structurally_equal(xi.groupoid(), *g_))
    throw PreconditionError("groupoid mismatch");
  ArrowFunction out(g_);
  for (Index x = 0; x < static_cast<Index>(g_->num_units()); ++x) {
    const auto f = fibre(*g_, kind_, x);
    CVector v(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) v(i) = xi[f[i]];
    const CVector w = blocks_[x] * v;
    for (std::size_t i = 0; i < f.size(); ++i) out[f[i]] = w(i);
  }
  return out;
}

FibreOperator FibreOperator::adjoint() const {
  std::vector<CMatrix> b;
  b.reserve(blocks_.size());
  for (const auto& m : blocks_) b.push_back(m.adjoint());
  return FibreOperator(g_, kind_, std::move(b));
}

double FibreOperator::op_norm() const {
  double m = 0.0;
  for (const auto& b : blocks_) m = std::max(m, spectral_norm(b));
  return m;
}

FibreOperator operator*(const FibreOperator& a, const FibreOperator& b) {
  require_same(a, b);
  std::vector<CMatrix> out;
  for (std::size_t x = 0; x < a.blocks().size(); ++x) out.push_back(a.blocks()[x] * b.blocks()[x]);
  return FibreOperator(a.groupoid_ptr(), a.kind(), std::move(out));
}

FibreOperator operator+(const FibreOperator& a, const FibreOperator& b) {
  require_same(a, b);
  std::vector<CMatrix> out;
  for (std::size_t x = 0; x < a.blocks().size(); ++x) out.push_back(a.blocks()[x] + b.blocks()[x]);
  return FibreOperator(a.groupoid_ptr(), a.kind(), std::move(out));
}

double max_block_diff(const FibreOperator& a, const FibreOperator& b) {
  require_same(a, b);
  double m = 0.0;
  for (std::size_t x = 0; x < a.blocks().size(); ++x)
    m = std::max(m, max_entry_diff(a.blocks()[x], b.blocks()[x]));
  return m;
}

FibreOperator regular_rep(const ArrowFunction& f) {
  const FiniteGroupoid& G = f.groupoid();
  FibreOperator op(f.groupoid_ptr(), Fibres::Source);
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    const auto fib = G.source_fibre(x);
    CMatrix& m = op.block(x);
    for (std::size_t i = 0; i < fib.size(); ++i)
      for (std::size_t j = 0; j < fib.size(); ++j)
        m(i, j) = f[G.compose(fib[i], G.inverse(fib[j]))];
  }
  return op;
}

RightConvolution right_convolve(const ArrowFunction& xi, const ArrowFunction& g) {
  ArrowFunction value = convolve(xi, g);
  const ArrowFunction f = pointwise(delta_power(g.groupoid_ptr(), -0.5), g);
  const double norm = l2_norm(value);
  const double bound = i_norm(f) * l2_norm(xi);
  return {std::move(value), norm, bound};
}

}  // namespace hgpd
