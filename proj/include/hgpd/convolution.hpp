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

// The convolution *-algebra of a finite groupoid and its left regular
// representation.
//
// On a finite groupoid every function on arrows has finite I-norm and
// finite L^2(G, nu) norm, so one type serves both as an algebra element and
// as a vector. The L^2 norm is always the nu-weighted one:
//   ||xi||_2^2 = sum_g |xi(g)|^2 mu(src(g)).

#include <span>
#include <vector>

#include "hgpd/groupoid.hpp"
#include "hgpd/linalg.hpp"

namespace hgpd {

class ArrowFunction {
 public:
  explicit ArrowFunction(GroupoidPtr g);  // zero function
  ArrowFunction(GroupoidPtr g, std::vector<Complex> values);

  static ArrowFunction constant(GroupoidPtr g, Complex c);
  static ArrowFunction indicator(GroupoidPtr g, std::span<const Index> arrows);
  static ArrowFunction point_mass(GroupoidPtr g, Index arrow);
  // 1_X, the indicator of the unit arrows.
  static ArrowFunction units(GroupoidPtr g);

  const FiniteGroupoid& groupoid() const { return *g_; }
  const GroupoidPtr& groupoid_ptr() const { return g_; }
  std::size_t size() const { return v_.size(); }

  Complex operator[](Index a) const { return v_[a]; }
  Complex& operator[](Index a) { return v_[a]; }
  std::span<const Complex> values() const { return v_; }
  std::span<Complex> values() { return v_; }

  ArrowFunction& operator+=(const ArrowFunction& o);
  ArrowFunction& operator-=(const ArrowFunction& o);
  ArrowFunction& operator*=(Complex c);

  bool is_real(double tol) const;

 private:
  GroupoidPtr g_;
  std::vector<Complex> v_;
};

ArrowFunction operator+(ArrowFunction a, const ArrowFunction& b);
ArrowFunction operator-(ArrowFunction a, const ArrowFunction& b);
ArrowFunction operator*(Complex c, ArrowFunction a);
// Pointwise product (not convolution).
ArrowFunction pointwise(const ArrowFunction& a, const ArrowFunction& b);

// Both functions live on the same groupoid (same object, or structurally
// equal tables). require_* throws PreconditionError("groupoid mismatch").
bool same_groupoid(const ArrowFunction& a, const ArrowFunction& b);
void require_same_groupoid(const ArrowFunction& a, const ArrowFunction& b);

// (f*g)(h) = sum_{h1 h2 = h} f(h1) g(h2)
ArrowFunction convolve(const ArrowFunction& f, const ArrowFunction& g);
// f*(h) = conj(f(h^-1))
ArrowFunction involute(const ArrowFunction& f);
// max over units x of max(sum_{dst=x} |f|, sum_{src=x} |f|)
double i_norm(const ArrowFunction& f);

// <f, g> = sum_h conj(f(h)) g(h) mu(src(h)), conjugate-linear in f.
Complex l2_inner(const ArrowFunction& f, const ArrowFunction& g);
double l2_norm(const ArrowFunction& f);
double max_abs_diff(const ArrowFunction& a, const ArrowFunction& b);
double sup_norm(const ArrowFunction& f);

// delta^p with delta(h) = mu(dst(h)) / mu(src(h)).
ArrowFunction delta_power(GroupoidPtr g, double p);

// Family of matrices indexed by units. With Fibres::Source the block at x
// acts on l^2(G_x) (basis: source_fibre(x)); with Fibres::Range on l^2(G^x).
enum class Fibres { Source, Range };

class FibreOperator {
 public:
  FibreOperator(GroupoidPtr g, Fibres kind);  // zero blocks
  FibreOperator(GroupoidPtr g, Fibres kind, std::vector<CMatrix> blocks);

  static FibreOperator identity(GroupoidPtr g, Fibres kind);

  const FiniteGroupoid& groupoid() const { return *g_; }
  const GroupoidPtr& groupoid_ptr() const { return g_; }
  Fibres kind() const { return kind_; }
  const CMatrix& block(Index x) const { return blocks_[x]; }
  CMatrix& block(Index x) { return blocks_[x]; }
  const std::vector<CMatrix>& blocks() const { return blocks_; }

  ArrowFunction apply(const ArrowFunction& xi) const;
  FibreOperator adjoint() const;
  // max over blocks of the spectral norm.
  double op_norm() const;

 private:
  GroupoidPtr g_;
  Fibres kind_;
  std::vector<CMatrix> blocks_;
};

FibreOperator operator*(const FibreOperator& a, const FibreOperator& b);
FibreOperator operator+(const FibreOperator& a, const FibreOperator& b);
double max_block_diff(const FibreOperator& a, const FibreOperator& b);

// L(f): the block at x is L_x(f)[h, h2] = f(h h2^-1) on l^2(G_x).
FibreOperator regular_rep(const ArrowFunction& f);

struct RightConvolution {
  ArrowFunction value;  // xi * g
  double norm;          // ||xi * g||_2
  double bound;         // ||delta^{-1/2} g||_I ||xi||_2
};

RightConvolution right_convolve(const ArrowFunction& xi, const ArrowFunction& g);

}  // namespace hgpd
