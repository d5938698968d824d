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

// Reference computations for tests. Everything here works from the raw
// composition table with plain loops and shares no code path with the
// library routines it is compared against.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hgpd/convolution.hpp"

namespace hgpd::oracle {

using Vec = std::vector<Complex>;

inline Index n_arrows(const FiniteGroupoid& g) { return static_cast<Index>(g.num_arrows()); }
inline Index n_units(const FiniteGroupoid& g) { return static_cast<Index>(g.num_units()); }

inline double mu(const FiniteGroupoid& g, Index x) { return to_double(g.mass(x)); }

// (f*h)(c) = sum over all pairs (a, b) with a b = c.
inline Vec convolve(const FiniteGroupoid& g, const Vec& f, const Vec& h) {
  Vec out(g.num_arrows());
  for (Index a = 0; a < n_arrows(g); ++a)
    for (Index b = 0; b < n_arrows(g); ++b) {
      const Index c = g.compose(a, b);
      if (c != kNone) out[c] += f[a] * h[b];
    }
  return out;
}

inline Vec involute(const FiniteGroupoid& g, const Vec& f) {
  Vec out(f.size());
  for (Index a = 0; a < n_arrows(g); ++a) out[a] = std::conj(f[g.inverse(a)]);
  return out;
}

inline double i_norm(const FiniteGroupoid& g, const Vec& f) {
  double best = 0.0;
  for (Index x = 0; x < n_units(g); ++x) {
    double r = 0.0, s = 0.0;
    for (Index a = 0; a < n_arrows(g); ++a) {
      if (g.dst(a) == x) r += std::abs(f[a]);
      if (g.src(a) == x) s += std::abs(f[a]);
    }
    best = std::max({best, r, s});
  }
  return best;
}

// Matrix of xi -> f * xi on all arrows in the point-mass basis.
inline Eigen::MatrixXcd left_matrix(const FiniteGroupoid& g, const Vec& f) {
  const Index n = n_arrows(g);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const Index c = g.compose(a, b);
      if (c != kNone) m(c, b) += f[a];
    }
  return m;
}

// Operator norm on L^2(G, nu): conjugate by the square root of the weights.
inline double weighted_op_norm(const FiniteGroupoid& g, const Eigen::MatrixXcd& m) {
  const Index n = n_arrows(g);
  Eigen::VectorXd w(n);
  for (Index a = 0; a < n; ++a) w[a] = std::sqrt(mu(g, g.src(a)));
  const Eigen::MatrixXcd c = w.asDiagonal() * m * w.cwiseInverse().asDiagonal();
  if (n == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(c).singularValues()(0);
}

inline double max_diff(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline Vec values(const ArrowFunction& f) { return Vec(f.values().begin(), f.values().end()); }

// PSD up to tol * scale via a shifted Cholesky factorization.
inline bool psd(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale) return false;
  const Eigen::MatrixXcd shifted =
      m + tol * scale * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
  return llt.info() == Eigen::Success;
}

// PD check over every r-fibre, restricted to a member mask when given.
inline bool positive_definite(const FiniteGroupoid& g, const Vec& F, double tol,
                              const std::vector<bool>* member = nullptr) {
  for (Index x = 0; x < n_units(g); ++x) {
    std::vector<Index> fib;
    for (Index a = 0; a < n_arrows(g); ++a)
      if (g.dst(a) == x && (!member || (*member)[a])) fib.push_back(a);
    const Index d = static_cast<Index>(fib.size());
    Eigen::MatrixXcd m(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) m(i, j) = F[g.compose(g.inverse(fib[i]), fib[j])];
    if (!psd(m, tol)) return false;
  }
  return true;
}

// Fibre graphs by boolean transitive closure: Q is a treeing iff it is
// symmetric, avoids units, and every fibre graph is connected with exactly
// |V| - 1 undirected edges.
inline bool treeing(const FiniteGroupoid& g, const std::vector<bool>& inQ) {
  for (Index a = 0; a < n_arrows(g); ++a) {
    if (!inQ[a]) continue;
    if (g.is_unit_arrow(a) || !inQ[g.inverse(a)]) return false;
  }
  for (Index x = 0; x < n_units(g); ++x) {
    std::vector<Index> v;
    for (Index a = 0; a < n_arrows(g); ++a)
      if (g.dst(a) == x) v.push_back(a);
    const std::size_t n = v.size();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i) {
      reach[i][i] = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && inQ[g.compose(g.inverse(v[i]), v[j])]) {
          reach[i][j] = 1;
          if (i < j) ++edges;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (!reach[0][j]) return false;
    if (edges + 1 != n) return false;
  }
  return true;
}

// Regular coefficient of a unit field:
// F(c) = sum_{dst h = dst c} conj(xi(h)) xi(c^-1 h).
inline Vec regular_coefficient(const FiniteGroupoid& g, const Vec& xi) {
  Vec F(g.num_arrows());
  for (Index c = 0; c < n_arrows(g); ++c)
    for (Index h = 0; h < n_arrows(g); ++h)
      if (g.dst(h) == g.dst(c)) F[c] += std::conj(xi[h]) * xi[g.compose(g.inverse(c), h)];
  return F;
}

}  // namespace hgpd::oracle
