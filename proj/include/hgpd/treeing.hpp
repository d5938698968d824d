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

// Graphings and treeings.
//
// A graphing Q is a symmetric set of non-unit arrows generating G. Its fibre
// graph over x has the vertices G^x and an edge between g1 and g2 whenever
// g1^-1 g2 lies in Q. Q is a treeing when every fibre graph is a tree.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hgpd/convolution.hpp"

namespace hgpd {

enum class TreeingVerdict {
  Treeing,
  NotSymmetric,   // some q in Q has q^-1 outside Q
  TouchesUnits,   // Q contains a unit arrow
  NotGenerating,  // some fibre graph is disconnected
  Cyclic,         // connected but some fibre graph has a cycle
};

const char* verdict_name(TreeingVerdict v);

struct FibreDiagnostic {
  Index unit = kNone;
  std::size_t vertices = 0;
  std::size_t edges = 0;  // undirected
  bool connected = true;
  // A cycle basis: one closed vertex walk per non-tree edge.
  std::vector<std::vector<Index>> cycles;
};

struct TreeingReport {
  TreeingVerdict verdict = TreeingVerdict::Treeing;
  std::string message;
  std::vector<Index> offending;  // arrows behind a symmetry or unit failure
  std::vector<FibreDiagnostic> fibres;

  bool is_treeing() const { return verdict == TreeingVerdict::Treeing; }
};

// Q may list an arrow more than once; duplicates are ignored.
TreeingReport is_treeing(const FiniteGroupoid& g, std::span<const Index> Q);

// max_x #(Q cap G^x)
std::int64_t max_fibre_degree(const FiniteGroupoid& g, std::span<const Index> Q);

struct TreeMetric {
  GroupoidPtr groupoid;
  // dist[x][i][j]: distance between range_fibre(x)[i] and range_fibre(x)[j].
  std::vector<std::vector<std::vector<std::int64_t>>> dist;
  // psi(g) = d_{dst g}(dst g, g)
  ArrowFunction psi;

  std::int64_t distance(Index x, Index g1, Index g2) const;
};

// BFS length metric of the fibre graphs. Throws GroupoidError if some fibre
// graph is disconnected.
TreeMetric tree_metric(const GroupoidPtr& g, std::span<const Index> Q);

struct Orientation {
  std::vector<Index> plus;
  std::vector<Index> minus;
  // Empirical: left translation maps oriented edges to oriented edges.
  bool edges_invariant = true;
};

// Q_plus = {q : index(q) < index(q^-1)} in input order. Throws
// PreconditionError naming the arrow if some q equals q^-1.
Orientation orient(const FiniteGroupoid& g, std::span<const Index> Q);

struct HaagerupStage {
  int k = 0;
  std::vector<Index> generators;  // Q_k, symmetrized
  std::vector<bool> subgroupoid;  // G_k
  ArrowFunction psi;              // length function of G_k, zero off G_k
  std::int64_t n = 0;             // n_k
  double sup_deviation = 0.0;     // sup over {psi_k <= k} of 1 - F_k
  ArrowFunction F;                // exp(-psi_k / n_k) on G_k, zero elsewhere
};

// Stages k = 1..m. n_k is the least n > n_{k-1} with
// sup_{psi_k <= k} (1 - exp(-psi_k / n)) <= 1/k. Throws PreconditionError
// unless Q is a treeing, and std::runtime_error if no n <= 10^6 qualifies.
std::vector<HaagerupStage> haagerup_from_treeing(const GroupoidPtr& g, std::span<const Index> Q,
                                                 int m);
std::vector<HaagerupStage> haagerup_from_treeing(const GroupoidPtr& g, std::span<const Index> Q,
                                                 int m, std::span<const Bisection> partition);

struct CayleyReport {
  std::vector<Index> symmetric_set;  // S cup S^-1 without the identity
  TreeingReport treeing;
};

// Throws PreconditionError unless g has a single unit.
CayleyReport cayley_consistency(const FiniteGroupoid& g, std::span<const Index> S);

}  // namespace hgpd
