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

#include "hgpd/treeing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "hgpd/error.hpp"
#include "hgpd/funkit.hpp"

namespace hgpd {
namespace {

std::vector<Index> dedupe(std::span<const Index> Q) {
  std::vector<Index> out;
  for (Index q : Q)
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  return out;
}

std::vector<bool> mask_of(const FiniteGroupoid& g, std::span<const Index> arrows) {
  std::vector<bool> m(g.num_arrows(), false);
  for (Index a : arrows) {
    if (a < 0 || a >= static_cast<Index>(g.num_arrows()))
      throw PreconditionError("arrow index out of range");
    m[a] = true;
  }
  return m;
}

// Fibre graph over x restricted to `member`: vertices in range_fibre order.
struct FibreGraph {
  std::vector<Index> vertices;
  std::vector<std::vector<std::size_t>> adj;
};

FibreGraph fibre_graph(const FiniteGroupoid& g, Index x, std::span<const Index> Q,
                       const std::vector<bool>& member) {
  FibreGraph fg;
  std::vector<long> pos(g.num_arrows(), -1);
  for (Index v : g.range_fibre(x))
    if (member[v]) {
      pos[v] = static_cast<long>(fg.vertices.size());
      fg.vertices.push_back(v);
    }
  fg.adj.resize(fg.vertices.size());
  for (std::size_t i = 0; i < fg.vertices.size(); ++i)
    for (Index q : Q) {
      const Index w = g.compose(fg.vertices[i], q);
      if (w != kNone && pos[w] >= 0) fg.adj[i].push_back(static_cast<std::size_t>(pos[w]));
    }
  return fg;
}

std::vector<std::int64_t> bfs(const FibreGraph& fg, std::size_t root) {
  std::vector<std::int64_t> d(fg.vertices.size(), -1);
  std::deque<std::size_t> queue{root};
  d[root] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : fg.adj[v])
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        queue.push_back(w);
      }
  }
  return d;
}

FibreDiagnostic diagnose(Index x, const FibreGraph& fg) {
  FibreDiagnostic diag;
  diag.unit = x;
  diag.vertices = fg.vertices.size();
  std::size_t directed = 0;
  for (const auto& a : fg.adj) directed += a.size();
  diag.edges = directed / 2;

  const std::size_t n = fg.vertices.size();
  std::vector<long> parent(n, -2), depth(n, 0);
  std::size_t components = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (parent[start] != -2) continue;
    ++components;
    parent[start] = -1;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : fg.adj[v])
        if (parent[w] == -2) {
          parent[w] = static_cast<long>(v);
          depth[w] = depth[v] + 1;
          queue.push_back(w);
        }
    }
  }
  diag.connected = components <= 1;

  // Fundamental cycles of the non-tree edges.
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : fg.adj[u]) {
      if (v <= u || parent[v] == static_cast<long>(u) || parent[u] == static_cast<long>(v))
        continue;
      std::vector<Index> up, down;
      long a = static_cast<long>(u), b = static_cast<long>(v);
      while (depth[a] > depth[b]) {
        up.push_back(fg.vertices[a]);
        a = parent[a];
      }
      while (depth[b] > depth[a]) {
        down.push_back(fg.vertices[b]);
        b = parent[b];
      }
      while (a != b) {
        up.push_back(fg.vertices[a]);
        down.push_back(fg.vertices[b]);
        a = parent[a];
        b = parent[b];
      }
      up.push_back(fg.vertices[a]);
      up.insert(up.end(), down.rbegin(), down.rend());
      up.push_back(fg.vertices[u]);
      diag.cycles.push_back(std::move(up));
    }
  return diag;
}

ArrowFunction length_function(const GroupoidPtr& gp, std::span<const Index> Q,
                              const std::vector<bool>& member) {
  const FiniteGroupoid& g = *gp;
  ArrowFunction psi(gp);
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x) {
    const FibreGraph fg = fibre_graph(g, x, Q, member);
    const auto root = std::find(fg.vertices.begin(), fg.vertices.end(), g.unit_arrow(x));
    const auto d = bfs(fg, static_cast<std::size_t>(root - fg.vertices.begin()));
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] < 0)
        throw GroupoidError("fibre graph over " + g.unit_id(x) + " is disconnected");
      psi[fg.vertices[i]] = static_cast<double>(d[i]);
    }
  }
  return psi;
}

}  // namespace

const char* verdict_name(TreeingVerdict v) {
  switch (v) {
    case TreeingVerdict::Treeing: return "treeing";
    case TreeingVerdict::NotSymmetric: return "not-symmetric";
    case TreeingVerdict::TouchesUnits: return "touches-units";
    case TreeingVerdict::NotGenerating: return "not-generating";
    case TreeingVerdict::Cyclic: return "cyclic";
  }
  return "unknown";
}

TreeingReport is_treeing(const FiniteGroupoid& g, std::span<const Index> Qin) {
  const std::vector<Index> Q = dedupe(Qin);
  const std::vector<bool> inQ = mask_of(g, Q);
  TreeingReport rep;

  for (Index q : Q)
    if (g.is_unit_arrow(q)) rep.offending.push_back(q);
  if (!rep.offending.empty()) {
    rep.verdict = TreeingVerdict::TouchesUnits;
    rep.message = "graphing contains unit arrow " + g.arrow_id(rep.offending.front());
    return rep;
  }
  for (Index q : Q)
    if (!inQ[g.inverse(q)]) rep.offending.push_back(q);
  if (!rep.offending.empty()) {
    const Index q = rep.offending.front();
    rep.verdict = TreeingVerdict::NotSymmetric;
    rep.message = "graphing is not symmetric: " + g.arrow_id(q) + " is in it but its inverse " +
                  g.arrow_id(g.inverse(q)) + " is not";
    return rep;
  }

  const std::vector<bool> all(g.num_arrows(), true);
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x)
    rep.fibres.push_back(diagnose(x, fibre_graph(g, x, Q, all)));
  for (const auto& f : rep.fibres)
    if (!f.connected) {
      rep.verdict = TreeingVerdict::NotGenerating;
      rep.message = "graphing does not generate: fibre graph over " + g.unit_id(f.unit) +
                    " is disconnected";
      return rep;
    }
  for (const auto& f : rep.fibres)
    if (!f.cycles.empty()) {
      rep.verdict = TreeingVerdict::Cyclic;
      std::string walk;
      for (Index v : f.cycles.front()) walk += (walk.empty() ? "" : " ") + g.arrow_id(v);
      rep.message = "fibre graph over " + g.unit_id(f.unit) + " has a cycle: " + walk;
      return rep;
    }
  return rep;
}

std::int64_t max_fibre_degree(const FiniteGroupoid& g, std::span<const Index> Qin) {
  const std::vector<Index> Q = dedupe(Qin);
  std::vector<std::int64_t> count(g.num_units(), 0);
  for (Index q : Q) ++count[g.dst(q)];
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

std::int64_t TreeMetric::distance(Index x, Index g1, Index g2) const {
  const FiniteGroupoid& g = *groupoid;
  if (g.dst(g1) != x || g.dst(g2) != x) throw PreconditionError("vertices not in fibre over unit");
  return dist[x][g.range_pos(g1)][g.range_pos(g2)];
}

TreeMetric tree_metric(const GroupoidPtr& gp, std::span<const Index> Qin) {
  const std::vector<Index> Q = dedupe(Qin);
  mask_of(*gp, Q);
  const std::vector<bool> all(gp->num_arrows(), true);
  TreeMetric m{gp, {}, ArrowFunction(gp)};
  for (Index x = 0; x < static_cast<Index>(gp->num_units()); ++x) {
    const FibreGraph fg = fibre_graph(*gp, x, Q, all);
    std::vector<std::vector<std::int64_t>> d;
    for (std::size_t i = 0; i < fg.vertices.size(); ++i) {
      d.push_back(bfs(fg, i));
      for (auto v : d.back())
        if (v < 0) throw GroupoidError("fibre graph over " + gp->unit_id(x) + " is disconnected");
    }
    m.dist.push_back(std::move(d));
  }
  for (Index a = 0; a < static_cast<Index>(gp->num_arrows()); ++a) {
    const Index x = gp->dst(a);
    m.psi[a] = static_cast<double>(m.distance(x, gp->unit_arrow(x), a));
  }
  return m;
}

Orientation orient(const FiniteGroupoid& g, std::span<const Index> Qin) {
  const std::vector<Index> Q = dedupe(Qin);
  std::vector<long> index(g.num_arrows(), -1);
  for (std::size_t i = 0; i < Q.size(); ++i) index[Q[i]] = static_cast<long>(i);
  Orientation o;
  for (Index q : Q) {
    if (g.inverse(q) == q)
      throw PreconditionError("cannot orient: " + g.arrow_id(q) + " is its own inverse");
    if (index[g.inverse(q)] < 0)
      throw PreconditionError("cannot orient: graphing is not symmetric at " + g.arrow_id(q));
    (index[q] < index[g.inverse(q)] ? o.plus : o.minus).push_back(q);
  }
  std::vector<bool> plus(g.num_arrows(), false);
  for (Index q : o.plus) plus[q] = true;
  const auto n = static_cast<Index>(g.num_arrows());
  for (Index v1 = 0; v1 < n && o.edges_invariant; ++v1)
    for (Index v2 = 0; v2 < n && o.edges_invariant; ++v2) {
      if (g.dst(v1) != g.dst(v2)) continue;
      const Index e = g.compose(g.inverse(v1), v2);
      if (!plus[e]) continue;
      for (Index t = 0; t < n; ++t) {
        if (g.src(t) != g.dst(v1)) continue;
        const Index w1 = g.compose(t, v1), w2 = g.compose(t, v2);
        if (!plus[g.compose(g.inverse(w1), w2)]) {
          o.edges_invariant = false;
          break;
        }
      }
    }
  return o;
}

std::vector<HaagerupStage> haagerup_from_treeing(const GroupoidPtr& gp, std::span<const Index> Q,
                                                 int m) {
  const auto partition = bisection_partition(*gp);
  return haagerup_from_treeing(gp, Q, m, partition);
}

std::vector<HaagerupStage> haagerup_from_treeing(const GroupoidPtr& gp, std::span<const Index> Qin,
                                                 int m, std::span<const Bisection> partition) {
  const FiniteGroupoid& g = *gp;
  const std::vector<Index> Q = dedupe(Qin);
  const TreeingReport tr = is_treeing(g, Q);
  if (!tr.is_treeing()) throw PreconditionError("haagerup_from_treeing: " + tr.message);
  std::vector<long> piece_of(g.num_arrows(), -1);
  for (std::size_t j = 0; j < partition.size(); ++j)
    for (Index a : partition[j]) piece_of[a] = static_cast<long>(j);
  if (std::find(piece_of.begin(), piece_of.end(), -1) != piece_of.end())
    throw PreconditionError("partition does not cover G");

  std::vector<HaagerupStage> out;
  std::int64_t prev_n = 0;
  for (int k = 1; k <= m; ++k) {
    HaagerupStage st{k, {}, {}, ArrowFunction(gp), 0, 0.0, ArrowFunction(gp)};
    std::vector<bool> gen(g.num_arrows(), false);
    for (Index q : Q)
      if (piece_of[q] < k) gen[q] = gen[g.inverse(q)] = true;
    for (Index q : Q)
      if (gen[q]) st.generators.push_back(q);
    st.subgroupoid = generated_subgroupoid(g, gen);
    st.psi = length_function(gp, st.generators, st.subgroupoid);

    double c = 0.0;
    for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
      if (st.subgroupoid[a] && st.psi[a].real() <= k) c = std::max(c, st.psi[a].real());
    const double bound = 1.0 / k;
    std::int64_t n = prev_n + 1;
    while (1.0 - std::exp(-c / static_cast<double>(n)) > bound) {
      if (++n > 1000000)
        throw std::runtime_error("haagerup_from_treeing: no n <= 1e6 meets the stage bound at k = " +
                                 std::to_string(k));
    }
    st.n = n;
    st.sup_deviation = 1.0 - std::exp(-c / static_cast<double>(n));
    prev_n = n;

    ArrowFunction F(gp);
    for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
      if (st.subgroupoid[a]) F[a] = std::exp(-st.psi[a].real() / static_cast<double>(n));
    st.F = extend_by_zero(F, st.subgroupoid);
    out.push_back(std::move(st));
  }
  return out;
}

CayleyReport cayley_consistency(const FiniteGroupoid& g, std::span<const Index> S) {
  if (g.num_units() != 1) throw PreconditionError("Cayley graphs need a group (one unit)");
  CayleyReport rep;
  auto add = [&](Index a) {
    if (!g.is_unit_arrow(a) &&
        std::find(rep.symmetric_set.begin(), rep.symmetric_set.end(), a) == rep.symmetric_set.end())
      rep.symmetric_set.push_back(a);
  };
  for (Index s : S) {
    add(s);
    add(g.inverse(s));
  }
  rep.treeing = is_treeing(g, rep.symmetric_set);
  return rep;
}

}  // namespace hgpd
