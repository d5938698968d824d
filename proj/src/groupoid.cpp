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

#include "hgpd/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "hgpd/error.hpp"

namespace hgpd {
namespace {

void add(std::vector<AxiomViolation>& out, std::string kind, std::string message,
         std::vector<std::string> witness = {}) {
  out.push_back({std::move(kind), std::move(message), std::move(witness)});
}

std::string triple_text(const GroupoidData& d, Index a, Index b, Index c) {
  return "(" + d.arrow_ids[a] + ", " + d.arrow_ids[b] + ", " + d.arrow_ids[c] + ")";
}

// Checks that do not read through the tables. If these fail the remaining
// checks would index out of range, so validate() stops here.
bool check_shapes(const GroupoidData& d, std::vector<AxiomViolation>& out) {
  const std::size_t u = d.unit_ids.size();
  const std::size_t n = d.arrow_ids.size();
  const std::size_t before = out.size();
  if (u == 0) add(out, "shape", "groupoid has no units");
  if (d.mass.size() != u) add(out, "shape", "mass table size differs from unit count");
  if (d.src.size() != n || d.dst.size() != n || d.inverse.size() != n)
    add(out, "shape", "src/dst/inverse table size differs from arrow count");
  if (d.unit_arrow.size() != u) add(out, "shape", "unit_arrow table size differs from unit count");
  if (d.compose.size() != n * n) add(out, "shape", "compose table is not N x N");
  if (out.size() != before) return false;

  std::unordered_set<std::string> seen;
  for (const auto& id : d.unit_ids)
    if (!seen.insert(id).second) add(out, "ids", "duplicate unit id " + id, {id});
  seen.clear();
  for (const auto& id : d.arrow_ids)
    if (!seen.insert(id).second) add(out, "ids", "duplicate arrow id " + id, {id});

  auto unit_ok = [u](Index x) { return x >= 0 && static_cast<std::size_t>(x) < u; };
  auto arrow_ok = [n](Index g) { return g >= 0 && static_cast<std::size_t>(g) < n; };
  for (std::size_t g = 0; g < n; ++g) {
    if (!unit_ok(d.src[g]) || !unit_ok(d.dst[g]))
      add(out, "shape", "arrow " + d.arrow_ids[g] + " has an unknown endpoint", {d.arrow_ids[g]});
    if (!arrow_ok(d.inverse[g]))
      add(out, "inverse", "arrow " + d.arrow_ids[g] + " has no inverse", {d.arrow_ids[g]});
  }
  for (std::size_t x = 0; x < u; ++x)
    if (!arrow_ok(d.unit_arrow[x]))
      add(out, "unit", "unit " + d.unit_ids[x] + " has no unit arrow", {d.unit_ids[x]});
  for (Index c : d.compose)
    if (c != kNone && !arrow_ok(c)) {
      add(out, "shape", "compose table references an unknown arrow");
      break;
    }
  return out.size() == before;
}

}  // namespace

std::vector<AxiomViolation> validate(const GroupoidData& d) {
  std::vector<AxiomViolation> out;
  if (!check_shapes(d, out)) return out;

  const std::size_t u = d.unit_ids.size();
  const Index n = static_cast<Index>(d.arrow_ids.size());
  auto comp = [&](Index a, Index b) { return d.compose[static_cast<std::size_t>(a) * n + b]; };

  Rational total = 0;
  for (std::size_t x = 0; x < u; ++x) {
    if (d.mass[x] <= Rational(0))
      add(out, "full-support",
          "full support required: unit " + d.unit_ids[x] + " has mass " + to_string(d.mass[x]),
          {d.unit_ids[x]});
    total += d.mass[x];
  }
  if (total != Rational(1)) add(out, "normalization", "unit masses sum to " + to_string(total) + ", not 1");

  for (std::size_t x = 0; x < u; ++x) {
    const Index e = d.unit_arrow[x];
    if (d.src[e] != static_cast<Index>(x) || d.dst[e] != static_cast<Index>(x))
      add(out, "unit", "unit arrow " + d.arrow_ids[e] + " is not a loop at " + d.unit_ids[x],
          {d.arrow_ids[e]});
  }

  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Index c = comp(a, b);
      const bool composable = d.src[a] == d.dst[b];
      if (composable && c == kNone) {
        add(out, "compose",
            "missing product for composable pair (" + d.arrow_ids[a] + ", " + d.arrow_ids[b] + ")",
            {d.arrow_ids[a], d.arrow_ids[b]});
      } else if (!composable && c != kNone) {
        add(out, "compose",
            "product defined for non-composable pair (" + d.arrow_ids[a] + ", " + d.arrow_ids[b] +
                ")",
            {d.arrow_ids[a], d.arrow_ids[b]});
      } else if (composable && (d.dst[c] != d.dst[a] || d.src[c] != d.src[b])) {
        add(out, "compose",
            "product " + d.arrow_ids[a] + "*" + d.arrow_ids[b] + " = " + d.arrow_ids[c] +
                " has wrong endpoints",
            {d.arrow_ids[a], d.arrow_ids[b], d.arrow_ids[c]});
      }
    }
  }
  if (!out.empty()) return out;

  for (Index g = 0; g < n; ++g) {
    const Index left = d.unit_arrow[d.dst[g]];
    const Index right = d.unit_arrow[d.src[g]];
    if (comp(left, g) != g || comp(g, right) != g)
      add(out, "unit-law", "unit law fails for " + d.arrow_ids[g], {d.arrow_ids[g]});
    const Index h = d.inverse[g];
    if (d.dst[h] != d.src[g] || d.src[h] != d.dst[g]) {
      add(out, "inverse", "inverse of " + d.arrow_ids[g] + " has wrong endpoints",
          {d.arrow_ids[g], d.arrow_ids[h]});
      continue;
    }
    if (comp(g, h) != left || comp(h, g) != right)
      add(out, "inverse", "inverse law fails for " + d.arrow_ids[g],
          {d.arrow_ids[g], d.arrow_ids[h]});
  }

  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const Index ab = comp(a, b);
      if (ab == kNone) continue;
      for (Index c = 0; c < n; ++c) {
        const Index bc = comp(b, c);
        if (bc == kNone) continue;
        if (comp(ab, c) != comp(a, bc)) {
          add(out, "associativity", "associativity fails on triple " + triple_text(d, a, b, c),
              {d.arrow_ids[a], d.arrow_ids[b], d.arrow_ids[c]});
        }
      }
    }
  return out;
}

FiniteGroupoid::FiniteGroupoid(GroupoidData data) : data_(std::move(data)) {
  const auto violations = validate(data_);
  if (!violations.empty()) {
    std::string msg = "invalid groupoid: " + violations.front().message;
    if (violations.size() > 1)
      msg += " (and " + std::to_string(violations.size() - 1) + " more)";
    throw GroupoidError(msg);
  }
  const std::size_t u = num_units();
  const std::size_t n = num_arrows();
  for (std::size_t x = 0; x < u; ++x) unit_lookup_.emplace(data_.unit_ids[x], static_cast<Index>(x));
  for (std::size_t g = 0; g < n; ++g) arrow_lookup_.emplace(data_.arrow_ids[g], static_cast<Index>(g));

  s_fibres_.assign(u, {});
  r_fibres_.assign(u, {});
  s_pos_.assign(n, 0);
  r_pos_.assign(n, 0);
  for (Index g = 0; g < static_cast<Index>(n); ++g) {
    s_pos_[g] = static_cast<Index>(s_fibres_[src(g)].size());
    s_fibres_[src(g)].push_back(g);
    r_pos_[g] = static_cast<Index>(r_fibres_[dst(g)].size());
    r_fibres_[dst(g)].push_back(g);
  }

  factor_offset_.assign(n + 1, 0);
  for (Index g = 0; g < static_cast<Index>(n); ++g) {
    factor_offset_[g] = factor_left_.size();
    for (Index g1 : r_fibres_[dst(g)]) {
      factor_left_.push_back(g1);
      factor_right_.push_back(compose(inverse(g1), g));
    }
  }
  factor_offset_[n] = factor_left_.size();

  nu_.resize(n);
  nu_inv_.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    nu_[g] = to_double(data_.mass[data_.src[g]]);
    nu_inv_[g] = to_double(data_.mass[data_.dst[g]]);
  }
}

std::optional<Index> FiniteGroupoid::find_unit(std::string_view id) const {
  auto it = unit_lookup_.find(std::string(id));
  if (it == unit_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> FiniteGroupoid::find_arrow(std::string_view id) const {
  auto it = arrow_lookup_.find(std::string(id));
  if (it == arrow_lookup_.end()) return std::nullopt;
  return it->second;
}

Index FiniteGroupoid::unit_index(std::string_view id) const {
  if (auto x = find_unit(id)) return *x;
  throw GroupoidError("unknown unit id " + std::string(id));
}

Index FiniteGroupoid::arrow_index(std::string_view id) const {
  if (auto g = find_arrow(id)) return *g;
  throw GroupoidError("unknown arrow id " + std::string(id));
}

std::span<const Index> FiniteGroupoid::factor_left(Index g) const {
  return {factor_left_.data() + factor_offset_[g], factor_offset_[g + 1] - factor_offset_[g]};
}

std::span<const Index> FiniteGroupoid::factor_right(Index g) const {
  return {factor_right_.data() + factor_offset_[g], factor_offset_[g + 1] - factor_offset_[g]};
}

bool structurally_equal(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const auto& x = a.data();
  const auto& y = b.data();
  return x.unit_ids == y.unit_ids && x.mass == y.mass && x.arrow_ids == y.arrow_ids &&
         x.src == y.src && x.dst == y.dst && x.inverse == y.inverse &&
         x.unit_arrow == y.unit_arrow && x.compose == y.compose;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Index> group_inverses(const GroupTable& t) {
  const Index n = static_cast<Index>(t.elements.size());
  std::vector<Index> inv(n, kNone);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (t.product[a][b] == t.identity && t.product[b][a] == t.identity) {
        inv[a] = b;
        break;
      }
  return inv;
}

void check_group_table(const GroupTable& t) {
  const std::size_t n = t.elements.size();
  if (n == 0) throw GroupoidError("group table is empty");
  if (t.product.size() != n) throw GroupoidError("group table has wrong number of rows");
  for (const auto& row : t.product) {
    if (row.size() != n) throw GroupoidError("group table row has wrong length");
    for (Index c : row)
      if (c < 0 || static_cast<std::size_t>(c) >= n)
        throw GroupoidError("group table entry out of range");
  }
  if (t.identity < 0 || static_cast<std::size_t>(t.identity) >= n)
    throw GroupoidError("group identity out of range");
  for (std::size_t a = 0; a < n; ++a)
    if (t.product[t.identity][a] != static_cast<Index>(a) ||
        t.product[a][t.identity] != static_cast<Index>(a))
      throw GroupoidError("identity law fails for element " + t.elements[a]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t.product[t.product[a][b]][c] != t.product[a][t.product[b][c]])
          throw GroupoidError("group table is not associative on (" + t.elements[a] + ", " +
                              t.elements[b] + ", " + t.elements[c] + ")");
  const auto inv = group_inverses(t);
  for (std::size_t a = 0; a < n; ++a)
    if (inv[a] == kNone) throw GroupoidError("element " + t.elements[a] + " has no inverse");
  if (!t.inverse.empty()) {
    if (t.inverse.size() != n) throw GroupoidError("inverse table has wrong length");
    for (std::size_t a = 0; a < n; ++a)
      if (t.inverse[a] != inv[a])
        throw GroupoidError("inverse table is wrong for element " + t.elements[a]);
  }
}

std::string pair_id(const std::string& x, const std::string& y, bool short_ids) {
  return short_ids ? x + y : x + ":" + y;
}

}  // namespace

FiniteGroupoid build_group(const GroupTable& t) {
  check_group_table(t);
  const Index n = static_cast<Index>(t.elements.size());
  const auto inv = group_inverses(t);
  GroupoidData d;
  d.unit_ids = {t.elements[t.identity]};
  d.mass = {Rational(1)};
  d.arrow_ids = t.elements;
  d.src.assign(n, 0);
  d.dst.assign(n, 0);
  d.inverse = inv;
  d.unit_arrow = {t.identity};
  d.compose.resize(static_cast<std::size_t>(n) * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) d.compose[static_cast<std::size_t>(a) * n + b] = t.product[a][b];
  return FiniteGroupoid(std::move(d));
}

FiniteGroupoid build_equivalence(const std::vector<WeightedUnit>& units,
                                 const std::vector<std::vector<std::string>>& blocks) {
  const Index u = static_cast<Index>(units.size());
  std::unordered_map<std::string, Index> lookup;
  for (Index x = 0; x < u; ++x) {
    if (units[x].mass <= Rational(0))
      throw GroupoidError("full support required: unit " + units[x].id + " has mass " +
                          to_string(units[x].mass));
    lookup.emplace(units[x].id, x);
  }
  std::vector<Index> block_of(u, kNone);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (const auto& id : blocks[b]) {
      auto it = lookup.find(id);
      if (it == lookup.end()) throw GroupoidError("block references unknown unit " + id);
      if (block_of[it->second] != kNone)
        throw GroupoidError("unit " + id + " appears in more than one block");
      block_of[it->second] = static_cast<Index>(b);
    }
  for (Index x = 0; x < u; ++x)
    if (block_of[x] == kNone) throw GroupoidError("unit " + units[x].id + " is in no block");

  const bool short_ids =
      std::all_of(units.begin(), units.end(), [](const auto& w) { return w.id.size() == 1; });

  GroupoidData d;
  std::vector<std::vector<Index>> pair_index(u, std::vector<Index>(u, kNone));
  for (Index x = 0; x < u; ++x) {
    d.unit_ids.push_back(units[x].id);
    d.mass.push_back(units[x].mass);
  }
  for (Index x = 0; x < u; ++x)
    for (Index y = 0; y < u; ++y) {
      if (block_of[x] != block_of[y]) continue;
      pair_index[x][y] = static_cast<Index>(d.arrow_ids.size());
      d.arrow_ids.push_back(pair_id(units[x].id, units[y].id, short_ids));
      d.dst.push_back(x);
      d.src.push_back(y);
    }
  const Index n = static_cast<Index>(d.arrow_ids.size());
  d.inverse.resize(n);
  for (Index g = 0; g < n; ++g) d.inverse[g] = pair_index[d.src[g]][d.dst[g]];
  d.unit_arrow.resize(u);
  for (Index x = 0; x < u; ++x) d.unit_arrow[x] = pair_index[x][x];
  d.compose.assign(static_cast<std::size_t>(n) * n, kNone);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (d.src[a] == d.dst[b])
        d.compose[static_cast<std::size_t>(a) * n + b] = pair_index[d.dst[a]][d.src[b]];
  return FiniteGroupoid(std::move(d));
}

FiniteGroupoid build_action_groupoid(const GroupTable& group,
                                     const std::vector<WeightedUnit>& units,
                                     const std::vector<std::vector<Index>>& act) {
  check_group_table(group);
  const Index u = static_cast<Index>(units.size());
  const Index m = static_cast<Index>(group.elements.size());
  if (act.size() != units.size()) throw GroupoidError("action table has wrong number of rows");
  for (Index x = 0; x < u; ++x) {
    if (units[x].mass <= Rational(0))
      throw GroupoidError("full support required: unit " + units[x].id + " has mass " +
                          to_string(units[x].mass));
    if (act[x].size() != static_cast<std::size_t>(m))
      throw GroupoidError("action row has wrong length for unit " + units[x].id);
    for (Index y : act[x])
      if (y < 0 || y >= u) throw GroupoidError("action maps outside the unit set");
  }
  for (Index x = 0; x < u; ++x) {
    if (act[x][group.identity] != x)
      throw GroupoidError("action axiom violated: identity moves unit " + units[x].id);
    for (Index s = 0; s < m; ++s)
      for (Index t = 0; t < m; ++t)
        if (act[act[x][s]][t] != act[x][group.product[s][t]])
          throw GroupoidError("action axiom violated: (" + units[x].id + "." +
                              group.elements[s] + ")." + group.elements[t] + " != " +
                              units[x].id + ".(" + group.elements[s] + group.elements[t] + ")");
  }
  const auto inv = group_inverses(group);

  GroupoidData d;
  for (const auto& w : units) {
    d.unit_ids.push_back(w.id);
    d.mass.push_back(w.mass);
  }
  auto arrow = [m](Index x, Index t) { return x * m + t; };
  for (Index x = 0; x < u; ++x)
    for (Index t = 0; t < m; ++t) {
      d.arrow_ids.push_back(units[x].id + "." + group.elements[t]);
      d.dst.push_back(x);
      d.src.push_back(act[x][t]);
    }
  const Index n = u * m;
  d.inverse.resize(n);
  for (Index x = 0; x < u; ++x)
    for (Index t = 0; t < m; ++t) d.inverse[arrow(x, t)] = arrow(act[x][t], inv[t]);
  d.unit_arrow.resize(u);
  for (Index x = 0; x < u; ++x) d.unit_arrow[x] = arrow(x, group.identity);
  d.compose.assign(static_cast<std::size_t>(n) * n, kNone);
  // (x, s)(x.s, t) = (x, st)
  for (Index x = 0; x < u; ++x)
    for (Index s = 0; s < m; ++s) {
      const Index y = act[x][s];
      for (Index t = 0; t < m; ++t)
        d.compose[static_cast<std::size_t>(arrow(x, s)) * n + arrow(y, t)] =
            arrow(x, group.product[s][t]);
    }
  return FiniteGroupoid(std::move(d));
}

// ---------------------------------------------------------------------------

ArrowMeasure measures(const FiniteGroupoid& g) {
  ArrowMeasure m;
  const std::size_t n = g.num_arrows();
  m.nu.reserve(n);
  m.nu_inv.reserve(n);
  m.delta.reserve(n);
  m.total_mass = 0;
  for (Index a = 0; a < static_cast<Index>(n); ++a) {
    m.nu.push_back(g.mass(g.src(a)));
    m.nu_inv.push_back(g.mass(g.dst(a)));
    m.delta.push_back(m.nu_inv.back() / m.nu.back());
    m.total_mass += m.nu.back();
  }
  return m;
}

// ---------------------------------------------------------------------------

bool is_bisection(const FiniteGroupoid& g, std::span<const Index> arrows) {
  std::vector<bool> src_used(g.num_units(), false), dst_used(g.num_units(), false);
  for (Index a : arrows) {
    if (src_used[g.src(a)] || dst_used[g.dst(a)]) return false;
    src_used[g.src(a)] = true;
    dst_used[g.dst(a)] = true;
  }
  return true;
}

std::vector<Bisection> bisection_partition(const FiniteGroupoid& g) {
  std::vector<Index> order(g.num_arrows());
  std::iota(order.begin(), order.end(), 0);
  return bisection_partition(g, order);
}

std::vector<Bisection> bisection_partition(const FiniteGroupoid& g,
                                           std::span<const Index> order) {
  const std::size_t u = g.num_units();
  std::vector<Bisection> pieces;
  std::vector<std::vector<bool>> src_used, dst_used;
  for (Index a : order) {
    std::size_t k = 0;
    for (; k < pieces.size(); ++k)
      if (!src_used[k][g.src(a)] && !dst_used[k][g.dst(a)]) break;
    if (k == pieces.size()) {
      pieces.emplace_back();
      src_used.emplace_back(u, false);
      dst_used.emplace_back(u, false);
    }
    pieces[k].push_back(a);
    src_used[k][g.src(a)] = true;
    dst_used[k][g.dst(a)] = true;
  }
  return pieces;
}

// ---------------------------------------------------------------------------

OrbitStructure orbit_and_isotropy(const FiniteGroupoid& g) {
  const Index u = static_cast<Index>(g.num_units());
  OrbitStructure out;
  out.orbit_of_unit.assign(u, kNone);
  for (Index x = 0; x < u; ++x) {
    if (out.orbit_of_unit[x] != kNone) continue;
    const Index id = static_cast<Index>(out.orbits.size());
    out.orbits.emplace_back();
    for (Index a : g.range_fibre(x)) {
      const Index y = g.src(a);
      if (out.orbit_of_unit[y] == kNone) {
        out.orbit_of_unit[y] = id;
        out.orbits.back().push_back(y);
      }
    }
    std::sort(out.orbits.back().begin(), out.orbits.back().end());
  }
  std::set<std::pair<Index, Index>> rel;
  for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a) rel.emplace(g.dst(a), g.src(a));
  out.relation.assign(rel.begin(), rel.end());

  for (Index x = 0; x < u; ++x) {
    IsotropyGroup iso;
    iso.unit = x;
    std::vector<Index> local(g.num_arrows(), kNone);
    for (Index a : g.range_fibre(x))
      if (g.src(a) == x) {
        local[a] = static_cast<Index>(iso.arrows.size());
        iso.arrows.push_back(a);
      }
    const std::size_t k = iso.arrows.size();
    iso.product.assign(k, std::vector<Index>(k, kNone));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        iso.product[i][j] = local[g.compose(iso.arrows[i], iso.arrows[j])];
    out.isotropy.push_back(std::move(iso));
  }
  return out;
}

FiniteGroupoid orbit_relation(const FiniteGroupoid& g) {
  const auto orbits = orbit_and_isotropy(g);
  std::vector<WeightedUnit> units;
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x)
    units.push_back({g.unit_id(x), g.mass(x)});
  std::vector<std::vector<std::string>> blocks;
  for (const auto& orbit : orbits.orbits) {
    blocks.emplace_back();
    for (Index x : orbit) blocks.back().push_back(g.unit_id(x));
  }
  return build_equivalence(units, blocks);
}

FiniteGroupoid reduction(const FiniteGroupoid& g, std::span<const Index> units) {
  if (units.empty()) throw GroupoidError("reduction to an empty unit set");
  std::vector<Index> new_unit(g.num_units(), kNone);
  GroupoidData d;
  Rational total = 0;
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x) {
    if (std::find(units.begin(), units.end(), x) == units.end()) continue;
    new_unit[x] = static_cast<Index>(d.unit_ids.size());
    d.unit_ids.push_back(g.unit_id(x));
    d.mass.push_back(g.mass(x));
    total += g.mass(x);
  }
  for (auto& w : d.mass) w /= total;

  std::vector<Index> new_arrow(g.num_arrows(), kNone);
  std::vector<Index> old_arrow;
  for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a) {
    if (new_unit[g.src(a)] == kNone || new_unit[g.dst(a)] == kNone) continue;
    new_arrow[a] = static_cast<Index>(old_arrow.size());
    old_arrow.push_back(a);
    d.arrow_ids.push_back(g.arrow_id(a));
    d.src.push_back(new_unit[g.src(a)]);
    d.dst.push_back(new_unit[g.dst(a)]);
  }
  const Index n = static_cast<Index>(old_arrow.size());
  for (Index a : old_arrow) d.inverse.push_back(new_arrow[g.inverse(a)]);
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x)
    if (new_unit[x] != kNone) d.unit_arrow.push_back(new_arrow[g.unit_arrow(x)]);
  d.compose.assign(static_cast<std::size_t>(n) * n, kNone);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Index c = g.compose(old_arrow[i], old_arrow[j]);
      if (c != kNone) d.compose[static_cast<std::size_t>(i) * n + j] = new_arrow[c];
    }
  return FiniteGroupoid(std::move(d));
}

bool is_wide_subgroupoid(const FiniteGroupoid& g, const std::vector<bool>& member) {
  const Index n = static_cast<Index>(g.num_arrows());
  if (member.size() != static_cast<std::size_t>(n)) return false;
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x)
    if (!member[g.unit_arrow(x)]) return false;
  for (Index a = 0; a < n; ++a) {
    if (!member[a]) continue;
    if (!member[g.inverse(a)]) return false;
    for (Index b = 0; b < n; ++b) {
      if (!member[b]) continue;
      const Index c = g.compose(a, b);
      if (c != kNone && !member[c]) return false;
    }
  }
  return true;
}

std::vector<bool> generated_subgroupoid(const FiniteGroupoid& g,
                                        const std::vector<bool>& generators) {
  const Index n = static_cast<Index>(g.num_arrows());
  std::vector<bool> member = generators;
  member.resize(n, false);
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x) member[g.unit_arrow(x)] = true;
  for (Index a = 0; a < n; ++a)
    if (member[a]) member[g.inverse(a)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index a = 0; a < n; ++a) {
      if (!member[a]) continue;
      for (Index b = 0; b < n; ++b) {
        if (!member[b]) continue;
        const Index c = g.compose(a, b);
        if (c != kNone && !member[c]) {
          member[c] = true;
          changed = true;
        }
      }
    }
  }
  return member;
}

}  // namespace hgpd
