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

// Finite measured groupoids.
//
// A groupoid is stored as explicit tables over dense indices: units are
// 0..U-1 and arrows 0..N-1, both in input order, and the composition table
// is a full N x N array with -1 where a pair is not composable. Every
// constructor (group, equivalence relation, action groupoid, file) fills
// the same tables and goes through the same validation.
//
// Conventions: dst is the range map r and src the source map s. The
// product g1*g2 is defined iff src(g1) == dst(g2). The r-fibre G^x holds
// the arrows with dst == x; the s-fibre G_x those with src == x.
//
// The unit weight mu must have full support and total mass 1. On a finite
// groupoid this makes nu and nu^-1 equivalent, so quasi-invariance holds
// automatically and "almost everywhere" means "everywhere".

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hgpd/rational.hpp"

namespace hgpd {

using Index = std::int32_t;
inline constexpr Index kNone = -1;

// Raw tables, as read from a file or produced by a generator. May be
// invalid; see validate().
struct GroupoidData {
  std::vector<std::string> unit_ids;
  std::vector<Rational> mass;
  std::vector<std::string> arrow_ids;
  std::vector<Index> src;
  std::vector<Index> dst;
  std::vector<Index> inverse;
  std::vector<Index> unit_arrow;
  // Row-major N x N; compose[g1 * N + g2] is g1*g2 or kNone.
  std::vector<Index> compose;
};

struct AxiomViolation {
  std::string kind;  // e.g. "associativity", "full-support", "inverse"
  std::string message;
  std::vector<std::string> witness;  // offending arrow or unit ids
};

// Exhaustive axiom check: index ranges, unique ids, full-support weights
// summing to 1, unit arrows, composability domain, unit and inverse laws
// and associativity over every composable triple. Empty result == valid.
std::vector<AxiomViolation> validate(const GroupoidData& data);

class FiniteGroupoid {
 public:
  // Throws GroupoidError carrying the first violation.
  explicit FiniteGroupoid(GroupoidData data);

  std::size_t num_units() const { return data_.unit_ids.size(); }
  std::size_t num_arrows() const { return data_.arrow_ids.size(); }

  const std::string& unit_id(Index x) const { return data_.unit_ids[x]; }
  const std::string& arrow_id(Index g) const { return data_.arrow_ids[g]; }
  std::optional<Index> find_unit(std::string_view id) const;
  std::optional<Index> find_arrow(std::string_view id) const;
  // Throw GroupoidError on unknown ids.
  Index unit_index(std::string_view id) const;
  Index arrow_index(std::string_view id) const;

  Index src(Index g) const { return data_.src[g]; }
  Index dst(Index g) const { return data_.dst[g]; }
  Index inverse(Index g) const { return data_.inverse[g]; }
  Index unit_arrow(Index x) const { return data_.unit_arrow[x]; }
  Index compose(Index g1, Index g2) const {
    return data_.compose[static_cast<std::size_t>(g1) * num_arrows() + g2];
  }
  bool is_unit_arrow(Index g) const { return unit_arrow(src(g)) == g; }
  const Rational& mass(Index x) const { return data_.mass[x]; }

  // G_x (src == x) and G^x (dst == x), in arrow order.
  std::span<const Index> source_fibre(Index x) const { return s_fibres_[x]; }
  std::span<const Index> range_fibre(Index x) const { return r_fibres_[x]; }
  // Position of g inside source_fibre(src(g)) / range_fibre(dst(g)).
  Index source_pos(Index g) const { return s_pos_[g]; }
  Index range_pos(Index g) const { return r_pos_[g]; }

  // All (g1, g2) with g1*g2 == g, as two parallel index lists. g1 runs over
  // range_fibre(dst(g)) in order and g2 = g1^-1 g.
  std::span<const Index> factor_left(Index g) const;
  std::span<const Index> factor_right(Index g) const;

  // mu(src(g)) and mu(dst(g)) as doubles, indexed by arrow.
  std::span<const double> nu_weights() const { return nu_; }
  std::span<const double> nu_inv_weights() const { return nu_inv_; }

  const GroupoidData& data() const { return data_; }

 private:
  GroupoidData data_;
  std::unordered_map<std::string, Index> unit_lookup_;
  std::unordered_map<std::string, Index> arrow_lookup_;
  std::vector<std::vector<Index>> s_fibres_;
  std::vector<std::vector<Index>> r_fibres_;
  std::vector<Index> s_pos_;
  std::vector<Index> r_pos_;
  std::vector<std::size_t> factor_offset_;
  std::vector<Index> factor_left_;
  std::vector<Index> factor_right_;
  std::vector<double> nu_;
  std::vector<double> nu_inv_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr share(FiniteGroupoid g) {
  return std::make_shared<const FiniteGroupoid>(std::move(g));
}

// Same ids in the same order, same tables, same weights.
bool structurally_equal(const FiniteGroupoid& a, const FiniteGroupoid& b);

// ---------------------------------------------------------------------------
// Constructors

struct GroupTable {
  std::vector<std::string> elements;
  // product[i][j] = index of elements[i] * elements[j]
  std::vector<std::vector<Index>> product;
  Index identity = 0;
  // Optional; derived from the table when empty and checked when present.
  std::vector<Index> inverse;
};

// One unit with weight 1; arrows are the group elements. Throws
// GroupoidError for a non-associative table or an element without inverse.
FiniteGroupoid build_group(const GroupTable& table);

struct WeightedUnit {
  std::string id;
  Rational mass;
};

// Arrows are the ordered pairs (x, y) inside each block, with dst x and src
// y; listed by x then y in unit order. Arrow ids are "xy" when every unit id
// is one character and "x:y" otherwise.
FiniteGroupoid build_equivalence(const std::vector<WeightedUnit>& units,
                                 const std::vector<std::vector<std::string>>& blocks);

// Right action of a group on the units: act[x][t] = x.t. Arrows are (x, t)
// with dst x and src x.t, id "x.t". Throws GroupoidError if act is not a
// right action.
FiniteGroupoid build_action_groupoid(const GroupTable& group,
                                     const std::vector<WeightedUnit>& units,
                                     const std::vector<std::vector<Index>>& act);

// ---------------------------------------------------------------------------
// Measures

struct ArrowMeasure {
  std::vector<Rational> nu;      // mu(src(g))
  std::vector<Rational> nu_inv;  // mu(dst(g)) = nu(g^-1)
  std::vector<Rational> delta;   // nu_inv / nu
  Rational total_mass;           // nu(G)
};

ArrowMeasure measures(const FiniteGroupoid& g);

// ---------------------------------------------------------------------------
// Bisections

using Bisection = std::vector<Index>;

bool is_bisection(const FiniteGroupoid& g, std::span<const Index> arrows);

// First-fit greedy: scan arrows in `order` (default: arrow order) and put
// each into the first piece whose src and dst injectivity it preserves.
std::vector<Bisection> bisection_partition(const FiniteGroupoid& g);
std::vector<Bisection> bisection_partition(const FiniteGroupoid& g,
                                           std::span<const Index> order);

// ---------------------------------------------------------------------------
// Orbits, isotropy, reductions, subgroupoids

struct IsotropyGroup {
  Index unit = kNone;
  std::vector<Index> arrows;                // G(x) = G^x_x in arrow order
  std::vector<std::vector<Index>> product;  // indices into `arrows`
};

struct OrbitStructure {
  std::vector<Index> orbit_of_unit;
  std::vector<std::vector<Index>> orbits;
  std::vector<std::pair<Index, Index>> relation;  // distinct (dst, src) pairs
  std::vector<IsotropyGroup> isotropy;            // one per unit
};

OrbitStructure orbit_and_isotropy(const FiniteGroupoid& g);

// The orbit equivalence relation R_G as a groupoid with the same weights.
FiniteGroupoid orbit_relation(const FiniteGroupoid& g);

// G restricted to arrows with both ends in `units`; weights renormalized.
// Throws GroupoidError when `units` is empty.
FiniteGroupoid reduction(const FiniteGroupoid& g, std::span<const Index> units);

// True iff `member` contains every unit arrow and is closed under
// composition and inversion.
bool is_wide_subgroupoid(const FiniteGroupoid& g, const std::vector<bool>& member);

// Smallest wide subgroupoid containing `generators`.
std::vector<bool> generated_subgroupoid(const FiniteGroupoid& g,
                                        const std::vector<bool>& generators);

}  // namespace hgpd
