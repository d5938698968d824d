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

#include "hgpd/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "hgpd/error.hpp"

namespace hgpd {
namespace {

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string(where) + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string str(const Json& j, const char* where) {
  if (!j.is_string()) throw ParseError(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

Rational mass_of(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError("unit mass must be a string \"p/q\"");
}

std::vector<WeightedUnit> parse_units(const Json& j) {
  if (!j.is_array()) throw ParseError("\"units\" must be an array");
  std::vector<WeightedUnit> out;
  for (const auto& u : j)
    out.push_back({str(field(u, "id", "unit"), "unit id"), mass_of(field(u, "mass", "unit"))});
  return out;
}

template <typename Map>
Index lookup(const Map& m, const std::string& id, const char* what) {
  const auto it = m.find(id);
  if (it == m.end()) throw ParseError(std::string("unknown ") + what + " id \"" + id + "\"");
  return it->second;
}

double number(const Json& j) {
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

}  // namespace

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

bool is_explicit_gspec(const Json& j) { return j.is_object() && j.contains("arrows"); }

GroupoidData parse_gspec_data(const Json& j) {
  if (!is_explicit_gspec(j)) throw ParseError("gspec: not in explicit form");
  GroupoidData d;
  std::map<std::string, Index> units, arrows;
  for (const auto& u : parse_units(field(j, "units", "gspec"))) {
    if (!units.emplace(u.id, static_cast<Index>(d.unit_ids.size())).second)
      throw ParseError("duplicate unit id \"" + u.id + "\"");
    d.unit_ids.push_back(u.id);
    d.mass.push_back(u.mass);
  }
  const Json& ja = field(j, "arrows", "gspec");
  if (!ja.is_array()) throw ParseError("\"arrows\" must be an array");
  for (const auto& a : ja) {
    const std::string id = str(field(a, "id", "arrow"), "arrow id");
    if (!arrows.emplace(id, static_cast<Index>(d.arrow_ids.size())).second)
      throw ParseError("duplicate arrow id \"" + id + "\"");
    d.arrow_ids.push_back(id);
    d.src.push_back(lookup(units, str(field(a, "src", "arrow"), "arrow src"), "unit"));
    d.dst.push_back(lookup(units, str(field(a, "dst", "arrow"), "arrow dst"), "unit"));
  }
  const std::size_t n = d.arrow_ids.size();
  d.compose.assign(n * n, kNone);
  const Json& jc = field(j, "compose", "gspec");
  if (!jc.is_array()) throw ParseError("\"compose\" must be an array");
  for (const auto& t : jc) {
    if (!t.is_array() || t.size() != 3) throw ParseError("compose entries are [g1, g2, g1g2]");
    const Index a = lookup(arrows, str(t[0], "compose"), "arrow");
    const Index b = lookup(arrows, str(t[1], "compose"), "arrow");
    d.compose[static_cast<std::size_t>(a) * n + b] = lookup(arrows, str(t[2], "compose"), "arrow");
  }
  d.inverse.assign(n, kNone);
  const Json& ji = field(j, "inverse", "gspec");
  if (!ji.is_array()) throw ParseError("\"inverse\" must be an array");
  for (const auto& p : ji) {
    if (!p.is_array() || p.size() != 2) throw ParseError("inverse entries are [g, g^-1]");
    d.inverse[lookup(arrows, str(p[0], "inverse"), "arrow")] =
        lookup(arrows, str(p[1], "inverse"), "arrow");
  }
  d.unit_arrow.assign(d.unit_ids.size(), kNone);
  const Json& ju = field(j, "unit_arrows", "gspec");
  if (!ju.is_object()) throw ParseError("\"unit_arrows\" must be an object");
  for (const auto& [k, v] : ju.items())
    d.unit_arrow[lookup(units, k, "unit")] = lookup(arrows, str(v, "unit_arrows"), "arrow");
  return d;
}

GroupTable parse_group_table(const Json& j) {
  GroupTable t;
  std::map<std::string, Index> ids;
  const Json& je = field(j, "elements", "group");
  if (!je.is_array()) throw ParseError("group \"elements\" must be an array");
  for (const auto& e : je) {
    const std::string id = str(e, "group element");
    if (!ids.emplace(id, static_cast<Index>(t.elements.size())).second)
      throw ParseError("duplicate group element \"" + id + "\"");
    t.elements.push_back(id);
  }
  const Json& jt = field(j, "table", "group");
  if (!jt.is_array()) throw ParseError("group \"table\" must be an array of rows");
  for (const auto& row : jt) {
    if (!row.is_array()) throw ParseError("group table rows must be arrays");
    std::vector<Index> r;
    for (const auto& e : row) r.push_back(lookup(ids, str(e, "group table"), "group element"));
    t.product.push_back(std::move(r));
  }
  t.identity = lookup(ids, str(field(j, "identity", "group"), "identity"), "group element");
  if (j.contains("inverse")) {
    const Json& jv = j.at("inverse");
    if (!jv.is_object()) throw ParseError("group \"inverse\" must be an object");
    t.inverse.assign(t.elements.size(), kNone);
    for (const auto& [k, v] : jv.items())
      t.inverse[lookup(ids, k, "group element")] = lookup(ids, str(v, "inverse"), "group element");
  }
  return t;
}

FiniteGroupoid parse_gspec(const Json& j) {
  if (is_explicit_gspec(j)) return FiniteGroupoid(parse_gspec_data(j));
  if (j.is_object() && j.contains("group")) return build_group(parse_group_table(j.at("group")));
  if (j.is_object() && j.contains("equivalence")) {
    const Json& e = j.at("equivalence");
    const auto units = parse_units(field(e, "units", "equivalence"));
    std::vector<std::vector<std::string>> blocks;
    const Json& jb = field(e, "blocks", "equivalence");
    if (!jb.is_array()) throw ParseError("equivalence \"blocks\" must be an array");
    for (const auto& b : jb) {
      if (!b.is_array()) throw ParseError("equivalence blocks must be arrays");
      std::vector<std::string> block;
      for (const auto& x : b) {
        block.push_back(str(x, "block"));
        if (std::none_of(units.begin(), units.end(),
                         [&](const WeightedUnit& u) { return u.id == block.back(); }))
          throw ParseError("unknown unit id \"" + block.back() + "\" in equivalence block");
      }
      blocks.push_back(std::move(block));
    }
    return build_equivalence(units, blocks);
  }
  if (j.is_object() && j.contains("action")) {
    const Json& a = j.at("action");
    const GroupTable t = parse_group_table(field(a, "group", "action"));
    const auto units = parse_units(field(a, "units", "action"));
    std::map<std::string, Index> uids, gids;
    for (std::size_t i = 0; i < units.size(); ++i) uids[units[i].id] = static_cast<Index>(i);
    for (std::size_t i = 0; i < t.elements.size(); ++i) gids[t.elements[i]] = static_cast<Index>(i);
    const Json& act = field(a, "act", "action");
    if (!act.is_object()) throw ParseError("action \"act\" must be an object");
    std::vector<std::vector<Index>> table(units.size(), std::vector<Index>(t.elements.size(), kNone));
    for (const auto& [x, row] : act.items()) {
      if (!row.is_object()) throw ParseError("action rows must be objects");
      for (const auto& [g, y] : row.items())
        table[lookup(uids, x, "unit")][lookup(gids, g, "group element")] =
            lookup(uids, str(y, "action"), "unit");
    }
    for (std::size_t x = 0; x < units.size(); ++x)
      for (std::size_t g = 0; g < t.elements.size(); ++g)
        if (table[x][g] == kNone)
          throw ParseError("action table misses " + units[x].id + "." + t.elements[g]);
    return build_action_groupoid(t, units, table);
  }
  throw ParseError("gspec: expected explicit tables or a group, equivalence or action form");
}

Json to_gspec(const FiniteGroupoid& g) {
  Json j;
  j["units"] = Json::array();
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x)
    j["units"].push_back({{"id", g.unit_id(x)}, {"mass", to_string(g.mass(x))}});
  j["arrows"] = Json::array();
  for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
    j["arrows"].push_back({{"id", g.arrow_id(a)},
                           {"src", g.unit_id(g.src(a))},
                           {"dst", g.unit_id(g.dst(a))}});
  j["compose"] = Json::array();
  for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
    for (Index b = 0; b < static_cast<Index>(g.num_arrows()); ++b)
      if (const Index c = g.compose(a, b); c != kNone)
        j["compose"].push_back({g.arrow_id(a), g.arrow_id(b), g.arrow_id(c)});
  j["inverse"] = Json::array();
  for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
    j["inverse"].push_back({g.arrow_id(a), g.arrow_id(g.inverse(a))});
  j["unit_arrows"] = Json::object();
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x)
    j["unit_arrows"][g.unit_id(x)] = g.arrow_id(g.unit_arrow(x));
  return j;
}

ArrowFunction parse_function(const Json& j, const GroupoidPtr& g) {
  if (!j.is_object()) throw ParseError("arrow function must be an object with \"re\" and \"im\"");
  for (const auto& [k, v] : j.items())
    if (k != "re" && k != "im") throw ParseError("arrow function: unexpected key \"" + k + "\"");
  ArrowFunction f(g);
  auto read = [&](const char* key, bool imag) {
    if (!j.contains(key)) return;
    const Json& part = j.at(key);
    if (!part.is_object()) throw ParseError(std::string("arrow function \"") + key + "\" must be an object");
    for (const auto& [id, v] : part.items()) {
      const auto a = g->find_arrow(id);
      if (!a) throw ParseError("unknown arrow id \"" + id + "\"");
      f[*a] += imag ? Complex(0.0, number(v)) : Complex(number(v), 0.0);
    }
  };
  read("re", false);
  read("im", true);
  return f;
}

Json to_json(const ArrowFunction& f) {
  const FiniteGroupoid& g = f.groupoid();
  Json re = Json::object(), im = Json::object();
  for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a) {
    re[g.arrow_id(a)] = f[a].real();
    if (f[a].imag() != 0.0) im[g.arrow_id(a)] = f[a].imag();
  }
  return Json{{"re", re}, {"im", im}};
}

std::vector<Index> parse_treeing(const Json& j, const FiniteGroupoid& g) {
  if (!j.is_array()) throw ParseError("treeing must be an array of arrow ids");
  std::vector<Index> Q;
  for (const auto& e : j) {
    const std::string id = str(e, "treeing");
    const auto a = g.find_arrow(id);
    if (!a) throw ParseError("unknown arrow id \"" + id + "\"");
    Q.push_back(*a);
  }
  return Q;
}

Json treeing_to_json(const FiniteGroupoid& g, std::span<const Index> Q) {
  Json j = Json::array();
  for (Index q : Q) j.push_back(g.arrow_id(q));
  return j;
}

CpMap parse_cpmap(const Json& j, const GroupoidPtr& g, bool unital) {
  const auto n = static_cast<Eigen::Index>(g->num_arrows());
  const Json& basis = field(j, "basis", "map");
  if (!basis.is_array() || static_cast<Eigen::Index>(basis.size()) != n)
    throw ParseError("map \"basis\" must list every arrow");
  for (Eigen::Index i = 0; i < n; ++i)
    if (str(basis[static_cast<std::size_t>(i)], "basis") != g->arrow_id(static_cast<Index>(i)))
      throw ParseError("map basis must follow the arrow order of the groupoid");
  CMatrix m = CMatrix::Zero(n, n);
  auto read = [&](const char* key, bool imag) {
    if (!j.contains(key)) return;
    const Json& rows = j.at(key);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
      throw ParseError(std::string("map \"") + key + "\" must have one row per arrow");
    for (Eigen::Index r = 0; r < n; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
        throw ParseError(std::string("map \"") + key + "\" rows must have one entry per arrow");
      for (Eigen::Index c = 0; c < n; ++c) {
        const double v = number(row[static_cast<std::size_t>(c)]);
        m(r, c) += imag ? Complex(0.0, v) : Complex(v, 0.0);
      }
    }
  };
  read("re", false);
  read("im", true);
  return CpMap(g, std::move(m), unital);
}

Json to_json(const CpMap& phi) {
  const FiniteGroupoid& g = phi.groupoid();
  const CMatrix& m = phi.matrix();
  Json basis = Json::array(), re = Json::array(), im = Json::array();
  for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a) basis.push_back(g.arrow_id(a));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"basis", basis}, {"re", re}, {"im", im}};
}

}  // namespace hgpd
