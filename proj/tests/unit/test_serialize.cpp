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

#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "hgpd/error.hpp"
#include "hgpd/fixtures.hpp"
#include "hgpd/report.hpp"

using namespace hgpd;
namespace fx = hgpd::fixtures;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures{HGPD_FIXTURES_DIR};

FiniteGroupoid load(const char* file) { return parse_gspec(load_json(kFixtures / file)); }

}  // namespace

TEST(Gspec, FixtureFilesMatchBuiltins) {
  const std::vector<std::pair<const char*, const char*>> files{
      {"r2.gspec", "R2"},         {"r2w.gspec", "R2w"}, {"r3.gspec", "R3"},
      {"z2.gspec", "Z2"},         {"z3.gspec", "Z3"},   {"s3.gspec", "S3"},
      {"z2swap.gspec", "Z2swap"}, {"z2xz2.gspec", "Z2xZ2"}};
  for (const auto& [file, name] : files)
    EXPECT_TRUE(structurally_equal(load(file), *fx::by_name(name))) << file;
}

TEST(Gspec, ExplicitRoundTrip) {
  for (const auto& [name, g] : fx::all()) {
    const Json j = to_gspec(*g);
    EXPECT_TRUE(is_explicit_gspec(j));
    EXPECT_TRUE(structurally_equal(parse_gspec(j), *g)) << name;
    EXPECT_EQ(to_gspec(parse_gspec(j)).dump(), j.dump()) << name;
  }
}

TEST(Gspec, InvalidInput) {
  const GroupoidData broken = parse_gspec_data(load_json(kFixtures / "broken_assoc.gspec"));
  const auto v = validate(broken);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, "associativity");
  EXPECT_EQ(v[0].witness.size(), 3u);
  EXPECT_THROW(load("broken_assoc.gspec"), GroupoidError);
  EXPECT_THROW(load("zero_mass.gspec"), GroupoidError);

  EXPECT_THROW(load_json(kFixtures / "missing.gspec"), ParseError);
  EXPECT_THROW(parse_gspec(Json::parse(R"({"nothing": 1})")), ParseError);
  EXPECT_THROW(parse_gspec(Json::parse(R"({"equivalence": {"units": [{"id": "a", "mass": "x"}],
                                                         "blocks": [["a"]]}})")),
               ParseError);
  EXPECT_THROW(parse_gspec(Json::parse(R"({"equivalence": {"units": [{"id": "a", "mass": "1"}],
                                                         "blocks": [["b"]]}})")),
               ParseError);
  EXPECT_THROW(parse_gspec(Json::parse(R"({"group": {"elements": ["e", "g"],
                                                   "table": [["e", "g"], ["g", "g"]],
                                                   "identity": "e"}})")),
               GroupoidError);
}

TEST(Rationals, Parse) {
  EXPECT_EQ(parse_rational("2/3"), Rational(2, 3));
  EXPECT_EQ(parse_rational(" 4/6 "), Rational(2, 3));
  EXPECT_EQ(parse_rational("1"), Rational(1));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("a/b"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(to_string(Rational(-3, 6)), "-1/2");
}

TEST(Functions, RoundTrip) {
  fx::Rng rng(51);
  for (const auto& [name, g] : fx::all()) {
    const ArrowFunction f = fx::random_function(g, rng);
    const ArrowFunction back = parse_function(to_json(f), g);
    EXPECT_EQ(max_abs_diff(f, back), 0.0) << name;
  }
  const GroupoidPtr r2 = fx::r2();
  const ArrowFunction f = parse_function(load_json(kFixtures / "f_exp.json"), r2);
  EXPECT_NEAR(f[r2->arrow_index("ab")].real(), std::exp(-1.0), 1e-15);
  // Missing entries are zero.
  const ArrowFunction psi = parse_function(load_json(kFixtures / "psi_r2.json"), r2);
  EXPECT_EQ(psi[r2->arrow_index("aa")], Complex(0));
  EXPECT_THROW(parse_function(Json::parse(R"({"re": {"zz": 1}})"), r2), ParseError);
  EXPECT_THROW(parse_function(Json::parse(R"({"x": {}})"), r2), ParseError);
  EXPECT_THROW(parse_function(Json::parse(R"({"re": {"ab": "one"}})"), r2), ParseError);
}

TEST(Treeings, ReadWrite) {
  const GroupoidPtr r3 = fx::r3();
  const auto Q = parse_treeing(load_json(kFixtures / "q_r3_path.json"), *r3);
  ASSERT_EQ(Q.size(), 4u);
  EXPECT_EQ(treeing_to_json(*r3, Q).dump(), R"(["ab","ba","bc","cb"])");
  EXPECT_THROW(parse_treeing(Json::parse(R"(["ab", "zz"])"), *r3), ParseError);
}

TEST(CpMaps, ReadWrite) {
  fx::Rng rng(52);
  for (const auto& [name, g] : fx::all()) {
    const CpMap phi = cp_from_pd(fx::random_pd(g, rng));
    const CpMap back = parse_cpmap(to_json(phi), g);
    EXPECT_EQ((phi.matrix() - back.matrix()).cwiseAbs().maxCoeff(), 0.0) << name;
  }
}

TEST(Reports, TextAndJson) {
  CheckReport rep("demo", "target");
  rep.add_residual("small", 1.23456789e-12, 1e-10, "ok");
  rep.add_residual("large", 0.5, 1e-10);
  rep.add_bool("flag", true);
  rep.add_warning("note", "careful", Json::array({"ab"}));
  EXPECT_TRUE(rep.failed());
  EXPECT_EQ(rep.exit_code(), 1);
  const std::string text = rep.to_text();
  EXPECT_NE(text.find("[pass] small  residual 1.234568e-12  ok"), std::string::npos);
  EXPECT_NE(text.find("[fail] large  residual 5.000000e-01"), std::string::npos);
  EXPECT_NE(text.find("[pass] flag\n"), std::string::npos);
  EXPECT_NE(text.find("witness [\"ab\"]"), std::string::npos);
  EXPECT_NE(text.find("FAIL: 4 checks, 1 failed, 1 warnings"), std::string::npos);

  const Json j = rep.to_json();
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["exit"], 1);
  EXPECT_EQ(j["checks"][0]["residual"].get<double>(), 1.234568e-12);
  EXPECT_FALSE(j["checks"][2].contains("residual"));

  CheckReport nan("demo", "t");
  nan.add_residual("nan", std::nan(""), 1.0);
  EXPECT_TRUE(nan.failed());
}

TEST(Reports, ResidualRounding) {
  EXPECT_EQ(round_residual(1.0000000000000002), 1.0);
  EXPECT_EQ(round_residual(0.0), 0.0);
  EXPECT_EQ(format_residual(2.5e-16), "2.500000e-16");
}
