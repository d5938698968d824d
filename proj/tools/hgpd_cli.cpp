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

// hgpd: validate groupoid specifications, run check suites, and emit
// witness sequences.
//
// Exit status: 0 pass, 1 check failure, 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hgpd/error.hpp"
#include "hgpd/serialize.hpp"
#include "hgpd/suites.hpp"

namespace fs = std::filesystem;
using namespace hgpd;

namespace {

constexpr int kUsage = 2;

struct Globals {
  std::string format = "text";
  SuiteOptions opts;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int emit(const CheckReport& rep, const Globals& g) {
  if (g.format == "json")
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.to_text();
  return rep.exit_code();
}

std::string name_of(const std::string& path) { return fs::path(path).filename().string(); }

// Loads and validates a groupoid. An axiom failure is reported and yields
// exit status 1 through the returned report.
std::optional<GroupoidPtr> load_groupoid(const std::string& path, const Globals& g, int& status) {
  const Json j = load_json(path);
  if (is_explicit_gspec(j)) {
    const GroupoidData data = parse_gspec_data(j);
    if (!validate(data).empty()) {
      status = emit(validate_report(data, name_of(path)), g);
      return std::nullopt;
    }
    return share(FiniteGroupoid(data));
  }
  try {
    return share(parse_gspec(j));
  } catch (const GroupoidError& e) {
    CheckReport rep("validate", name_of(path));
    rep.add_bool("axioms", false, e.what());
    status = emit(rep, g);
    return std::nullopt;
  }
}

int cmd_validate(const std::string& path, const Globals& g) {
  int status = 0;
  const auto G = load_groupoid(path, g, status);
  if (!G) return status;
  CheckReport rep("validate", name_of(path));
  rep.add_bool("axioms", true,
               std::to_string((*G)->num_units()) + " units, " +
                   std::to_string((*G)->num_arrows()) + " arrows");
  return emit(rep, g);
}

const std::string& need(const std::vector<std::string>& files, std::size_t i, const char* what) {
  if (files.size() <= i) throw UsageError(std::string("missing ") + what + " file");
  return files[i];
}

int cmd_check(const std::string& suite, const std::string& path,
              const std::vector<std::string>& files, const Globals& g) {
  static const std::vector<std::string> suites{"pd", "cnd", "treeing", "vn", "amen", "haagerup"};
  if (std::find(suites.begin(), suites.end(), suite) == suites.end())
    throw UsageError("unknown suite \"" + suite + "\" (expected pd, cnd, treeing, vn, amen or haagerup)");
  int status = 0;
  const auto G = load_groupoid(path, g, status);
  if (!G) return status;
  std::string target = name_of(path);
  for (const auto& f : files) target += " " + name_of(f);

  if (suite == "pd")
    return emit(check_pd(parse_function(load_json(need(files, 0, "function")), *G), g.opts, target), g);
  if (suite == "cnd")
    return emit(check_cnd(parse_function(load_json(need(files, 0, "function")), *G), g.opts, target), g);
  if (suite == "treeing") {
    const auto Q = parse_treeing(load_json(need(files, 0, "treeing")), **G);
    return emit(check_treeing(*G, Q, g.opts, target), g);
  }
  if (suite == "vn") return emit(check_vn(*G, g.opts, target), g);
  if (suite == "amen") {
    std::optional<ArrowFunction> F;
    if (!files.empty()) F = parse_function(load_json(files[0]), *G);
    return emit(check_amen(*G, F, g.opts, target), g);
  }
  const auto Q = parse_treeing(load_json(need(files, 0, "treeing")), **G);
  return emit(check_haagerup(*G, Q, g.opts, target), g);
}

int parse_stages(const std::string& s) {
  std::size_t used = 0;
  int m = 0;
  try {
    m = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || m < 1) throw UsageError("stages must be a positive integer, got \"" + s + "\"");
  return m;
}

void write_json(const fs::path& file, const Json& j) {
  std::ofstream out(file);
  if (!out) throw UsageError("cannot write " + file.string());
  out << j.dump(2) << "\n";
}

int cmd_witness(const std::string& source, const std::vector<std::string>& args,
                const std::string& out_dir, const Globals& g) {
  if (source != "treeing" && source != "amen")
    throw UsageError("unknown witness source \"" + source + "\" (expected treeing or amen)");
  const std::size_t want = source == "treeing" ? 3 : 2;
  if (args.size() != want)
    throw UsageError(source == "treeing" ? "usage: witness treeing <gspec> <treeing.json> <stages>"
                                         : "usage: witness amen <gspec> <stages>");
  const int m = parse_stages(args.back());
  int status = 0;
  const auto G = load_groupoid(args[0], g, status);
  if (!G) return status;
  fs::create_directories(out_dir);

  Json seq = Json::array();
  if (source == "treeing") {
    const auto Q = parse_treeing(load_json(args[1]), **G);
    TreeingWitness w = treeing_witness(*G, Q, m, g.opts, name_of(args[0]) + " " + name_of(args[1]));
    for (const auto& s : w.stages) seq.push_back(to_json(s.F));
    if (!w.stages.empty()) write_json(fs::path(out_dir) / "haagerup_witness.json", seq);
    return emit(w.report, g);
  }
  AmenWitness w = amen_witness(*G, m, g.opts, name_of(args[0]));
  for (const auto& xi : w.sequence) seq.push_back(to_json(xi.values()));
  write_json(fs::path(out_dir) / "amen_witness.json", seq);
  return emit(w.report, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoid positive-definite function toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", g.opts.seed, "Seed for randomized probes")->capture_default_str();
  app.add_option("--tol-algebraic", g.opts.tol.algebraic, "Tolerance for algebraic identities")
      ->capture_default_str();
  app.add_option("--tol-spectral", g.opts.tol.spectral, "Tolerance for spectral assertions")
      ->capture_default_str();

  std::string gspec;
  auto* validate_cmd = app.add_subcommand("validate", "Check the groupoid axioms of a GSPEC file");
  validate_cmd->add_option("gspec", gspec, "GSPEC file")->required();

  std::string suite;
  std::vector<std::string> files;
  auto* check_cmd = app.add_subcommand("check", "Run a check suite");
  check_cmd->add_option("suite", suite, "pd, cnd, treeing, vn, amen or haagerup")->required();
  check_cmd->add_option("gspec", gspec, "GSPEC file")->required();
  check_cmd->add_option("files", files, "Function or treeing files");

  std::string source, out_dir;
  std::vector<std::string> witness_args;
  auto* witness_cmd = app.add_subcommand("witness", "Build a witness sequence");
  witness_cmd->add_option("source", source, "treeing or amen")->required();
  witness_cmd->add_option("args", witness_args, "<gspec> [treeing.json] <stages>")->required();
  witness_cmd->add_option("--out", out_dir, "Output directory")->required();

  for (auto* sub : {validate_cmd, check_cmd, witness_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(gspec, g);
    if (*check_cmd) return cmd_check(suite, gspec, files, g);
    return cmd_witness(source, witness_args, out_dir, g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GroupoidError& e) {
    std::cerr << "groupoid error: " << e.what() << "\n";
    return 1;
  }
}
