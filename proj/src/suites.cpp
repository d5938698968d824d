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

#include "hgpd/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "hgpd/error.hpp"
#include "hgpd/fixtures.hpp"
#include "hgpd/vnalg.hpp"

namespace hgpd {
namespace {

constexpr double kTimes[] = {0.25, 0.5, 1.0, 2.0};

std::string num(double v) { return format_residual(v); }

std::string fibre_id(const FiniteGroupoid& g, Index x) { return "fibre[" + g.unit_id(x) + "]"; }

Json fibre_vector(const FiniteGroupoid& g, Index x, const CVector& v) {
  Json re = Json::object(), im = Json::object();
  const auto fib = g.range_fibre(x);
  for (std::size_t i = 0; i < fib.size() && i < static_cast<std::size_t>(v.size()); ++i) {
    re[g.arrow_id(fib[i])] = round_residual(v(static_cast<Eigen::Index>(i)).real());
    im[g.arrow_id(fib[i])] = round_residual(v(static_cast<Eigen::Index>(i)).imag());
  }
  return Json{{"unit", g.unit_id(x)}, {"re", re}, {"im", im}};
}

Json arrow_list(const FiniteGroupoid& g, std::span<const Index> arrows) {
  Json j = Json::array();
  for (Index a : arrows) j.push_back(g.arrow_id(a));
  return j;
}

double unit_defect(const ArrowFunction& F) {
  const FiniteGroupoid& g = F.groupoid();
  double d = 0.0;
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x)
    d = std::max(d, std::abs(F[g.unit_arrow(x)] - 1.0));
  return d;
}

double vec_max(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Running maximum of a residual over random instances.
struct Worst {
  double value = 0.0;
  void operator()(double v) { value = std::isnan(v) ? v : std::max(value, v); }
};

std::vector<Complex> random_unit_values(const FiniteGroupoid& g, fixtures::Rng& rng) {
  std::normal_distribution<double> n;
  std::vector<Complex> a(g.num_units());
  for (auto& v : a) {
    const double re = n(rng);
    v = Complex(re, n(rng));
  }
  return a;
}

ArrowFunction on_units(const GroupoidPtr& g, const std::vector<Complex>& a) {
  ArrowFunction f(g);
  for (Index x = 0; x < static_cast<Index>(g->num_units()); ++x) f[g->unit_arrow(x)] = a[x];
  return f;
}

void add_pd_fibres(CheckReport& rep, const FiniteGroupoid& g, const PdReport& pd,
                   const std::string& prefix) {
  for (const auto& f : pd.fibres) {
    const double neg = std::max(0.0, -f.min_eig) / f.scale;
    CheckItem item{prefix + fibre_id(g, f.unit) + ".min_eig", f.ok ? Status::Pass : Status::Fail,
                   neg,
                   "dim=" + std::to_string(f.dim) + " min_eig=" + num(f.min_eig) +
                       " max_eig=" + num(f.max_eig) + " hermitian_defect=" +
                       num(f.hermitian_defect),
                   nullptr};
    if (!f.ok) item.witness = fibre_vector(g, f.unit, f.witness);
    rep.add(std::move(item));
  }
}

}  // namespace

CheckReport validate_report(const GroupoidData& data, const std::string& target) {
  CheckReport rep("validate", target);
  const auto violations = validate(data);
  if (violations.empty()) {
    rep.add_bool("axioms", true,
                 std::to_string(data.unit_ids.size()) + " units, " +
                     std::to_string(data.arrow_ids.size()) + " arrows");
    return rep;
  }
  for (const auto& v : violations) {
    Json w = Json::array();
    for (const auto& id : v.witness) w.push_back(id);
    rep.add_bool("axiom." + v.kind, false, v.message, w.empty() ? Json(nullptr) : w);
  }
  return rep;
}

CheckReport check_pd(const ArrowFunction& F, const SuiteOptions& opts, const std::string& target) {
  CheckReport rep("pd", target);
  const FiniteGroupoid& g = F.groupoid();
  const PdReport pd = is_positive_definite(F, opts.tol.algebraic);
  add_pd_fibres(rep, g, pd, "");
  rep.add_bool("positive_definite", pd.positive_definite);
  const double ud = unit_defect(F);
  if (ud > opts.tol.algebraic)
    rep.add_warning("units_one", "F differs from 1 on units by " + num(ud));
  return rep;
}

CheckReport check_cnd(const ArrowFunction& psi, const SuiteOptions& opts,
                      const std::string& target) {
  CheckReport rep("cnd", target);
  const FiniteGroupoid& g = psi.groupoid();
  const double tol = opts.tol.algebraic;
  if (!psi.is_real(tol)) {
    rep.add_bool("real", false, "conditionally negative definite functions must be real");
    return rep;
  }
  const CndReport r = is_cnd(psi, tol);
  rep.add_residual("units_zero", r.unit_defect, tol);
  rep.add_residual("symmetric", r.symmetry_defect, tol);
  for (const auto& f : r.fibres) {
    CheckItem item{fibre_id(g, f.unit) + ".compressed_max_eig", f.ok ? Status::Pass : Status::Fail,
                   std::max(0.0, f.max_eig) / f.scale,
                   "dim=" + std::to_string(f.dim) + " max_eig=" + num(f.max_eig), nullptr};
    if (!f.ok && f.witness.size()) item.witness = fibre_vector(g, f.unit, f.witness);
    rep.add(std::move(item));
  }
  rep.add_bool("cnd", r.cnd);
  rep.add_residual("nonnegative", std::max(0.0, -r.min_value), tol, "min=" + num(r.min_value));
  if (r.cnd)
    for (double t : kTimes) {
      const PdReport pd = is_positive_definite(schoenberg(psi, t, tol), tol);
      double worst = 0.0;
      for (const auto& f : pd.fibres) worst = std::max(worst, std::max(0.0, -f.min_eig) / f.scale);
      rep.add_residual("schoenberg[t=" + num(t) + "].pd", worst, tol);
    }
  return rep;
}

CheckReport check_treeing(const GroupoidPtr& gp, std::span<const Index> Q,
                          const SuiteOptions& opts, const std::string& target) {
  CheckReport rep("treeing", target);
  const FiniteGroupoid& g = *gp;
  const double tol = opts.tol.algebraic;
  const TreeingReport tr = is_treeing(g, Q);
  for (const auto& f : tr.fibres) {
    Json cycles = Json::array();
    for (const auto& c : f.cycles) cycles.push_back(arrow_list(g, c));
    const bool tree = f.connected && f.cycles.empty();
    rep.add_bool(fibre_id(g, f.unit) + ".tree", tree,
                 "V=" + std::to_string(f.vertices) + " E=" + std::to_string(f.edges) +
                     (f.connected ? "" : " disconnected"),
                 f.cycles.empty() ? Json(nullptr) : cycles);
  }
  rep.add_bool("treeing", tr.is_treeing(),
               std::string(verdict_name(tr.verdict)) + (tr.message.empty() ? "" : ": " + tr.message),
               tr.offending.empty() ? Json(nullptr) : arrow_list(g, tr.offending));
  if (!tr.is_treeing()) return rep;

  const TreeMetric tm = tree_metric(gp, Q);
  const ArrowFunction& psi = tm.psi;
  double sym = 0.0;
  for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
    sym = std::max(sym, std::abs(psi[a] - psi[g.inverse(a)]));
  rep.add_residual("psi.symmetric", sym, tol);

  std::size_t triangle = 0, invariance = 0;
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x) {
    const auto& d = tm.dist[x];
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (d[i][k] > d[i][j] + d[j][k]) ++triangle;
  }
  for (Index t = 0; t < static_cast<Index>(g.num_arrows()); ++t)
    for (Index v1 : g.range_fibre(g.src(t)))
      for (Index v2 : g.range_fibre(g.src(t)))
        if (tm.distance(g.dst(t), g.compose(t, v1), g.compose(t, v2)) !=
            tm.distance(g.src(t), v1, v2))
          ++invariance;
  rep.add_bool("metric.triangle", triangle == 0, std::to_string(triangle) + " violations");
  rep.add_bool("metric.left_invariant", invariance == 0, std::to_string(invariance) + " violations");

  const CndReport cnd = is_cnd(psi, tol);
  rep.add_bool("psi.cnd", cnd.cnd);
  for (double t : kTimes)
    rep.add_bool("schoenberg[t=" + num(t) + "].pd",
                 is_positive_definite(schoenberg(psi, t, tol), tol).positive_definite);

  const std::int64_t k = max_fibre_degree(g, Q);
  double top = 0.0;
  for (Complex v : psi.values()) top = std::max(top, v.real());
  std::vector<double> radii;
  for (int c = 0; c <= static_cast<int>(top); ++c) radii.push_back(c);
  for (const auto& b : tree_ball_bounds(psi, k, radii)) {
    const std::string id = "ball[c=" + std::to_string(static_cast<int>(b.radius)) + "]";
    const std::string detail = "nu=" + to_string(b.mass) + " ball_bound=" +
                               std::to_string(b.ball_bound) + " k=" + std::to_string(k);
    rep.add_bool(id, b.ball_holds, detail);
    if (!b.power_holds)
      rep.add_warning(id + ".power_form",
                      "nu=" + to_string(b.mass) + " exceeds k^c=" + std::to_string(b.power_bound));
  }

  try {
    const Orientation o = orient(g, Q);
    std::vector<Index> both = o.plus;
    for (Index q : o.plus) both.push_back(g.inverse(q));
    std::sort(both.begin(), both.end());
    std::vector<Index> sorted(Q.begin(), Q.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const bool disjoint = std::adjacent_find(both.begin(), both.end()) == both.end();
    rep.add_bool("orient.partition", disjoint && both == sorted, "", arrow_list(g, o.plus));
    if (o.edges_invariant)
      rep.add_bool("orient.edges_invariant", true, "observed, not asserted");
    else
      rep.add_warning("orient.edges_invariant", "left translation does not preserve the orientation");
  } catch (const PreconditionError& e) {
    rep.add_warning("orient", e.what());
  }
  return rep;
}

CheckReport check_vn(const GroupoidPtr& gp, const SuiteOptions& opts, const std::string& target) {
  CheckReport rep("vn", target);
  const FiniteGroupoid& g = *gp;
  const double tol = opts.tol.algebraic, stol = opts.tol.spectral;
  fixtures::Rng rng(opts.seed);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  const int N = std::max(1, opts.instances);
  const ArrowFunction one = ArrowFunction::units(gp);
  const ArrowFunction half = delta_power(gp, 0.5);

  Worst assoc, invol, inorm, opnorm, hom, star, phi_inner, phi_faith, phi_vec;
  Worst ea_idem, ea_phi, ea_bimod, ea_comp, j_inv, j_iso, jlj, comm, right_bound;
  Worst flow_mult, flow_star, flow_fix, parseval_span, parseval_full, rank_one;
  for (int i = 0; i < N; ++i) {
    const ArrowFunction f = fixtures::random_function(gp, rng);
    const ArrowFunction h = fixtures::random_function(gp, rng);
    const ArrowFunction k = fixtures::random_function(gp, rng);
    const ArrowFunction xi = fixtures::random_function(gp, rng);
    const ArrowFunction fh = convolve(f, h);
    assoc(max_abs_diff(convolve(fh, k), convolve(f, convolve(h, k))));
    invol(max_abs_diff(involute(fh), convolve(involute(h), involute(f))));
    inorm(i_norm(fh) - i_norm(f) * i_norm(h));
    const FibreOperator Lf = regular_rep(f), Lh = regular_rep(h);
    opnorm(Lf.op_norm() - i_norm(f));
    hom(max_block_diff(regular_rep(fh), Lf * Lh));
    star(max_block_diff(regular_rep(involute(f)), Lf.adjoint()));

    const VnElement mf(f), mh(h);
    phi_inner(std::abs(state_phi(mf.adjoint() * mh) - l2_inner(f, h)));
    phi_faith(std::abs(state_phi(mf.adjoint() * mf) - std::pow(l2_norm(f), 2)));
    phi_vec(std::abs(state_phi(mf) - l2_inner(one, Lf.apply(one))));

    const VnElement ea = cond_expectation(mf);
    ea_idem(max_abs_diff(cond_expectation(ea).coefficient(), ea.coefficient()));
    ea_phi(std::abs(state_phi(ea) - state_phi(mf)));
    const ArrowFunction a = on_units(gp, random_unit_values(g, rng));
    const ArrowFunction b = on_units(gp, random_unit_values(g, rng));
    const VnElement ma(a), mb(b);
    ea_bimod(max_abs_diff(cond_expectation(ma * mf * mb).coefficient(),
                          (ma * ea * mb).coefficient()));
    ea_comp(max_abs_diff(ea.coefficient(), DenseOperator::unit_projection(gp).apply(f)));

    const ArrowFunction Jxi = modular_conjugation(xi);
    j_inv(max_abs_diff(modular_conjugation(Jxi), xi));
    j_iso(std::abs(l2_norm(Jxi) - l2_norm(xi)));
    jlj(max_abs_diff(conjugated_left_apply(f, xi), convolve(xi, pointwise(half, involute(f)))));
    comm(max_abs_diff(conjugated_left_apply(f, Lh.apply(xi)), Lh.apply(conjugated_left_apply(f, xi))));
    const RightConvolution rc = right_convolve(xi, h);
    right_bound(rc.norm - rc.bound);

    const double t = time(rng);
    const VnElement sf = modular_flow(mf, t), sh = modular_flow(mh, t);
    flow_mult(max_abs_diff(modular_flow(mf * mh, t).coefficient(), (sf * sh).coefficient()));
    flow_star(max_abs_diff(modular_flow(mf.adjoint(), t).coefficient(), sf.adjoint().coefficient()));
    flow_fix(max_abs_diff(modular_flow(ma, t).coefficient(), a));

    // Orthonormal family from three random vectors; xi in its span.
    const std::vector<ArrowFunction> raw{f, h, k};
    const GramSchmidtResult gs = module_gram_schmidt(raw, tol);
    ArrowFunction in_span(gp);
    for (const auto& e : gs.basis) in_span += right_act(e, random_unit_values(g, rng));
    auto parseval_defect = [&](const ArrowFunction& v, const std::vector<ArrowFunction>& basis) {
      std::vector<Complex> rhs(g.num_units());
      for (const auto& e : basis) {
        const auto l = a_inner(v, e), r = a_inner(e, v);
        for (std::size_t x = 0; x < rhs.size(); ++x) rhs[x] += l[x] * r[x];
      }
      return vec_max(a_inner(v, v), rhs);
    };
    parseval_span(parseval_defect(in_span, gs.basis));
    std::vector<ArrowFunction> bis;
    for (const auto& piece : bisection_partition(g)) bis.push_back(ArrowFunction::indicator(gp, piece));
    parseval_full(parseval_defect(xi, bis));

    rank_one(std::abs(trace(DenseOperator::rank_one(xi, h), tol) - tau_mu(g, a_inner(h, xi))));
  }
  rep.add_residual("algebra.associativity", assoc.value, tol);
  rep.add_residual("algebra.involution_antimultiplicative", invol.value, tol);
  rep.add_residual("algebra.i_norm_submultiplicative", std::max(0.0, inorm.value), tol);
  rep.add_residual("algebra.op_norm_bound", std::max(0.0, opnorm.value), tol);
  rep.add_residual("algebra.regular_rep_multiplicative", hom.value, tol);
  rep.add_residual("algebra.regular_rep_star", star.value, tol);
  rep.add_residual("phi.inner_product", phi_inner.value, tol);
  rep.add_residual("phi.faithful", phi_faith.value, tol);
  rep.add_residual("phi.vector_state", phi_vec.value, tol);
  rep.add_residual("expectation.idempotent", ea_idem.value, tol);
  rep.add_residual("expectation.preserves_phi", ea_phi.value, tol);
  rep.add_residual("expectation.bimodular", ea_bimod.value, tol);
  rep.add_residual("expectation.compression", ea_comp.value, tol);
  rep.add_residual("modular.j_involution", j_inv.value, tol);
  rep.add_residual("modular.j_isometry", j_iso.value, tol);
  rep.add_residual("modular.jlj_right_convolution", jlj.value, tol);
  rep.add_residual("modular.jlj_commutant", comm.value, tol);
  rep.add_residual("modular.right_convolution_bound", std::max(0.0, right_bound.value), tol);
  rep.add_residual("modular.flow_multiplicative", flow_mult.value, tol);
  rep.add_residual("modular.flow_star", flow_star.value, tol);
  rep.add_residual("modular.flow_fixes_A", flow_fix.value, tol);

  // Bisection indicators as an orthonormal A-basis.
  const auto partition = bisection_partition(g);
  std::vector<ArrowFunction> bis;
  for (const auto& piece : partition) bis.push_back(ArrowFunction::indicator(gp, piece));
  double ortho = 0.0;
  for (std::size_t i = 0; i < bis.size(); ++i)
    for (std::size_t j = 0; j < bis.size(); ++j) {
      const auto ip = a_inner(bis[i], bis[j]);
      for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x) {
        double expect = 0.0;
        if (i == j)
          for (Index a : partition[i]) expect += g.src(a) == x ? 1.0 : 0.0;
        ortho = std::max(ortho, std::abs(ip[x] - expect));
      }
    }
  rep.add_residual("module.bisection_basis_orthonormal", ortho, tol,
                   std::to_string(partition.size()) + " bisections");
  const GramSchmidtResult gs = module_gram_schmidt(bis, tol);
  double unchanged = 0.0;
  for (std::size_t i = 0; i < bis.size(); ++i)
    unchanged = std::max(unchanged, max_abs_diff(gs.basis[i], bis[i]));
  rep.add_residual("module.gram_schmidt_fixes_bisections", unchanged, tol);
  rep.add_residual("module.parseval_span", parseval_span.value, tol);
  rep.add_residual("module.parseval_bisection_basis", parseval_full.value, tol);

  // Trace.
  std::vector<Index> reversed(g.num_arrows());
  for (std::size_t a = 0; a < reversed.size(); ++a)
    reversed[a] = static_cast<Index>(reversed.size() - 1 - a);
  const auto partition2 = bisection_partition(g, reversed);
  rep.add_residual("trace.e_A", std::abs(trace(DenseOperator::unit_projection(gp), tol) - 1.0), tol);
  Worst mult, parts;
  for (int i = 0; i < N; ++i) {
    const ArrowFunction f = fixtures::random_function(gp, rng);
    const DenseOperator m = DenseOperator::multiplication(f);
    Complex integral = 0.0;
    for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
      integral += f[a] * g.nu_weights()[a];
    const Complex t1 = trace(m, partition, tol), t2 = trace(m, partition2, tol);
    mult(std::abs(t1 - integral));
    parts(std::abs(t1 - t2));
    const DenseOperator L = DenseOperator::from_fibres(regular_rep(f));
    parts(std::abs(trace(L, partition, tol) - trace(L, partition2, tol)));
  }
  rep.add_residual("trace.multiplication_integral", mult.value, tol);
  rep.add_residual("trace.partition_independent", parts.value, tol,
                   std::to_string(partition.size()) + " and " + std::to_string(partition2.size()) +
                       " pieces");
  rep.add_residual("trace.rank_one", rank_one.value, tol);

  // Positive definite functions and A-bilinear maps.
  const int M = std::max(1, N / 2);
  Worst round, indep, stine, iso, gns_coef, gns_rep, contract, fphi_pd;
  std::set<std::string> warnings;
  bool probe_ok = true;
  for (int i = 0; i < M; ++i) {
    const ArrowFunction F = fixtures::random_pd(gp, rng);
    const CpMap phi = cp_from_pd(F, tol);
    const ArrowFunction back = pd_from_cp(phi, partition);
    round(max_abs_diff(back, F));
    indep(max_abs_diff(back, pd_from_cp(phi, partition2)));
    const PdReport pd = is_positive_definite(back, tol);
    for (const auto& fr : pd.fibres) fphi_pd(std::max(0.0, -fr.min_eig) / fr.scale);
    const StinespringReport st = verify_stinespring(F, tol);
    stine(st.residual);
    iso(st.isometry_defect);
    const GnsResult gn = gns(F, 1e-10, tol);
    warnings.insert(gn.warnings.begin(), gn.warnings.end());
    gns_coef(max_abs_diff(coefficient(gn.rep, gn.xi), F));
    gns_rep(check_representation(gn.rep).max());
    const ArrowFunction m = fixtures::random_function(gp, rng);
    contract(l2_norm(phi.apply(m)) - l2_norm(m));
    if (i < 5) probe_ok = probe_ok && complete_positivity_probe(phi, 2, opts.seed + i).positive;
  }
  rep.add_residual("cp.round_trip", round.value, tol, std::to_string(M) + " functions");
  rep.add_residual("cp.partition_independent", indep.value, tol);
  rep.add_residual("cp.f_phi_positive_definite", fphi_pd.value, tol);
  rep.add_residual("cp.stinespring", stine.value, stol);
  rep.add_residual("cp.stinespring_isometry", iso.value, stol);
  rep.add_residual("cp.contractive", std::max(0.0, contract.value), tol);
  rep.add_bool("cp.probe", probe_ok, "k=2, 50 samples");
  const ProbeResult neg = complete_positivity_probe(CpMap::multiplier(fixtures::non_pd_control(gp)),
                                                    2, opts.seed);
  rep.add_bool("cp.probe_negative_control", !neg.positive,
               "min_eig=" + num(neg.min_eig) + " sample=" + std::to_string(neg.failing_sample));
  rep.add_residual("gns.coefficient", gns_coef.value, stol);
  rep.add_residual("gns.representation", gns_rep.value, tol);
  for (const auto& w : warnings) rep.add_warning("gns.rank", w);
  return rep;
}

CheckReport check_amen(const GroupoidPtr& gp, const std::optional<ArrowFunction>& Fin,
                       const SuiteOptions& opts, const std::string& target) {
  CheckReport rep("amen", target);
  const FiniteGroupoid& g = *gp;
  const double tol = opts.tol.algebraic, stol = opts.tol.spectral;

  auto rho_psd = [&](const ArrowFunction& F) {
    const FibreOperator rho = rho_operator(F);
    for (const auto& b : rho.blocks()) {
      const double scale = std::max(1.0, inf_norm(b));
      if (hermitian_defect(b) > tol * scale || hermitian_eigen(b).values(0) < -tol * scale)
        return false;
    }
    return true;
  };

  if (Fin) {
    const ArrowFunction& F = *Fin;
    const bool pd = is_positive_definite(F, tol).positive_definite;
    rep.add_bool("positive_definite", pd);
    rep.add_bool("rho.psd_iff_pd", rho_psd(F) == pd);
    rep.add_residual("rho.equivariant", rho_equivariance_defect(F), tol);
    if (!pd) return rep;
    rep.add_residual("units_one", unit_defect(F), tol);
    if (unit_defect(F) > tol) return rep;
    const UnitField xi = xi_from_pd(F);
    rep.add_residual("xi.round_trip", max_abs_diff(coefficient_of_regular(xi), F), stol);
    return rep;
  }

  fixtures::Rng rng(opts.seed);
  const int N = std::max(1, opts.instances / 2);
  Worst round, equiv, coef_units, coef_pd;
  bool iff = true;
  for (int i = 0; i < N; ++i) {
    const ArrowFunction F = fixtures::random_pd(gp, rng);
    const UnitField xi = xi_from_pd(F);
    round(max_abs_diff(coefficient_of_regular(xi), F));
    equiv(rho_equivariance_defect(F));
    iff = iff && rho_psd(F);
    const UnitField field(fixtures::random_unit_vector_field(gp, rng));
    const ArrowFunction c = coefficient_of_regular(field);
    coef_units(unit_defect(c));
    for (const auto& fr : is_positive_definite(c, tol).fibres)
      coef_pd(std::max(0.0, -fr.min_eig) / fr.scale);
    // Hermitian functions with unit values 1: positive or not.
    ArrowFunction H = fixtures::random_real_function(gp, rng);
    for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
      H[a] = g.is_unit_arrow(a) ? Complex(1.0) : Complex(0.5 * H[a].real());
    for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a) H[g.inverse(a)] = H[a];
    iff = iff && rho_psd(H) == is_positive_definite(H, tol).positive_definite;
  }
  const ArrowFunction control = fixtures::non_pd_control(gp);
  bool rejected = false;
  try {
    xi_from_pd(control);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  rep.add_residual("xi.round_trip", round.value, stol, std::to_string(N) + " functions");
  rep.add_residual("rho.equivariant", equiv.value, tol);
  rep.add_bool("rho.psd_iff_pd", iff);
  rep.add_bool("rho.negative_control", !rho_psd(control) && rejected);
  rep.add_residual("coefficient.units_one", coef_units.value, tol);
  rep.add_residual("coefficient.positive_definite", coef_pd.value, tol);

  const ArrowFunction uniform_raw = [&] {
    ArrowFunction u(gp);
    for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
      u[a] = 1.0 / std::sqrt(static_cast<double>(g.range_fibre(g.dst(a)).size()));
    return u;
  }();
  const std::vector<UnitField> constant{UnitField(uniform_raw), UnitField(uniform_raw)};
  const AmenabilityReport cr = amenability_witness_check(constant, tol);
  rep.add_residual("witness.uniform_deviation", cr.final_deviation, tol);
  const std::vector<UnitField> units{UnitField(ArrowFunction::units(gp))};
  const AmenabilityReport ur = amenability_witness_check(units, tol);
  const bool has_non_units = g.num_arrows() > g.num_units();
  rep.add_bool("witness.units_negative_control",
               !has_non_units || std::abs(ur.final_deviation - 1.0) <= tol,
               "deviation=" + num(ur.final_deviation));
  const AmenabilityReport ir = amenability_witness_check(interpolating_witness(gp, 8), tol);
  rep.add_bool("witness.interpolation_monotone", ir.monotone);
  rep.add_residual("v.unitary", v_unitarity_defect(g), tol);
  return rep;
}

namespace {

void add_stage_checks(CheckReport& rep, const GroupoidPtr& gp,
                      const std::vector<HaagerupStage>& stages, const SuiteOptions& opts) {
  const FiniteGroupoid& g = *gp;
  const double tol = opts.tol.algebraic;
  std::int64_t prev_n = 0;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const HaagerupStage& s = stages[i];
    const std::string id = "stage[" + std::to_string(s.k) + "]";
    rep.add_bool(id + ".positive_definite", is_positive_definite(s.F, tol).positive_definite);
    rep.add_residual(id + ".units_one", unit_defect(s.F), tol);
    rep.add_bool(id + ".wide_subgroupoid", is_wide_subgroupoid(g, s.subgroupoid));
    rep.add_residual(id + ".rule", std::max(0.0, s.sup_deviation - 1.0 / s.k), tol,
                     "n=" + std::to_string(s.n) + " sup=" + num(s.sup_deviation) +
                         " bound=" + num(1.0 / s.k));
    rep.add_bool(id + ".n_increasing", s.n > prev_n);
    prev_n = s.n;
    if (i > 0) {
      double drop = 0.0;
      for (Index a = 0; a < static_cast<Index>(g.num_arrows()); ++a)
        drop = std::max(drop, stages[i - 1].F[a].real() - s.F[a].real());
      if (drop > tol)
        rep.add_warning(id + ".monotone", "F decreases by " + num(drop) + " somewhere");
      else
        rep.add_bool(id + ".monotone", true);
    }
  }
  std::vector<CpMap> maps;
  for (const auto& s : stages) maps.push_back(cp_from_pd(s.F, tol));
  const double eps[] = {0.5, 0.1, 0.01};
  const HaagerupWitnessReport w = validate_haagerup_witness(maps, eps, tol);
  rep.add_bool("witness.expectation_preserved", w.expectation_preserved);
  rep.add_bool("witness.displacement_decreasing", w.displacement_decreasing);
  for (std::size_t i = 0; i < w.stages.size(); ++i) {
    std::string profile;
    for (const auto& m : w.stages[i].profile)
      profile += (profile.empty() ? "" : " ") + ("nu(|F|>" + num(m.threshold) + ")=" + to_string(m.mass));
    rep.add_bool("witness.stage[" + std::to_string(i + 1) + "].profile", true,
                 "displacement=" + num(w.stages[i].displacement) + " " + profile);
  }
}

}  // namespace

CheckReport check_haagerup(const GroupoidPtr& gp, std::span<const Index> Q,
                           const SuiteOptions& opts, const std::string& target) {
  return treeing_witness(gp, Q, opts.stages, opts, target).report;
}

TreeingWitness treeing_witness(const GroupoidPtr& gp, std::span<const Index> Q, int m,
                               const SuiteOptions& opts, const std::string& target) {
  TreeingWitness out{{}, CheckReport("haagerup", target)};
  const TreeingReport tr = is_treeing(*gp, Q);
  if (!tr.is_treeing()) {
    Json cycles = Json::array();
    for (const auto& f : tr.fibres)
      for (const auto& c : f.cycles) cycles.push_back(arrow_list(*gp, c));
    out.report.add_bool("treeing", false,
                        std::string(verdict_name(tr.verdict)) + ": " + tr.message,
                        cycles.empty() ? Json(nullptr) : cycles);
    return out;
  }
  out.report.add_bool("treeing", true);
  out.stages = haagerup_from_treeing(gp, Q, m);
  add_stage_checks(out.report, gp, out.stages, opts);
  return out;
}

AmenWitness amen_witness(const GroupoidPtr& gp, int m, const SuiteOptions& opts,
                         const std::string& target) {
  AmenWitness out{interpolating_witness(gp, m), CheckReport("amen-witness", target)};
  const double tol = opts.tol.algebraic;
  const AmenabilityReport r = amenability_witness_check(out.sequence, tol);
  for (std::size_t i = 0; i < out.sequence.size(); ++i) {
    const ArrowFunction F = coefficient_of_regular(out.sequence[i]);
    const std::string id = "stage[" + std::to_string(i + 1) + "]";
    out.report.add_bool(id + ".positive_definite", is_positive_definite(F, tol).positive_definite,
                        "deviation=" + num(r.stages[i].deviation) +
                            " support=" + std::to_string(r.stages[i].max_fibre_support));
    out.report.add_residual(id + ".units_one", unit_defect(F), tol);
  }
  out.report.add_bool("deviation_monotone", r.monotone, r.note);
  out.report.add_residual("final_deviation", r.final_deviation, tol);
  return out;
}

}  // namespace hgpd
