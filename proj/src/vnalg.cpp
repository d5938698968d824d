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

#include "hgpd/vnalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hgpd/error.hpp"

namespace hgpd {

VnElement::VnElement(ArrowFunction f) : f_(std::move(f)), op_(regular_rep(f_)) {}

VnElement VnElement::adjoint() const { return VnElement(involute(f_)); }

VnElement operator*(const VnElement& a, const VnElement& b) {
  return VnElement(convolve(a.coefficient(), b.coefficient()));
}

VnElement operator+(const VnElement& a, const VnElement& b) {
  return VnElement(a.coefficient() + b.coefficient());
}

Complex state_phi(const VnElement& m) {
  const ArrowFunction& f = m.coefficient();
  const FiniteGroupoid& G = f.groupoid();
  Complex s = 0.0;
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x)
    s += f[G.unit_arrow(x)] * to_double(G.mass(x));
  return s;
}

VnElement cond_expectation(const VnElement& m) {
  const ArrowFunction& f = m.coefficient();
  const FiniteGroupoid& G = f.groupoid();
  ArrowFunction out(f.groupoid_ptr());
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x)
    out[G.unit_arrow(x)] = f[G.unit_arrow(x)];
  return VnElement(std::move(out));
}

ArrowFunction modular_conjugation(const ArrowFunction& xi) {
  const FiniteGroupoid& G = xi.groupoid();
  const ArrowFunction d = delta_power(xi.groupoid_ptr(), 0.5);
  ArrowFunction out(xi.groupoid_ptr());
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a)
    out[a] = d[a] * std::conj(xi[G.inverse(a)]);
  return out;
}

ArrowFunction conjugated_left_apply(const ArrowFunction& f, const ArrowFunction& xi) {
  return modular_conjugation(regular_rep(f).apply(modular_conjugation(xi)));
}

VnElement modular_flow(const VnElement& m, double t) {
  const ArrowFunction& f = m.coefficient();
  const FiniteGroupoid& G = f.groupoid();
  const auto nu = G.nu_weights();
  const auto nu_inv = G.nu_inv_weights();
  ArrowFunction out(f.groupoid_ptr());
  for (std::size_t a = 0; a < f.size(); ++a)
    out[a] = std::polar(1.0, t * std::log(nu_inv[a] / nu[a])) * f[a];
  return VnElement(std::move(out));
}

// ---------------------------------------------------------------------------

std::vector<Complex> a_inner(const ArrowFunction& xi, const ArrowFunction& eta) {
  require_same_groupoid(xi, eta);
  const FiniteGroupoid& G = xi.groupoid();
  std::vector<Complex> out(G.num_units());
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a)
    out[G.src(a)] += std::conj(xi[a]) * eta[a];
  return out;
}

ArrowFunction right_act(const ArrowFunction& xi, std::span<const Complex> a) {
  const FiniteGroupoid& G = xi.groupoid();
  if (a.size() != G.num_units()) throw PreconditionError("right action needs one value per unit");
  ArrowFunction out(xi.groupoid_ptr());
  for (Index g = 0; g < static_cast<Index>(G.num_arrows()); ++g) out[g] = xi[g] * a[G.src(g)];
  return out;
}

Complex tau_mu(const FiniteGroupoid& g, std::span<const Complex> a) {
  if (a.size() != g.num_units()) throw PreconditionError("tau_mu needs one value per unit");
  Complex s = 0.0;
  for (Index x = 0; x < static_cast<Index>(g.num_units()); ++x) s += a[x] * to_double(g.mass(x));
  return s;
}

GramSchmidtResult module_gram_schmidt(std::span<const ArrowFunction> vectors, double tol) {
  GramSchmidtResult out;
  if (vectors.empty()) return out;
  const GroupoidPtr& gp = vectors.front().groupoid_ptr();
  const FiniteGroupoid& G = *gp;
  for (const auto& v : vectors) require_same_groupoid(vectors.front(), v);
  out.basis.assign(vectors.size(), ArrowFunction(gp));
  out.projections.assign(vectors.size(), std::vector<double>(G.num_units(), 0.0));

  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    const auto fib = G.source_fibre(x);
    const auto n = static_cast<Eigen::Index>(fib.size());
    std::vector<CVector> done;
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      CVector v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = vectors[j][fib[i]];
      const double input_norm = v.norm();
      // Two passes of classical Gram-Schmidt.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : done) v -= q.dot(v) * q;
      const double r = v.norm();
      if (r <= tol * std::max(1.0, input_norm)) continue;
      v /= r;
      done.push_back(v);
      out.projections[j][x] = 1.0;
      for (Eigen::Index i = 0; i < n; ++i) out.basis[j][fib[i]] = v(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

DenseOperator::DenseOperator(GroupoidPtr g, CMatrix m) : g_(std::move(g)), m_(std::move(m)) {
  const auto n = static_cast<Eigen::Index>(g_->num_arrows());
  if (m_.rows() != n || m_.cols() != n)
    throw PreconditionError("dense operator must be |G| x |G|");
}

DenseOperator DenseOperator::from_fibres(const FibreOperator& op) {
  const FiniteGroupoid& G = op.groupoid();
  const auto n = static_cast<Eigen::Index>(G.num_arrows());
  CMatrix m = CMatrix::Zero(n, n);
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    const auto fib = op.kind() == Fibres::Source ? G.source_fibre(x) : G.range_fibre(x);
    const CMatrix& b = op.block(x);
    for (std::size_t i = 0; i < fib.size(); ++i)
      for (std::size_t j = 0; j < fib.size(); ++j) m(fib[i], fib[j]) = b(i, j);
  }
  return DenseOperator(op.groupoid_ptr(), std::move(m));
}

DenseOperator DenseOperator::multiplication(const ArrowFunction& f) {
  CVector d(static_cast<Eigen::Index>(f.size()));
  for (std::size_t a = 0; a < f.size(); ++a) d(a) = f[a];
  return DenseOperator(f.groupoid_ptr(), d.asDiagonal());
}

DenseOperator DenseOperator::unit_projection(GroupoidPtr g) {
  return multiplication(ArrowFunction::units(std::move(g)));
}

DenseOperator DenseOperator::rank_one(const ArrowFunction& xi, const ArrowFunction& eta) {
  require_same_groupoid(xi, eta);
  const FiniteGroupoid& G = xi.groupoid();
  const auto n = static_cast<Eigen::Index>(G.num_arrows());
  CMatrix m = CMatrix::Zero(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (G.src(a) == G.src(b)) m(a, b) = xi[a] * std::conj(eta[b]);
  return DenseOperator(xi.groupoid_ptr(), std::move(m));
}

ArrowFunction DenseOperator::apply(const ArrowFunction& xi) const {
  if (xi.groupoid_ptr() != g_ && !structurally_equal(xi.groupoid(), *g_))
    throw PreconditionError("groupoid mismatch");
  const auto in = xi.values();
  const CVector v = m_ * Eigen::Map<const CVector>(in.data(), static_cast<Eigen::Index>(in.size()));
  return ArrowFunction(g_, std::vector<Complex>(v.data(), v.data() + v.size()));
}

double right_a_linearity_defect(const DenseOperator& x) {
  const FiniteGroupoid& G = x.groupoid();
  double worst = 0.0;
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a)
    for (Index b = 0; b < static_cast<Index>(G.num_arrows()); ++b)
      if (G.src(a) != G.src(b)) worst = std::max(worst, std::abs(x.matrix()(a, b)));
  return worst;
}

Complex trace(const DenseOperator& x, double tol) {
  const auto partition = bisection_partition(x.groupoid());
  return trace(x, partition, tol);
}

Complex trace(const DenseOperator& x, std::span<const Bisection> partition, double tol) {
  if (right_a_linearity_defect(x) > tol)
    throw PreconditionError("trace needs an operator commuting with the right action of A");
  Complex s = 0.0;
  for (const auto& piece : partition) {
    const ArrowFunction e = ArrowFunction::indicator(x.groupoid_ptr(), piece);
    s += l2_inner(e, x.apply(e));
  }
  return s;
}

Complex trace(const FibreOperator& x, double tol) {
  return trace(DenseOperator::from_fibres(x), tol);
}

// ---------------------------------------------------------------------------

double a_bilinearity_defect(const FiniteGroupoid& G, const CMatrix& m) {
  double worst = 0.0;
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a)
    for (Index b = 0; b < static_cast<Index>(G.num_arrows()); ++b)
      if (G.src(a) != G.src(b) || G.dst(a) != G.dst(b)) worst = std::max(worst, std::abs(m(a, b)));
  return worst;
}

CpMap::CpMap(GroupoidPtr g, CMatrix m, bool unital, double tol)
    : g_(std::move(g)), m_(std::move(m)), unital_(unital) {
  const auto n = static_cast<Eigen::Index>(g_->num_arrows());
  if (m_.rows() != n || m_.cols() != n) throw PreconditionError("map matrix must be |G| x |G|");
  if (a_bilinearity_defect(*g_, m_) > tol) throw PreconditionError("map is not A-bilinear");
  if (unital_) {
    const ArrowFunction one = ArrowFunction::units(g_);
    if (max_abs_diff(apply(one), one) > tol) throw PreconditionError("map is not unital");
  }
}

CpMap CpMap::identity(GroupoidPtr g) {
  const auto n = static_cast<Eigen::Index>(g->num_arrows());
  return CpMap(std::move(g), CMatrix::Identity(n, n));
}

CpMap CpMap::expectation(GroupoidPtr g) {
  return multiplier(ArrowFunction::units(std::move(g)));
}

CpMap CpMap::multiplier(const ArrowFunction& F, bool unital) {
  CVector d(static_cast<Eigen::Index>(F.size()));
  for (std::size_t a = 0; a < F.size(); ++a) d(a) = F[a];
  return CpMap(F.groupoid_ptr(), d.asDiagonal(), unital);
}

ArrowFunction CpMap::apply(const ArrowFunction& f) const {
  if (f.groupoid_ptr() != g_ && !structurally_equal(f.groupoid(), *g_))
    throw PreconditionError("groupoid mismatch");
  const auto in = f.values();
  const CVector v = m_ * Eigen::Map<const CVector>(in.data(), static_cast<Eigen::Index>(in.size()));
  return ArrowFunction(g_, std::vector<Complex>(v.data(), v.data() + v.size()));
}

VnElement CpMap::apply(const VnElement& m) const { return VnElement(apply(m.coefficient())); }

namespace {

void require_pd_unital(const ArrowFunction& F, double tol, const char* what) {
  const FiniteGroupoid& G = F.groupoid();
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x)
    if (std::abs(F[G.unit_arrow(x)] - 1.0) > tol)
      throw PreconditionError(std::string(what) + ": F is not 1 on unit " + G.unit_id(x));
  if (!is_positive_definite(F, tol).positive_definite)
    throw PreconditionError(std::string(what) + ": F is not positive definite");
}

}  // namespace

CpMap cp_from_pd(const ArrowFunction& F, double tol) {
  require_pd_unital(F, tol, "cp_from_pd");
  return CpMap::multiplier(F);
}

StinespringReport verify_stinespring(const ArrowFunction& F, double tol) {
  require_pd_unital(F, tol, "verify_stinespring");
  const FiniteGroupoid& G = F.groupoid();
  const GnsResult g = gns(F, 1e-10, tol);
  StinespringReport rep;
  rep.warnings = g.warnings;

  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    const auto fib = G.source_fibre(x);
    const auto n = static_cast<Eigen::Index>(fib.size());
    const Eigen::Index d = g.rep.dims[x];
    // S: l^2(G_x) -> l^2(G_x) (x) H(x), delta_h -> delta_h (x) pi(h)^* xi(dst h).
    CMatrix S = CMatrix::Zero(n * d, n);
    for (Eigen::Index i = 0; i < n; ++i)
      S.block(i * d, i, d, 1) = g.rep.pi[fib[i]].adjoint() * g.xi.xi[G.dst(fib[i])];
    rep.isometry_defect =
        std::max(rep.isometry_defect, max_entry_diff(S.adjoint() * S, CMatrix::Identity(n, n)));

    for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a) {
      // L_x(delta_a)[i, j] = [fib[i] fib[j]^-1 == a]
      CMatrix L = CMatrix::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (G.compose(fib[i], G.inverse(fib[j])) == a) L(i, j) = 1.0;
      CMatrix K = CMatrix::Zero(n * d, n * d);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (L(i, j) != Complex(0.0))
            K.block(i * d, j * d, d, d) = L(i, j) * CMatrix::Identity(d, d);
      const CMatrix lhs = S.adjoint() * K * S;
      const CMatrix rhs = F[a] * L;
      rep.residual = std::max(rep.residual, max_entry_diff(lhs, rhs));
    }
  }
  return rep;
}

ArrowFunction pd_from_cp(const CpMap& phi) {
  const auto partition = bisection_partition(phi.groupoid());
  return pd_from_cp(phi, partition);
}

ArrowFunction pd_from_cp(const CpMap& phi, std::span<const Bisection> partition) {
  const FiniteGroupoid& G = phi.groupoid();
  if (a_bilinearity_defect(G, phi.matrix()) > 1e-10) throw PreconditionError("map is not A-bilinear");
  ArrowFunction F(phi.groupoid_ptr());
  std::vector<bool> seen(G.num_arrows(), false);
  for (const auto& piece : partition) {
    if (!is_bisection(G, piece)) throw PreconditionError("partition piece is not a bisection");
    const ArrowFunction e = ArrowFunction::indicator(phi.groupoid_ptr(), piece);
    const ArrowFunction h = convolve(phi.apply(e), involute(e));
    for (Index a : piece) {
      if (seen[a]) throw PreconditionError("partition pieces overlap");
      seen[a] = true;
      F[a] = h[G.unit_arrow(G.dst(a))];
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw PreconditionError("partition does not cover G");
  return F;
}

ProbeResult complete_positivity_probe(const CpMap& phi, int k, std::uint64_t seed, int samples,
                                      double tol) {
  if (k < 1 || k > 4) throw PreconditionError("probe matrix size must be between 1 and 4");
  const GroupoidPtr& gp = phi.groupoid_ptr();
  const FiniteGroupoid& G = *gp;
  const auto partition = bisection_partition(G);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto ku = static_cast<std::size_t>(k);

  ProbeResult out;
  bool first = true;
  for (int s = 0; s < samples; ++s) {
    // y is k x k over M; x = y^* y.
    std::vector<ArrowFunction> y(ku * ku, ArrowFunction(gp));
    if (s == 0) {
      for (std::size_t j = 0; j < ku && j < partition.size(); ++j)
        y[j] = ArrowFunction::indicator(gp, partition[j]);
    } else {
      for (auto& e : y)
        for (std::size_t a = 0; a < e.size(); ++a) e[a] = Complex(normal(rng), normal(rng));
    }
    std::vector<ArrowFunction> px;
    px.reserve(ku * ku);
    for (std::size_t i = 0; i < ku; ++i)
      for (std::size_t j = 0; j < ku; ++j) {
        ArrowFunction xij(gp);
        for (std::size_t l = 0; l < ku; ++l) xij += convolve(involute(y[l * ku + i]), y[l * ku + j]);
        px.push_back(phi.apply(xij));
      }
    std::vector<FibreOperator> blocks;
    blocks.reserve(px.size());
    for (const auto& f : px) blocks.push_back(regular_rep(f));

    for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
      const auto n = static_cast<Eigen::Index>(G.source_fibre(x).size());
      const auto kk = static_cast<Eigen::Index>(k);
      CMatrix B(kk * n, kk * n);
      for (Eigen::Index i = 0; i < kk; ++i)
        for (Eigen::Index j = 0; j < kk; ++j)
          B.block(i * n, j * n, n, n) = blocks[static_cast<std::size_t>(i * kk + j)].block(x);
      const double scale = std::max(1.0, inf_norm(B));
      const double m = hermitian_eigen(B).values(0);
      if (first || m / scale < out.min_eig / out.scale) {
        out.min_eig = m;
        out.scale = scale;
        first = false;
      }
      if (m < -tol * scale && out.positive) {
        out.positive = false;
        out.failing_sample = s;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

HaagerupWitnessReport validate_haagerup_witness(std::span<const CpMap> maps,
                                                std::span<const double> eps, double tol) {
  HaagerupWitnessReport rep;
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& phi : maps) {
    const FiniteGroupoid& G = phi.groupoid();
    HaagerupWitnessStage st;
    const auto n = static_cast<Index>(G.num_arrows());
    for (Index g = 0; g < n; ++g) {
      const ArrowFunction d = ArrowFunction::point_mass(phi.groupoid_ptr(), g);
      const ArrowFunction pd = phi.apply(d);
      for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
        const Index u = G.unit_arrow(x);
        st.expectation_defect = std::max(st.expectation_defect, std::abs(pd[u] - d[u]));
      }
      st.displacement = std::max(st.displacement, l2_norm(pd - d));
    }
    st.profile = mass_above(pd_from_cp(phi), eps);
    rep.expectation_preserved = rep.expectation_preserved && st.expectation_defect <= tol;
    rep.displacement_decreasing = rep.displacement_decreasing && st.displacement <= previous + tol;
    previous = st.displacement;
    rep.stages.push_back(std::move(st));
  }
  return rep;
}

}  // namespace hgpd
