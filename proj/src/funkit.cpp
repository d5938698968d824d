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

#include "hgpd/funkit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hgpd/error.hpp"

namespace hgpd {
namespace {

double scale_of(const CMatrix& m) { return std::max(1.0, inf_norm(m)); }

FibreSpectrum pd_spectrum(const CMatrix& m, Index unit, double tol) {
  FibreSpectrum s;
  s.unit = unit;
  s.dim = static_cast<std::size_t>(m.rows());
  if (m.rows() == 0) return s;
  s.scale = scale_of(m);
  s.hermitian_defect = hermitian_defect(m);
  const auto eig = hermitian_eigen(m);
  s.min_eig = eig.values(0);
  s.max_eig = eig.values(eig.values.size() - 1);
  s.witness = eig.vectors.col(0);
  s.ok = s.hermitian_defect <= tol * s.scale && s.min_eig >= -tol * s.scale;
  return s;
}

CMatrix gram_on(const ArrowFunction& F, std::span<const Index> arrows) {
  const FiniteGroupoid& G = F.groupoid();
  const auto n = static_cast<Eigen::Index>(arrows.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = F[G.compose(G.inverse(arrows[i]), arrows[j])];
  return m;
}

void require_unit_one(const ArrowFunction& F, double tol, const char* what) {
  const FiniteGroupoid& G = F.groupoid();
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x)
    if (std::abs(F[G.unit_arrow(x)] - 1.0) > tol)
      throw PreconditionError(std::string(what) + ": F is not 1 on unit " + G.unit_id(x));
}

}  // namespace

CMatrix fibre_gram(const ArrowFunction& F, Index x) {
  return gram_on(F, F.groupoid().range_fibre(x));
}

PdReport is_positive_definite(const ArrowFunction& F, double tol) {
  PdReport r;
  for (Index x = 0; x < static_cast<Index>(F.groupoid().num_units()); ++x) {
    r.fibres.push_back(pd_spectrum(fibre_gram(F, x), x, tol));
    r.positive_definite = r.positive_definite && r.fibres.back().ok;
  }
  return r;
}

PdReport is_positive_definite_on(const ArrowFunction& F, const std::vector<bool>& member,
                                 double tol) {
  const FiniteGroupoid& G = F.groupoid();
  PdReport r;
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    std::vector<Index> arrows;
    for (Index a : G.range_fibre(x))
      if (member[a]) arrows.push_back(a);
    r.fibres.push_back(pd_spectrum(gram_on(F, arrows), x, tol));
    r.positive_definite = r.positive_definite && r.fibres.back().ok;
  }
  return r;
}

CndReport is_cnd(const ArrowFunction& psi, double tol) {
  if (!psi.is_real(tol))
    throw PreconditionError("conditionally negative definite check needs a real function");
  const FiniteGroupoid& G = psi.groupoid();
  CndReport r;
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x)
    r.unit_defect = std::max(r.unit_defect, std::abs(psi[G.unit_arrow(x)].real()));
  r.min_value = 0.0;
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a) {
    r.symmetry_defect =
        std::max(r.symmetry_defect, std::abs(psi[a].real() - psi[G.inverse(a)].real()));
    r.min_value = a == 0 ? psi[a].real() : std::min(r.min_value, psi[a].real());
  }
  r.cnd = r.unit_defect <= tol && r.symmetry_defect <= tol;

  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    const CMatrix m = fibre_gram(psi, x);
    FibreSpectrum s;
    s.unit = x;
    s.dim = static_cast<std::size_t>(m.rows());
    s.scale = scale_of(m);
    s.hermitian_defect = hermitian_defect(m);
    if (m.rows() >= 2) {
      // Orthonormal basis of the complement of the constant vector: the
      // trailing columns of the Householder Q of the ones vector.
      const auto n = m.rows();
      Eigen::HouseholderQR<CMatrix> qr(CMatrix::Ones(n, 1));
      const CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
      const CMatrix basis = q.rightCols(n - 1);
      const auto eig = hermitian_eigen(basis.adjoint() * m * basis);
      s.min_eig = eig.values(0);
      s.max_eig = eig.values(eig.values.size() - 1);
      s.witness = basis * eig.vectors.col(eig.values.size() - 1);
    }
    s.ok = s.max_eig <= tol * s.scale && s.hermitian_defect <= tol * s.scale;
    r.cnd = r.cnd && s.ok;
    r.fibres.push_back(std::move(s));
  }
  r.nonnegative = r.min_value >= -tol;
  return r;
}

ArrowFunction schoenberg(const ArrowFunction& psi, double t, double tol) {
  if (!(t > 0.0)) throw PreconditionError("Schoenberg transform needs t > 0");
  if (!is_cnd(psi, tol).cnd)
    throw PreconditionError("Schoenberg transform needs a conditionally negative definite psi");
  ArrowFunction F(psi.groupoid_ptr());
  for (std::size_t a = 0; a < F.size(); ++a) F[a] = std::exp(-t * psi[a].real());
  return F;
}

ArrowFunction extend_by_zero(const ArrowFunction& F, const std::vector<bool>& member,
                             double tol) {
  const FiniteGroupoid& G = F.groupoid();
  if (!is_wide_subgroupoid(G, member))
    throw PreconditionError("extension by zero needs a wide subgroupoid");
  if (!is_positive_definite_on(F, member, tol).positive_definite)
    throw PreconditionError("extension by zero needs F positive definite on the subgroupoid");
  ArrowFunction out(F.groupoid_ptr());
  for (std::size_t a = 0; a < F.size(); ++a)
    if (member[a]) out[a] = F[a];
  return out;
}

ArrowFunction extend_by_zero(const ArrowFunction& F_on_H, const GroupoidPtr& G, double tol) {
  const FiniteGroupoid& H = F_on_H.groupoid();
  if (H.num_units() != G->num_units())
    throw PreconditionError("subgroupoid must have the same units");
  for (Index x = 0; x < static_cast<Index>(H.num_units()); ++x)
    if (!G->find_unit(H.unit_id(x)))
      throw PreconditionError("subgroupoid unit " + H.unit_id(x) + " is not a unit of G");
  std::vector<Index> to_g(H.num_arrows());
  std::vector<bool> member(G->num_arrows(), false);
  ArrowFunction lifted(G);
  for (Index a = 0; a < static_cast<Index>(H.num_arrows()); ++a) {
    const auto g = G->find_arrow(H.arrow_id(a));
    if (!g) throw PreconditionError("subgroupoid arrow " + H.arrow_id(a) + " is not in G");
    if (G->unit_id(G->src(*g)) != H.unit_id(H.src(a)) ||
        G->unit_id(G->dst(*g)) != H.unit_id(H.dst(a)))
      throw PreconditionError("subgroupoid arrow " + H.arrow_id(a) + " has different endpoints");
    to_g[a] = *g;
    member[*g] = true;
    lifted[*g] = F_on_H[a];
  }
  for (Index a = 0; a < static_cast<Index>(H.num_arrows()); ++a)
    for (Index b = 0; b < static_cast<Index>(H.num_arrows()); ++b) {
      const Index c = H.compose(a, b);
      if (c != kNone && G->compose(to_g[a], to_g[b]) != to_g[c])
        throw PreconditionError("subgroupoid composition differs from G");
    }
  return extend_by_zero(lifted, member, tol);
}

// ---------------------------------------------------------------------------

Representation Representation::trivial(GroupoidPtr g) {
  Representation r;
  r.dims.assign(g->num_units(), 1);
  r.pi.assign(g->num_arrows(), CMatrix::Identity(1, 1));
  r.groupoid = std::move(g);
  return r;
}

double RepresentationDefects::max() const {
  return std::max({shape, identity, multiplicativity, inverse, unitarity});
}

RepresentationDefects check_representation(const Representation& rep) {
  const FiniteGroupoid& G = *rep.groupoid;
  RepresentationDefects d;
  const Index n = static_cast<Index>(G.num_arrows());
  if (rep.dims.size() != G.num_units() || rep.pi.size() != G.num_arrows()) {
    d.shape = 1.0;
    return d;
  }
  for (Index a = 0; a < n; ++a)
    if (rep.pi[a].rows() != rep.dims[G.dst(a)] || rep.pi[a].cols() != rep.dims[G.src(a)]) {
      d.shape = 1.0;
      return d;
    }
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x) {
    const CMatrix& e = rep.pi[G.unit_arrow(x)];
    d.identity = std::max(d.identity, max_entry_diff(e, CMatrix::Identity(e.rows(), e.cols())));
  }
  for (Index a = 0; a < n; ++a) {
    const CMatrix& p = rep.pi[a];
    d.unitarity =
        std::max(d.unitarity, max_entry_diff(p.adjoint() * p, CMatrix::Identity(p.cols(), p.cols())));
    d.inverse = std::max(d.inverse, max_entry_diff(rep.pi[G.inverse(a)] * p,
                                                   CMatrix::Identity(p.cols(), p.cols())));
    for (Index b = 0; b < n; ++b) {
      const Index c = G.compose(a, b);
      if (c == kNone) continue;
      d.multiplicativity = std::max(d.multiplicativity, max_entry_diff(rep.pi[c], p * rep.pi[b]));
    }
  }
  return d;
}

ArrowFunction coefficient(const Representation& rep, const Section& xi) {
  const FiniteGroupoid& G = *rep.groupoid;
  if (xi.xi.size() != G.num_units() || rep.dims.size() != G.num_units() ||
      rep.pi.size() != G.num_arrows())
    throw PreconditionError("coefficient: representation and section shapes differ");
  for (Index x = 0; x < static_cast<Index>(G.num_units()); ++x)
    if (xi.xi[x].size() != rep.dims[x])
      throw PreconditionError("coefficient: section has wrong dimension at unit " + G.unit_id(x));
  ArrowFunction F(rep.groupoid);
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a) {
    const CMatrix& p = rep.pi[a];
    if (p.rows() != rep.dims[G.dst(a)] || p.cols() != rep.dims[G.src(a)])
      throw PreconditionError("coefficient: pi(" + G.arrow_id(a) + ") has the wrong shape");
    F[a] = xi.xi[G.dst(a)].dot(p * xi.xi[G.src(a)]);  // dot conjugates the left side
  }
  return F;
}

GnsResult gns(const ArrowFunction& F, double rank_tol, double tol) {
  require_unit_one(F, tol, "gns");
  if (!is_positive_definite(F, tol).positive_definite)
    throw PreconditionError("gns: F is not positive definite");
  const FiniteGroupoid& G = F.groupoid();
  const Index u = static_cast<Index>(G.num_units());

  GnsResult out;
  out.rep.groupoid = F.groupoid_ptr();
  // Per unit: embed = Lambda^{1/2} U^* (d x n), lift = U Lambda^{-1/2} (n x d).
  std::vector<CMatrix> embed(u), lift(u);
  for (Index x = 0; x < u; ++x) {
    const auto eig = hermitian_eigen(fibre_gram(F, x));
    const double top = eig.values.size() ? eig.values.maxCoeff() : 0.0;
    const double scale = std::max(1.0, top);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      const double v = eig.values(i);
      if (v > rank_tol * top) keep.push_back(i);
      if (std::abs(v) > 1e-12 * scale && std::abs(v) < 1e-8 * scale) {
        std::ostringstream w;
        w << "unit " << G.unit_id(x) << ": eigenvalue " << v
          << " lies in the ambiguous rank band; cut at " << rank_tol << " x max";
        out.warnings.push_back(w.str());
      }
    }
    const auto n = eig.values.size();
    const auto d = static_cast<Eigen::Index>(keep.size());
    embed[x].resize(d, n);
    lift[x].resize(n, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double lam = eig.values(keep[k]);
      embed[x].row(k) = std::sqrt(lam) * eig.vectors.col(keep[k]).adjoint();
      lift[x].col(k) = eig.vectors.col(keep[k]) / std::sqrt(lam);
    }
    out.rep.dims.push_back(d);
  }

  out.rep.pi.resize(G.num_arrows());
  for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a) {
    const Index r = G.dst(a), s = G.src(a);
    // (pi(a) f)(h) = f(a^-1 h): the point mass at h in G^s goes to a h in G^r.
    const auto src_fibre = G.range_fibre(s);
    CMatrix perm = CMatrix::Zero(static_cast<Eigen::Index>(G.range_fibre(r).size()),
                                 static_cast<Eigen::Index>(src_fibre.size()));
    for (std::size_t j = 0; j < src_fibre.size(); ++j)
      perm(G.range_pos(G.compose(a, src_fibre[j])), static_cast<Eigen::Index>(j)) = 1.0;
    out.rep.pi[a] = embed[r] * perm * lift[s];
  }

  out.xi.xi.resize(u);
  for (Index x = 0; x < u; ++x) out.xi.xi[x] = embed[x].col(G.range_pos(G.unit_arrow(x)));
  return out;
}

// ---------------------------------------------------------------------------

double cocycle_defect(const Cocycle& c) {
  const FiniteGroupoid& G = *c.rep.groupoid;
  const Index n = static_cast<Index>(G.num_arrows());
  if (c.b.size() != G.num_arrows()) return std::numeric_limits<double>::infinity();
  for (Index a = 0; a < n; ++a)
    if (c.b[a].size() != c.rep.dims[G.dst(a)]) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const Index ab = G.compose(a, b);
      if (ab == kNone) continue;
      const CVector diff = c.b[ab] - c.b[a] - c.rep.pi[a] * c.b[b];
      if (diff.size()) worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  return worst;
}

ArrowFunction cocycle_to_cnd(const Cocycle& c, double tol) {
  if (check_representation(c.rep).max() > tol)
    throw PreconditionError("cocycle: representation axioms fail");
  if (cocycle_defect(c) > tol) throw PreconditionError("cocycle: cocycle law fails");
  ArrowFunction psi(c.rep.groupoid);
  for (std::size_t a = 0; a < psi.size(); ++a) psi[a] = c.b[a].squaredNorm();
  return psi;
}

ArrowFunction cnd_from_pd_sequence(std::span<const ArrowFunction> F,
                                   std::span<const double> alpha, double tol) {
  if (F.empty()) throw PreconditionError("empty positive definite sequence");
  if (F.size() != alpha.size()) throw PreconditionError("one weight per function required");
  ArrowFunction psi(F.front().groupoid_ptr());
  for (std::size_t k = 0; k < F.size(); ++k) {
    if (!(alpha[k] > 0.0)) throw PreconditionError("weights must be positive");
    require_same_groupoid(psi, F[k]);
    require_unit_one(F[k], tol, "cnd_from_pd_sequence");
    if (!is_positive_definite(F[k], tol).positive_definite)
      throw PreconditionError("cnd_from_pd_sequence: F_" + std::to_string(k + 1) +
                              " is not positive definite");
    for (std::size_t a = 0; a < psi.size(); ++a) psi[a] += alpha[k] * (1.0 - F[k][a].real());
  }
  return psi;
}

ArrowFunction cnd_from_pd_sequence(std::span<const ArrowFunction> F, double tol) {
  std::vector<double> alpha(F.size());
  for (std::size_t k = 0; k < F.size(); ++k) alpha[k] = static_cast<double>(k + 1);
  return cnd_from_pd_sequence(F, alpha, tol);
}

// ---------------------------------------------------------------------------

std::vector<MassAtThreshold> mass_above(const ArrowFunction& F, std::span<const double> eps) {
  const FiniteGroupoid& G = F.groupoid();
  std::vector<MassAtThreshold> out;
  for (double e : eps) {
    MassAtThreshold m{e, 0};
    for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a)
      if (std::abs(F[a]) > e) m.mass += G.mass(G.src(a));
    out.push_back(m);
  }
  return out;
}

std::vector<MassAtThreshold> mass_at_most(const ArrowFunction& psi, std::span<const double> c) {
  const FiniteGroupoid& G = psi.groupoid();
  std::vector<MassAtThreshold> out;
  for (double t : c) {
    MassAtThreshold m{t, 0};
    for (Index a = 0; a < static_cast<Index>(G.num_arrows()); ++a)
      if (psi[a].real() <= t) m.mass += G.mass(G.src(a));
    out.push_back(m);
  }
  return out;
}

std::vector<BallBoundCheck> tree_ball_bounds(const ArrowFunction& psi, std::int64_t degree,
                                             std::span<const double> radii) {
  std::vector<BallBoundCheck> out;
  const auto masses = mass_at_most(psi, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    BallBoundCheck b;
    b.radius = radii[i];
    b.mass = masses[i].mass;
    const auto c = static_cast<std::int64_t>(std::floor(radii[i]));
    std::int64_t power = 1, ball = 1;
    for (std::int64_t j = 1; j <= c; ++j) {
      power *= degree;
      ball += power;
    }
    b.ball_bound = ball;
    b.power_bound = power;
    b.ball_holds = b.mass <= Rational(ball);
    b.power_holds = b.mass <= Rational(power);
    out.push_back(b);
  }
  return out;
}

}  // namespace hgpd
