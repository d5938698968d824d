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

#include "hgpd/linalg.hpp"

#include <algorithm>
#include <string>

#include "hgpd/error.hpp"

namespace hgpd {

HermitianEigen hermitian_eigen(const CMatrix& m) {
  if (m.size() == 0) return {RVector(0), CMatrix(0, 0)};
  const CMatrix h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double hermitian_defect(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double inf_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double max_entry_diff(const CMatrix& a, const CMatrix& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

CMatrix psd_sqrt(const CMatrix& m, double clamp_tol) {
  if (m.size() == 0) return m;
  const auto eig = hermitian_eigen(m);
  RVector root(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (v < -clamp_tol)
      throw PreconditionError("matrix is not positive semidefinite (eigenvalue " +
                              std::to_string(v) + ")");
    root(i) = std::sqrt(std::max(v, 0.0));
  }
  return eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace hgpd
