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

// Small dense linear algebra on fibre blocks, backed by Eigen.

#include <complex>

#include <Eigen/Dense>

namespace hgpd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

// Eigendecomposition of the Hermitian part (M + M^*)/2.
HermitianEigen hermitian_eigen(const CMatrix& m);

// max_ij |M_ij - conj(M_ji)|
double hermitian_defect(const CMatrix& m);
// Max absolute row sum.
double inf_norm(const CMatrix& m);
// Largest singular value; 0 for an empty matrix.
double spectral_norm(const CMatrix& m);
// max_ij |A_ij - B_ij|; shapes must agree.
double max_entry_diff(const CMatrix& a, const CMatrix& b);

// Square root of a positive semidefinite matrix. Eigenvalues in
// [-clamp_tol, 0) are clamped to 0; anything more negative throws
// PreconditionError.
CMatrix psd_sqrt(const CMatrix& m, double clamp_tol);

}  // namespace hgpd
